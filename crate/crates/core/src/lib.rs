//! Exact computations with graded simple Lie algebras, nilpotent orbits,
//! graded slices and the curve families they produce.

pub mod chevalley;
pub mod error;
pub mod grading;
pub mod linalg;
pub mod modp;
pub mod nilpotent;
pub mod parse;
pub mod poly;
pub mod curves;
pub mod deformation;
pub mod slice;
pub mod catalog;
pub mod rootdata;
pub mod scalars;

pub use chevalley::{AlgebraElement, ChevalleyAlgebra, StructureTable};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use rootdata::{DiagramAutomorphism, DynkinType, LatticeEndo, RootSystem};
pub use scalars::{CycloScalar, Field, Q};
pub use catalog::{Check, VerificationReport};
pub use curves::{CurveFamily, CurveKey};
pub use grading::{Graded, GradedAlgebra, GradingSpec};
pub use nilpotent::{OrbitData, Sl2Triple};
pub use slice::SliceData;
