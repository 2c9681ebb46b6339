//! Shared setup for the criterion benchmarks.
use vinberg::{ChevalleyAlgebra, DynkinType, GradedAlgebra, GradingSpec, RootSystem, Q};

pub fn inner_grading(t: DynkinType, l: usize, m: usize) -> GradedAlgebra<Q> {
    let rs = RootSystem::new(t, l).unwrap();
    let chev = ChevalleyAlgebra::new(&rs);
    GradedAlgebra::build(&chev, &GradingSpec::inner(l, m)).unwrap()
}
