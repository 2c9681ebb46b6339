mod common;

use proptest::prelude::*;
use vinberg::curves::{canonical_key, CurveFamily};
use vinberg::scalars::{qq, CycloScalar, Field};
use vinberg::DynkinType;

fn cyclo(m: u32, c: &[i64]) -> CycloScalar {
    let poly: Vec<_> = c.iter().map(|&n| qq(n, 1)).collect();
    CycloScalar::normalize(&poly, m).unwrap()
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5, 8])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cyclotomic_field_axioms(
        m in conductor(),
        a in prop::collection::vec(-9i64..=9, 8),
        b in prop::collection::vec(-9i64..=9, 8),
        c in prop::collection::vec(-9i64..=9, 8),
    ) {
        let (x, y, z) = (cyclo(m, &a), cyclo(m, &b), cyclo(m, &c));
        prop_assert_eq!(x.times(&y), y.times(&x));
        prop_assert_eq!(x.times(&y.plus(&z)), x.times(&y).plus(&x.times(&z)));
        if !y.is_zero() {
            prop_assert_eq!(x.times(&y).divided(&y).unwrap(), x);
        }
    }

    #[test]
    fn curve_key_survives_rescaling(a in 1i64..=7, b in 1i64..=7, s in prop::bool::ANY) {
        // x -> a x, y -> b y in y^2 = x^3 + p20 x + p30 keeps the family
        let sign = if s { -1 } else { 1 };
        let f = format!("{}*y^2 = {}*x^3 + p20*x + p30", b * b * sign, a * a * a);
        let k = canonical_key(&CurveFamily::parse(&f, "test").unwrap()).unwrap();
        let k0 = canonical_key(&CurveFamily::parse("y^2 = x^3 + p20*x + p30", "test").unwrap()).unwrap();
        prop_assert_eq!(k, k0);
    }

    #[test]
    fn curve_key_survives_weighted_shear(c in -5i64..=5) {
        // a parameter-dependent shift of x leaves the central fibre alone
        let f = format!("y^2 = (x + {c}*p2)^3 + p6");
        let g = "y^2 = x^3 + p6";
        let kf = canonical_key(&CurveFamily::parse(&f, "test").unwrap()).unwrap();
        let kg = canonical_key(&CurveFamily::parse(g, "test").unwrap()).unwrap();
        prop_assert_eq!(kf.class, kg.class);
        prop_assert_eq!(kf.weights, kg.weights);
    }
}

#[test]
fn jacobi_and_antisymmetry_on_every_type() {
    common::jacobi_and_antisymmetry(1000, 11).unwrap();
}

#[test]
fn graded_brackets_close() {
    let mut cases = common::small_gradings();
    cases.extend([(DynkinType::E, 6, 3, 1), (DynkinType::E, 6, 2, 2), (DynkinType::E, 8, 5, 1)]);
    common::graded_closure(&cases).unwrap();
}

#[test]
fn centralizer_ranks_balance() {
    common::centralizer_balance(&common::small_gradings(), 1000, 5).unwrap();
}

#[test]
fn normal_triples_have_equal_centralizers() {
    let n = common::triple_centralizers(&common::small_gradings(), 7).unwrap();
    assert!(n > 30);
}

#[test]
fn slice_weights_and_coranks() {
    let runs = common::runs(&common::small_gradings(), 7);
    common::slice_properties(&runs).unwrap();
}

#[test]
fn quotient_dimension_on_stable_gradings() {
    let n = common::quotient_dimension(&common::small_gradings(), 3).unwrap();
    assert!(n >= 20);
}
