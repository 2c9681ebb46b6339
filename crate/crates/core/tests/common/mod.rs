#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vinberg::catalog::{run_case, listed_cases, CaseRun};
use vinberg::grading::{
    centralizer_balance_check, dimension_identity_check, principal_grading, sample_piece, stability_witness,
};
use vinberg::nilpotent::{centralizer_dims, complete_sl2, search_nilpotents, SearchOptions};
use vinberg::{with_graded, ChevalleyAlgebra, DynkinType, Graded, GradingSpec, RootSystem};

pub fn all_types() -> Vec<(DynkinType, usize)> {
    use DynkinType::*;
    vec![
        (A, 1), (A, 2), (A, 3), (A, 4), (B, 2), (B, 3), (B, 4), (C, 3), (C, 4), (D, 4), (D, 5),
        (G, 2), (F, 4), (E, 6), (E, 7), (E, 8),
    ]
}

pub fn build(t: DynkinType, l: usize, m: usize, o: usize) -> Graded {
    let rs = RootSystem::new(t, l).unwrap();
    let chev = ChevalleyAlgebra::new(&rs);
    principal_grading(&chev, &GradingSpec::with_outer_order(&rs, m, o).unwrap()).unwrap()
}

/// Gradings of rank at most 4, including the non-adapted and Coxeter ones.
pub fn small_gradings() -> Vec<(DynkinType, usize, usize, usize)> {
    let mut v: Vec<_> = listed_cases(false).into_iter().filter(|c| c.1 <= 4).collect();
    v.extend([
        (DynkinType::F, 4, 8, 1),
        (DynkinType::F, 4, 12, 1),
        (DynkinType::G, 2, 6, 1),
        (DynkinType::A, 2, 2, 1),
        (DynkinType::C, 3, 6, 1),
    ]);
    v
}

/// Jacobi on all triples for rank at most 3, on `samples` random triples otherwise.
pub fn jacobi_and_antisymmetry(samples: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (t, l) in all_types() {
        let rs = RootSystem::new(t, l).unwrap();
        let chev = ChevalleyAlgebra::new(&rs);
        let n = chev.dim;
        let triples: Vec<(usize, usize, usize)> = if l <= 3 {
            (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect()
        } else {
            chev.random_triples(samples, &mut rng)
        };
        if !chev.table.check_jacobi(&triples) {
            return Err(format!("Jacobi fails for {}", rs.label()));
        }
        if !chev.table.check_antisymmetry() {
            return Err(format!("antisymmetry fails for {}", rs.label()));
        }
    }
    Ok(())
}

pub fn graded_closure(cases: &[(DynkinType, usize, usize, usize)]) -> Result<(), String> {
    for &(t, l, m, o) in cases {
        let g = build(t, l, m, o);
        let ok = with_graded!(&g, ga => ga.graded_bracket_check() && ga.table.check_antisymmetry());
        if !ok {
            return Err(format!("graded brackets fail for {}{}/{} outer {}", t, l, m, o));
        }
    }
    Ok(())
}

/// Rank balance of ad(x) for `samples` random x in h_{-1}, spread over the cases.
pub fn centralizer_balance(cases: &[(DynkinType, usize, usize, usize)], samples: usize, seed: u64) -> Result<(), String> {
    let built: Vec<Graded> = cases.iter().map(|&(t, l, m, o)| build(t, l, m, o)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let g = &built[s % built.len()];
        let ok = with_graded!(g, ga => {
            let x = sample_piece(ga, -1, &mut rng);
            centralizer_balance_check(ga, &x)
        });
        if !ok {
            return Err(format!("rank balance fails on sample {} of {:?}", s, cases[s % cases.len()]));
        }
    }
    Ok(())
}

/// dim z_{h_0}(e) = dim z_{h_0}(f) for every triple completed from the search.
pub fn triple_centralizers(cases: &[(DynkinType, usize, usize, usize)], seed: u64) -> Result<usize, String> {
    let mut count = 0;
    for &(t, l, m, o) in cases {
        let g = build(t, l, m, o);
        let r: Result<usize, String> = with_graded!(&g, ga => {
            let opts = SearchOptions { seed, ..SearchOptions::default() };
            let mut c = 0;
            for rep in search_nilpotents(ga, &opts) {
                let tr = complete_sl2(ga, &rep.vector(ga)).map_err(|e| e.to_string())?;
                if !tr.check(ga) {
                    return Err(format!("triple relations fail in {}{}/{}", t, l, m));
                }
                let ze = centralizer_dims(ga, &tr.e).unwrap()[0];
                let zf = centralizer_dims(ga, &tr.f).unwrap()[0];
                if ze != zf {
                    return Err(format!("dim z(e) = {} but dim z(f) = {} in {}{}/{}", ze, zf, t, l, m));
                }
                c += 1;
            }
            Ok(c)
        });
        count += r?;
    }
    Ok(count)
}

pub fn slice_properties(runs: &[CaseRun]) -> Result<(), String> {
    for run in runs {
        for o in &run.orbits {
            if o.slice.full_weights.iter().any(|w| w.0 < 2) {
                return Err(format!("{}: slice weight below 2", run.case));
            }
            if !o.direct_sum {
                return Err(format!("{}: slice does not complement [h_0, e]", run.case));
            }
            if run.stable && o.slice.dim != run.base_degrees.len() + o.data.relative_dimension {
                return Err(format!("{}: slice dimension is not dim B + relative dimension", run.case));
            }
            if o.is_regular() {
                let mut w: Vec<i64> = o.slice.slice_weights.iter().map(|w| w.0).collect();
                w.sort();
                let b: Vec<i64> = run.base_degrees.iter().map(|d| 2 * d).collect();
                if w != b {
                    return Err(format!("{}: regular slice weights {:?} differ from base {:?}", run.case, w, b));
                }
            }
            if o.theta_subregular && o.corank != 1 {
                return Err(format!("{}: theta-subregular corank {}", run.case, o.corank));
            }
        }
    }
    Ok(())
}

pub fn runs(cases: &[(DynkinType, usize, usize, usize)], seed: u64) -> Vec<CaseRun> {
    cases.iter().map(|&(t, l, m, o)| run_case(t, l, m, o, seed).unwrap()).collect()
}

/// dim h_1 = dim h_0 + dim B whenever a stable witness is found.
pub fn quotient_dimension(cases: &[(DynkinType, usize, usize, usize)], seed: u64) -> Result<usize, String> {
    let mut certified = 0;
    for &(t, l, m, o) in cases {
        let g = build(t, l, m, o);
        let (stable, ok) = with_graded!(&g, ga => (stability_witness(ga, 24, seed).witness.is_some(), dimension_identity_check(ga)));
        if stable {
            certified += 1;
            if !ok {
                return Err(format!("dim h_1 != dim h_0 + dim B for {}{}/{}", t, l, m));
            }
        }
    }
    Ok(certified)
}
