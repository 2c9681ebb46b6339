//! Graded transverse slices, their weight profiles and curve synthesis from weights.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curves::{canonical_form, canonical_key, CurveFamily, CurveKey};
use crate::deformation::param_names;
use crate::error::{Error, Result};
use crate::grading::{ambient_base_weights, invariant_degrees_of_b, GradedAlgebra};
use crate::linalg::Matrix;
use crate::nilpotent::{orbit_data, OrbitData, Sl2Triple};
use crate::poly::{Monomial, Poly};
use crate::rootdata::RootSystem;
use crate::scalars::{CycloScalar, Field};

#[derive(Clone, Debug)]
pub struct SliceData<F: Field> {
    pub triple: Sl2Triple<F>,
    pub m: usize,
    /// basis of z_{h_1}(f), each vector an ad(h)-eigenvector
    pub slice_basis: Vec<Vec<F>>,
    /// (2 - n, 0) for each basis vector of the graded slice
    pub weights: Vec<(i64, i64)>,
    /// (2 - n, 1 - k mod m) over all of z_h(f)
    pub full_weights: Vec<(i64, i64)>,
    /// (2d, sigma-degree of p_d) for the invariant degrees of B
    pub base_weights: Vec<(i64, i64)>,
    /// (2d, sigma-degree of p_d) for every invariant degree of h
    pub ambient_base: Vec<(i64, i64)>,
    pub data: OrbitData,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceSummary {
    pub slice_weights: Vec<(i64, i64)>,
    pub base_weights: Vec<(i64, i64)>,
    pub full_weights: Vec<(i64, i64)>,
    pub dim: usize,
}

impl<F: Field> SliceData<F> {
    pub fn summary(&self) -> SliceSummary {
        SliceSummary {
            slice_weights: self.weights.clone(),
            base_weights: self.base_weights.clone(),
            full_weights: self.full_weights.clone(),
            dim: self.slice_basis.len(),
        }
    }

    pub fn rho_weights(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.weights.iter().map(|w| w.0).collect();
        v.sort();
        v
    }

    pub fn base_rho(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.base_weights.iter().map(|w| w.0).collect();
        v.sort();
        v
    }

    pub fn min_weight_ok(&self) -> bool {
        self.full_weights.iter().all(|w| w.0 >= 2)
    }
}

/// Function convention for the sigma-degree of p_d: the vector weight negated.
fn function_weights(vector: &[(i64, i64)], m: i64) -> Vec<(i64, i64)> {
    let mut v: Vec<(i64, i64)> = vector.iter().map(|&(w, s)| (w, (-s).rem_euclid(m))).collect();
    v.sort();
    v
}

pub fn slodowy_slice<F: Field>(g: &GradedAlgebra<F>, t: &Sl2Triple<F>) -> Result<SliceData<F>> {
    let m = g.m() as i64;
    let data = orbit_data(g, t);
    let n1 = g.piece(1).len();
    let adf = g.ad_piece(&t.f, 1, 0);
    let adh = g.ad_piece(&t.h, 1, 1);
    // eigenvalues expected on the graded slice, from the lowest-vector table
    let mut expected: BTreeMap<i64, usize> = BTreeMap::new();
    for &(w, s) in &data.slice_weights {
        if s == 0 {
            *expected.entry(2 - w).or_default() += 1;
        }
    }
    let mut basis = Vec::new();
    let mut weights = Vec::new();
    for (&n, &mult) in &expected {
        let mut rows = adf.to_rows();
        for (i, r) in adh.to_rows().into_iter().enumerate() {
            let mut r = r;
            r[i] = r[i].minus(&F::from_i64(n));
            rows.push(r);
        }
        let ker = if rows.is_empty() { Vec::new() } else { Matrix::from_rows(rows).kernel() };
        if ker.len() != mult {
            return Err(Error::Invariant(format!(
                "slice eigenspace for ad(h) = {} has dimension {}, expected {}",
                n,
                ker.len(),
                mult
            )));
        }
        for v in ker {
            basis.push(g.embed_piece(1, &v));
            weights.push((2 - n, 0));
        }
    }
    debug_assert!(basis.iter().all(|b| b.len() == g.dim()) && n1 > 0 || basis.is_empty());
    let full_weights: Vec<(i64, i64)> = data.slice_weights.iter().map(|&(w, s)| (w, s.rem_euclid(m))).collect();
    let base_weights: Vec<(i64, i64)> = invariant_degrees_of_b(g).into_iter().map(|d| (2 * d, 0)).collect();
    let ambient_base = function_weights(&ambient_base_weights(g), m);
    Ok(SliceData { triple: t.clone(), m: g.m(), slice_basis: basis, weights, full_weights, base_weights, ambient_base, data })
}

/// dim z_{h_1}(f) + dim [h_0, e] = dim h_1.
pub fn direct_sum_check<F: Field>(g: &GradedAlgebra<F>, sd: &SliceData<F>) -> bool {
    let r = g.ad_piece(&sd.triple.e, 0, 1).rank();
    sd.slice_basis.len() + r == g.piece(1).len()
}

/// Sub-multiset matching of slice rho-weights against base rho-weights.
pub fn match_weights(slice: &[i64], base: &[i64]) -> (Vec<i64>, Vec<i64>, Vec<i64>) {
    let mut rest: Vec<i64> = slice.to_vec();
    rest.sort();
    let mut matched = Vec::new();
    let mut unmatched_base = Vec::new();
    let mut b = base.to_vec();
    b.sort();
    for w in b {
        if let Some(i) = rest.iter().position(|&x| x == w) {
            rest.remove(i);
            matched.push(w);
        } else {
            unmatched_base.push(w);
        }
    }
    (matched, rest, unmatched_base)
}

pub fn is_reduced<F: Field>(sd: &SliceData<F>) -> Result<bool> {
    if sd.data.relative_dimension != 0 {
        return Err(Error::Domain(format!("relative dimension is {}, not 0", sd.data.relative_dimension)));
    }
    Ok(sd.rho_weights() == sd.base_rho())
}

/// Reducedness from orbit data alone.
pub fn is_reduced_data(data: &OrbitData, base_rho: &[i64]) -> Result<bool> {
    if data.relative_dimension != 0 {
        return Err(Error::Domain(format!("relative dimension is {}, not 0", data.relative_dimension)));
    }
    let mut b = base_rho.to_vec();
    b.sort();
    Ok(data.graded_weights() == b)
}

pub fn corank_check<F: Field>(sd: &SliceData<F>) -> usize {
    let (matched, _, _) = match_weights(&sd.rho_weights(), &sd.base_rho());
    sd.base_weights.len() - matched.len()
}

/// Weights of the ungraded slice as tabulated for the five-fold E8 case:
/// coordinates matching a base coordinate carry that coordinate's weight,
/// the others keep their own vector weight.
pub fn presentation_weights(full: &[(i64, i64)], ambient_fn: &[(i64, i64)], m: usize) -> Vec<(i64, i64)> {
    let m = m as i64;
    let mut avail: Vec<(i64, i64)> = ambient_fn.to_vec();
    let mut out = Vec::new();
    for &(w, s) in full {
        let pos = avail.iter().position(|&(bw, bs)| bw == w && (s + bs).rem_euclid(m) == 0);
        match pos {
            Some(i) => out.push(avail.remove(i)),
            None => out.push((w, s.rem_euclid(m))),
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SynthesizedCurve {
    pub family: CurveFamily,
    pub key: CurveKey,
    /// the general family before normalization
    pub general: String,
    pub passive: Vec<(String, i64)>,
    pub distinguished: String,
}

/// General weighted homogeneous map from the slice weights, normalized through
/// the canonical key.
pub fn synthesize_curve_family(slice_rho: &[i64], base_rho: &[i64], seed: u64) -> Result<SynthesizedCurve> {
    let (matched, free, unmatched_base) = match_weights(slice_rho, base_rho);
    if slice_rho.len() != base_rho.len() + 1 {
        return Err(Error::Domain(format!(
            "relative dimension is {}, not 1",
            slice_rho.len() as i64 - base_rho.len() as i64
        )));
    }
    if unmatched_base.len() != 1 || free.len() != 2 {
        return Err(Error::Domain(format!("corank is {}, not 1", unmatched_base.len())));
    }
    let total = unmatched_base[0];
    if base_rho.iter().any(|&b| b > total) {
        return Err(Error::Invariant("unmatched base weight is not the largest".into()));
    }
    let mut pw: Vec<i64> = matched.clone();
    pw.push(total);
    let names = param_names(&pw);
    let passive: Vec<(String, i64)> = names[..matched.len()].iter().cloned().zip(matched.iter().cloned()).collect();
    let top = names.last().unwrap().clone();
    let mut vars = vec!["x".to_string(), "y".to_string()];
    vars.extend(passive.iter().map(|p| p.0.clone()));
    vars.push(top.clone());
    let mut w = vec![free[0], free[1]];
    w.extend(passive.iter().map(|p| p.1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut general = Poly::zero(&vars);
    let mut residual = Vec::new();
    let nv = vars.len();
    for e in crate::curves::monomials_of_weight(&w, total) {
        let curve_part = e[0] + e[1];
        let param_deg: u32 = e[2..].iter().sum();
        if curve_part == 0 {
            continue;
        }
        let mut ee: Monomial = e.clone();
        ee.push(0);
        let c: i64 = rng.gen_range(1..=97) * if rng.gen_bool(0.5) { 1 } else { -1 };
        if param_deg >= 2 {
            residual.push(Poly::monomial_string(&vars, &ee));
            continue;
        }
        general.add_term(ee, CycloScalar::int(c));
    }
    let mut top_e = vec![0u32; nv];
    top_e[nv - 1] = 1;
    general.add_term(top_e, CycloScalar::int(-1));
    let fam = CurveFamily {
        curve_vars: vec!["x".into(), "y".into()],
        var_weights: vec![free[0], free[1]],
        params: passive.iter().cloned().chain(std::iter::once((top.clone(), total))).collect(),
        equation: general.clone(),
        free_coeffs: residual.clone(),
        provenance: "weight-synthesis".into(),
    };
    let key = canonical_key(&fam)?;
    let mut canon = canonical_form(&key, &fam.params);
    canon.free_coeffs = residual;
    canon.provenance = "weight-synthesis".into();
    Ok(SynthesizedCurve {
        family: canon,
        key,
        general: crate::curves::render_equation(&general, &fam.curve_vars),
        passive,
        distinguished: top,
    })
}

/// Marks of the extended diagram: 1 for the affine node, then the highest root.
pub fn affine_marks(rs: &RootSystem) -> Vec<i64> {
    let mut v = vec![1];
    v.extend(rs.highest_root().iter().cloned());
    v
}

/// x^{c_j} y^{c_k} = p_h for the Coxeter grading with nodes j, k missing.
pub fn coxeter_slice(rs: &RootSystem, j: usize, k: usize) -> Result<CurveFamily> {
    let marks = affine_marks(rs);
    if j == k || j >= marks.len() || k >= marks.len() {
        return Err(Error::Domain(format!("invalid node pair ({}, {})", j, k)));
    }
    let h = rs.coxeter_number();
    let (cj, ck) = (marks[j], marks[k]);
    if h % cj != 0 || h % ck != 0 {
        return Err(Error::Domain(format!("marks {} and {} give non-integral weights", cj, ck)));
    }
    let eq = crate::poly::parse_equation(&format!("x^{}*y^{} = p{}", cj, ck, h))?;
    CurveFamily::new(eq, &["x", "y"], &[h / cj, h / ck], "coxeter")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::DynkinType;

    #[test]
    fn listed_f4_mu8_curves() {
        let c = synthesize_curve_family(&[8, 8], &[16], 1).unwrap();
        assert_eq!(c.family.display_equation(), "x^2 + y^2 = p8");
        let c = synthesize_curve_family(&[4, 8], &[16], 1).unwrap();
        assert_eq!(c.family.display_equation(), "x^4 + y^2 = p8");
    }

    #[test]
    fn e8_mu5_synthesis() {
        let c = synthesize_curve_family(&[20, 30, 40], &[40, 60], 3).unwrap();
        assert_eq!(c.family.display_equation(), "y^2 = x^3 + p20*x + p30");
        assert!(c.family.free_coeffs.is_empty());
    }

    #[test]
    fn coxeter_families() {
        let a2 = RootSystem::new(DynkinType::A, 2).unwrap();
        assert_eq!(coxeter_slice(&a2, 0, 1).unwrap().display_equation(), "x*y = p3");
        let g2 = RootSystem::new(DynkinType::G, 2).unwrap();
        let m = affine_marks(&g2);
        let j = m.iter().position(|&c| c == 2).unwrap();
        let k = m.iter().position(|&c| c == 3).unwrap();
        let f = coxeter_slice(&g2, j, k).unwrap();
        assert_eq!(f.display_equation(), "x^2*y^3 = p6");
        assert!(coxeter_slice(&g2, 1, 1).is_err());
    }

    #[test]
    fn presentation_of_mixed_weights() {
        // a base coordinate (4, 2) in vector convention is reported in function convention
        let p = presentation_weights(&[(4, -3), (12, 1)], &[(4, 3)], 5);
        assert_eq!(p, vec![(4, 3), (12, 1)]);
    }
}
