//! Simple surface singularities with symmetry, their semiversal deformations
//! and the sigma-fixed curve families.

use serde::Serialize;

use crate::curves::{canonical_key, monomials_of_weight, standard_monomials, CurveFamily, CurveKey};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{parse_poly, Monomial, Poly};
use crate::rootdata::DynkinType;
use crate::scalars::{CycloScalar, Field};

/// Linear point map: variable i goes to sum_j a[i][j] * var_j.
pub type Lin3 = [[CycloScalar; 3]; 3];

fn xyz() -> Vec<String> {
    vec!["x".into(), "y".into(), "z".into()]
}

fn diag(a: CycloScalar, b: CycloScalar, c: CycloScalar) -> Lin3 {
    let o = CycloScalar::zero;
    [[a, o(), o()], [o(), b, o()], [o(), o(), c]]
}

fn int(n: i64) -> CycloScalar {
    CycloScalar::int(n)
}

/// Pull back a polynomial in x, y, z along a point map.
pub fn pullback(p: &Poly, a: &Lin3) -> Poly {
    let vars = p.vars.clone();
    let base = xyz();
    let imgs: Vec<Poly> = (0..3)
        .map(|i| {
            let mut l = Poly::zero(&vars);
            for j in 0..3 {
                l = l.add(&Poly::var_named(&vars, &base[j]).scale(&a[i][j]));
            }
            l
        })
        .chain(vars.iter().skip(3).map(|v| Poly::var_named(&vars, v)))
        .collect();
    p.compose(&imgs, &vars)
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularityDatum {
    pub dtype: DynkinType,
    pub rank: usize,
    pub f_std: Poly,
    pub var_weights: [i64; 3],
    #[serde(skip)]
    pub gamma: Vec<Lin3>,
    pub gamma_desc: Vec<String>,
    #[serde(skip)]
    pub sigma: Lin3,
    pub sigma_desc: String,
    pub m: usize,
    pub variant: String,
    pub outer: usize,
    pub base_weight: i64,
}

/// Cases (m, variant, outer order) of sigma normal forms for a type.
pub fn sigma_cases(t: DynkinType, l: usize) -> Vec<(usize, &'static str, usize)> {
    use DynkinType::*;
    let z_outer = match (t, l) {
        (A, _) => 2,
        (D, l) if l % 2 == 1 => 2,
        (E, 6) => 2,
        _ => 1,
    };
    let mut v = vec![(2, "z", z_outer)];
    match (t, l) {
        (A, l) => v.push((l + 1, "x", 1)),
        (B, l) => {
            v.push((2, "y", 1));
            for n in (1..=l).rev().filter(|n| l % n == 0) {
                v.push((2 * l / n, "x", 1));
            }
        }
        (C, _) => v.push((2, "y", 1)),
        (D, 4) => v.push((3, "x", 3)),
        (E, 6) => {
            v.push((3, "y", 1));
            v.push((4, "x", 2));
        }
        (E, 8) => {
            v.push((3, "y", 1));
            v.push((5, "x", 1));
        }
        (F, 4) => {
            v.push((3, "y", 1));
            v.push((2, "x", 1));
            v.push((4, "x", 1));
        }
        (G, 2) => {
            v.push((2, "swap", 1));
            v.push((3, "x", 1));
            v.push((3, "y", 1));
        }
        _ => {}
    }
    v
}

fn table_row(t: DynkinType, l: usize) -> Result<(String, [i64; 3], Vec<(Lin3, String)>)> {
    use DynkinType::*;
    let li = l as i64;
    let row = match (t, l) {
        (A, l) if l >= 1 => (format!("z^2 - y^2 + x^{}", l + 1), [2, li + 1, li + 1], vec![]),
        (B, l) if l >= 2 => (
            format!("z^2 - y^2 + x^{}", 2 * l),
            [2, 2 * li, 2 * li],
            vec![(diag(int(-1), int(-1), int(1)), "(-x,-y,z)".to_string())],
        ),
        (C, l) if l >= 3 => (
            format!("z^2 - x*y^2 + x^{}", l),
            [4, 2 * li - 2, 2 * li],
            vec![(diag(int(1), int(-1), int(-1)), "(x,-y,-z)".to_string())],
        ),
        (D, 4) => ("z^2 + y^3 + x^3".to_string(), [4, 4, 6], vec![]),
        (D, l) if l >= 5 => (format!("z^2 - x*y^2 + x^{}", l - 1), [4, 2 * li - 4, 2 * li - 2], vec![]),
        (E, 6) => ("z^2 - y^3 + x^4".to_string(), [6, 8, 12], vec![]),
        (E, 7) => ("z^2 - y^3 + x^3*y".to_string(), [8, 12, 18], vec![]),
        (E, 8) => ("z^2 - y^3 + x^5".to_string(), [12, 20, 30], vec![]),
        (F, 4) => (
            "z^2 - y^3 + x^4".to_string(),
            [6, 8, 12],
            vec![(diag(int(-1), int(1), int(-1)), "(-x,y,-z)".to_string())],
        ),
        (G, 2) => {
            let z3 = CycloScalar::zeta(3);
            let o = CycloScalar::zero;
            let tau = [[o(), int(1), o()], [int(1), o(), o()], [o(), o(), int(-1)]];
            (
                "z^2 + y^3 + x^3".to_string(),
                [4, 4, 6],
                vec![
                    (diag(z3.clone(), z3.times(&z3), int(1)), "zeta.(zeta x, zeta^2 y, z)".to_string()),
                    (tau, "tau.(y,x,-z)".to_string()),
                ],
            )
        }
        _ => return Err(Error::UnknownCase(format!("no singularity datum for {}{}", t, l))),
    };
    Ok(row)
}

/// The tabulated singularity with the sigma action of the requested case.
pub fn singularity_table(t: DynkinType, l: usize, m: usize, variant: &str) -> Result<SingularityDatum> {
    let (f, w, gamma) = table_row(t, l)?;
    let case = sigma_cases(t, l)
        .into_iter()
        .find(|c| c.0 == m && c.1 == variant)
        .ok_or_else(|| Error::Domain(format!("({}{}, m={}, {}) is not a sigma normal form case", t, l, m, variant)))?;
    let zm = CycloScalar::zeta(m as u32);
    let (sigma, desc) = match variant {
        "z" => (diag(int(1), int(1), int(-1)), "(x,y,-z)".to_string()),
        "y" => (diag(int(1), zm, int(1)), format!("(x, zeta{} y, z)", m)),
        "x" => (diag(zm, int(1), int(1)), format!("(zeta{} x, y, z)", m)),
        "swap" => {
            let w = CycloScalar::zeta(3);
            let o = CycloScalar::zero;
            ([[o(), w.clone(), o()], [w.times(&w), o(), o()], [o(), o(), int(1)]], "(w y, w^2 x, z)".to_string())
        }
        _ => unreachable!(),
    };
    let f_std = parse_poly(&f)?.with_vars(&xyz());
    let base_weight = f_std
        .weighted_degree(&w)
        .ok_or_else(|| Error::Invariant(format!("{} is not weighted homogeneous", f)))?;
    let d = SingularityDatum {
        dtype: t,
        rank: l,
        f_std,
        var_weights: w,
        gamma_desc: gamma.iter().map(|g| g.1.clone()).collect(),
        gamma: gamma.into_iter().map(|g| g.0).collect(),
        sigma,
        sigma_desc: desc,
        m,
        variant: variant.to_string(),
        outer: case.2,
        base_weight,
    };
    for g in d.gamma.iter().chain(std::iter::once(&d.sigma)) {
        if pullback(&d.f_std, g) != d.f_std {
            return Err(Error::Invariant(format!("f_std is not invariant under a tabulated symmetry of {}{}", t, l)));
        }
    }
    Ok(d)
}

/// Milnor number of a quasi-homogeneous isolated singularity.
pub fn milnor_number(d: &SingularityDatum) -> usize {
    let w = d.base_weight;
    let (num, den) = d.var_weights.iter().fold((1i64, 1i64), |(n, dd), &wi| (n * (w - wi), dd * wi));
    (num / den) as usize
}

/// Monomial basis of the Milnor algebra, weight by weight.
pub fn jacobian_basis(d: &SingularityDatum) -> Result<Vec<Monomial>> {
    let w = d.var_weights;
    let socle = 3 * d.base_weight - 2 * w.iter().sum::<i64>();
    let mut out = Vec::new();
    for target in 0..=socle {
        if monomials_of_weight(&w, target).is_empty() {
            continue;
        }
        let (std, _) = standard_monomials(&d.f_std, &w, target);
        out.extend(std);
    }
    if out.len() != milnor_number(d) {
        return Err(Error::Invariant(format!(
            "Milnor algebra basis has {} elements, expected {}",
            out.len(),
            milnor_number(d)
        )));
    }
    Ok(out)
}

fn mono_poly(e: &Monomial) -> Poly {
    Poly::monomial(&xyz(), e.clone(), CycloScalar::one())
}

/// Basis monomials fixed by every generator of Gamma.
pub fn gamma_fixed_subbasis(basis: &[Monomial], gamma: &[Lin3]) -> Vec<Monomial> {
    basis
        .iter()
        .filter(|e| {
            let p = mono_poly(e);
            gamma.iter().all(|g| pullback(&p, g) == p)
        })
        .cloned()
        .collect()
}

/// k with g o sigma = zeta_m^k g, if g is an eigenvector.
fn sigma_character(g: &Poly, s: &Lin3, m: usize) -> Option<usize> {
    let pb = pullback(g, s);
    (0..m).find(|&k| pb == g.scale(&CycloScalar::zeta_pow(m as u32, k as i64)))
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiversalFamily {
    pub datum: SingularityDatum,
    pub equation: Poly,
    pub monomials: Vec<Monomial>,
    pub params: Vec<(String, i64)>,
    /// (rho-weight, sigma-weight) of each parameter
    pub t_weights: Vec<(i64, i64)>,
}

pub fn param_names(weights: &[i64]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for &w in weights {
        let mut n = format!("p{}", w / 2);
        while out.contains(&n) {
            n.push('\'');
        }
        out.push(n);
    }
    out
}

pub fn semiversal_family(d: &SingularityDatum) -> Result<SemiversalFamily> {
    let basis = jacobian_basis(d)?;
    let mut mons = gamma_fixed_subbasis(&basis, &d.gamma);
    if mons.len() != d.rank {
        return Err(Error::Invariant(format!("Gamma-fixed basis has {} elements, rank is {}", mons.len(), d.rank)));
    }
    let wt = |e: &Monomial| Poly::weight_of(e, &d.var_weights);
    // highest monomial weight first, so parameters come out in increasing weight
    mons.sort_by(|a, b| wt(b).cmp(&wt(a)).then(b.cmp(a)));
    let rho: Vec<i64> = mons.iter().map(|e| d.base_weight - wt(e)).collect();
    let names = param_names(&rho);
    let mut vars = xyz();
    vars.extend(names.iter().cloned());
    let mut eq = d.f_std.with_vars(&vars);
    let mut t_weights = Vec::new();
    for (i, e) in mons.iter().enumerate() {
        let k = sigma_character(&mono_poly(e), &d.sigma, d.m)
            .ok_or_else(|| Error::Invariant("Jacobian monomial is not a sigma eigenvector".into()))?;
        t_weights.push((rho[i], ((d.m - k) % d.m) as i64));
        let mut ee = e.clone();
        ee.extend(std::iter::repeat(0).take(names.len()));
        ee[3 + i] = 1;
        eq.add_term(ee, CycloScalar::one());
    }
    Ok(SemiversalFamily {
        datum: d.clone(),
        equation: eq,
        monomials: mons,
        params: names.into_iter().zip(rho).collect(),
        t_weights,
    })
}

/// Explicit change of coordinates over Q(zeta_3) taking x^3 + y^3 to -2(x^3 - x y^2).
fn d4_cubic_change(p: &Poly) -> Poly {
    let w = CycloScalar::zeta(3);
    let vars = p.vars.clone();
    let xv = Poly::var(&vars, 0);
    let yv = Poly::var(&vars, 1);
    // x + y = -2w X, x + w y = X - Y
    let inv = int(1).divided(&w.minus(&int(1))).expect("w != 1");
    let one_2w = int(1).plus(&w.times(&int(2)));
    let ynew = xv.scale(&one_2w).sub(&yv).scale(&inv);
    let xnew = xv.scale(&w.times(&int(-2))).sub(&ynew);
    let mut imgs = vec![xnew, ynew];
    imgs.extend((2..vars.len()).map(|i| Poly::var(&vars, i)));
    p.compose(&imgs, &vars)
}

fn is_rational_poly(p: &Poly) -> bool {
    p.terms.values().all(|c| c.is_rational())
}

/// Rescale the two curve variables by roots of unity to make coefficients rational when possible.
fn rationalize(p: &Poly) -> Poly {
    if is_rational_poly(p) {
        return p.clone();
    }
    let cond = p.terms.values().map(|c| c.conductor()).fold(1u32, num_integer::lcm);
    let big = num_integer::lcm(cond, 12);
    let vars = p.vars.clone();
    for k0 in 0..big {
        for k1 in 0..big {
            let mut imgs: Vec<Poly> = (0..vars.len()).map(|i| Poly::var(&vars, i)).collect();
            imgs[0] = imgs[0].scale(&CycloScalar::zeta_pow(big, k0 as i64));
            imgs[1] = imgs[1].scale(&CycloScalar::zeta_pow(big, k1 as i64));
            let q = p.compose(&imgs, &vars);
            if is_rational_poly(&q) {
                return q;
            }
        }
    }
    p.clone()
}

/// Make every parameter enter with the sign that puts it on the right-hand side with coefficient one.
fn normalize_params(p: &Poly, nc: usize) -> Poly {
    let lead = p
        .terms
        .iter()
        .filter(|(e, _)| e[nc..].iter().all(|&k| k == 0))
        .max_by(|a, b| a.0.get(1).cmp(&b.0.get(1)).then(b.0.cmp(a.0)))
        .map(|(_, c)| c.clone())
        .unwrap_or_else(CycloScalar::one);
    let vars = p.vars.clone();
    let mut imgs: Vec<Poly> = (0..vars.len()).map(|i| Poly::var(&vars, i)).collect();
    for j in nc..vars.len() {
        let first = p.terms.iter().find(|(e, _)| e[j] == 1 && e[nc..].iter().sum::<u32>() == 1);
        if let Some((_, c)) = first {
            let s = lead.negated().divided(c).expect("nonzero coefficient");
            imgs[j] = imgs[j].scale(&s);
        }
    }
    p.compose(&imgs, &vars)
}

/// The sigma-fixed part of the semiversal family as a two-variable curve family.
pub fn sigma_fixed_curve(fam: &SemiversalFamily) -> Result<CurveFamily> {
    let d = &fam.datum;
    let one = CycloScalar::one();
    let rows: Vec<Vec<CycloScalar>> = (0..3)
        .map(|i| (0..3).map(|j| if i == j { d.sigma[i][j].minus(&one) } else { d.sigma[i][j].clone() }).collect())
        .collect();
    let ker = Matrix::from_rows(rows).kernel();
    if ker.len() != 2 {
        return Err(Error::Domain(format!("sigma fixes a {}-dimensional subspace, not a plane", ker.len())));
    }
    let mut planes: Vec<(i64, Vec<CycloScalar>)> = Vec::new();
    for v in ker {
        let ws: Vec<i64> = (0..3).filter(|&i| !v[i].is_zero()).map(|i| d.var_weights[i]).collect();
        if ws.iter().any(|&w| w != ws[0]) {
            return Err(Error::Invariant("sigma-fixed vector is not weight homogeneous".into()));
        }
        planes.push((ws[0], v));
    }
    planes.sort_by_key(|p| p.0);
    let kept: Vec<usize> = (0..fam.params.len()).filter(|&i| fam.t_weights[i].1 == 0).collect();
    let mut vars: Vec<String> = vec!["x".into(), "y".into()];
    vars.extend(kept.iter().map(|&i| fam.params[i].0.clone()));
    let mut imgs: Vec<Poly> = (0..3)
        .map(|i| {
            let mut p = Poly::zero(&vars);
            for (k, (_, v)) in planes.iter().enumerate() {
                p = p.add(&Poly::var(&vars, k).scale(&v[i]));
            }
            p
        })
        .collect();
    for (i, (name, _)) in fam.params.iter().enumerate() {
        imgs.push(if kept.contains(&i) { Poly::var_named(&vars, name) } else { Poly::zero(&vars) });
    }
    let mut eq = fam.equation.compose(&imgs, &vars);
    if d.dtype == DynkinType::D && d.rank == 4 && d.variant == "z" {
        eq = d4_cubic_change(&eq);
    }
    let eq = normalize_params(&rationalize(&eq), 2);
    let w = [planes[0].0, planes[1].0];
    let mut out = CurveFamily::new(eq, &["x", "y"], &w, "deformation")?;
    out.free_coeffs.clear();
    Ok(out)
}

/// Whether the grading (type, m, outer) has a certified stable vector.
pub fn witness_stable(t: DynkinType, l: usize, m: usize, outer: usize, seed: u64) -> Result<bool> {
    use crate::chevalley::ChevalleyAlgebra;
    use crate::grading::{principal_grading, stability_witness, GradingSpec};
    use crate::rootdata::RootSystem;
    let rs = RootSystem::new(t, l)?;
    let spec = GradingSpec::with_outer_order(&rs, m, outer)?;
    let chev = ChevalleyAlgebra::new(&rs);
    let g = principal_grading(&chev, &spec)?;
    Ok(crate::with_graded!(&g, ga => stability_witness(ga, 24, seed).witness.is_some()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedCurve {
    pub variant: String,
    pub sigma: String,
    pub family: CurveFamily,
    pub key: CurveKey,
}

/// Curve families for (type, m, outer) from the sigma case list, without the stability check.
pub fn subregular_candidates(t: DynkinType, l: usize, m: usize, outer: usize) -> Result<Vec<ClassifiedCurve>> {
    let mut out: Vec<ClassifiedCurve> = Vec::new();
    for (cm, variant, co) in sigma_cases(t, l) {
        if cm != m || co != outer {
            continue;
        }
        let d = singularity_table(t, l, m, variant)?;
        let fam = sigma_fixed_curve(&semiversal_family(&d)?)?;
        let key = canonical_key(&fam)?;
        if out.iter().any(|c| c.key == key) {
            continue;
        }
        out.push(ClassifiedCurve { variant: variant.to_string(), sigma: d.sigma_desc.clone(), family: fam, key });
    }
    Ok(out)
}

/// Curve families of theta-subregular nilpotents; empty when the pair is not subregular-adapted.
pub fn classify_subregular(t: DynkinType, l: usize, m: usize, outer: usize) -> Result<Vec<ClassifiedCurve>> {
    let c = match subregular_candidates(t, l, m, outer) {
        Ok(c) => c,
        Err(Error::UnknownCase(_)) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    if c.is_empty() || !witness_stable(t, l, m, outer, 1)? {
        return Ok(Vec::new());
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::CurveFamily;

    fn mons(v: &[[u32; 3]]) -> Vec<Monomial> {
        v.iter().map(|a| a.to_vec()).collect()
    }

    #[test]
    fn bases() {
        let d = singularity_table(DynkinType::A, 2, 3, "x").unwrap();
        assert_eq!(jacobian_basis(&d).unwrap(), mons(&[[0, 0, 0], [1, 0, 0]]));
        let d = singularity_table(DynkinType::E, 7, 2, "z").unwrap();
        let b = jacobian_basis(&d).unwrap();
        assert!(b.contains(&vec![0, 2, 0]) && b.contains(&vec![1, 2, 0]) && !b.contains(&vec![3, 0, 0]));
        let d = singularity_table(DynkinType::G, 2, 2, "z").unwrap();
        let b = jacobian_basis(&d).unwrap();
        assert_eq!(gamma_fixed_subbasis(&b, &d.gamma), mons(&[[0, 0, 0], [1, 1, 0]]));
        let d = singularity_table(DynkinType::B, 3, 2, "z").unwrap();
        let b = jacobian_basis(&d).unwrap();
        assert_eq!(b.len(), 5);
        assert_eq!(gamma_fixed_subbasis(&b, &d.gamma).len(), 3);
    }

    #[test]
    fn e8_mu5_curve() {
        let d = singularity_table(DynkinType::E, 8, 5, "x").unwrap();
        let c = sigma_fixed_curve(&semiversal_family(&d).unwrap()).unwrap();
        assert_eq!(c.display_equation(), "y^2 = x^3 + p20*x + p30");
    }

    #[test]
    fn g2_and_d4_match_table() {
        let fam = |t, l, m, v| {
            let d = singularity_table(t, l, m, v).unwrap();
            canonical_key(&sigma_fixed_curve(&semiversal_family(&d).unwrap()).unwrap()).unwrap()
        };
        let tab = |s| canonical_key(&CurveFamily::parse(s, "table").unwrap()).unwrap();
        assert_eq!(fam(DynkinType::G, 2, 2, "swap"), tab("y^2 = x^3 + p2*x^2 + p6"));
        assert_eq!(fam(DynkinType::G, 2, 2, "z"), tab("y^2*x = x^3 + p2*x^2 + p6"));
        assert_eq!(fam(DynkinType::D, 4, 2, "z"), tab("y*(x*y + p4') = x^3 + p2*x^2 + p4*x + p6"));
        assert_eq!(fam(DynkinType::D, 4, 3, "x"), tab("y^2 = x^3 + p4*x + p6"));
    }

    #[test]
    fn d4_change_is_rational_cubic() {
        let d = singularity_table(DynkinType::D, 4, 2, "z").unwrap();
        let c = sigma_fixed_curve(&semiversal_family(&d).unwrap()).unwrap();
        let p = c.central_fibre();
        assert!(p.terms.values().all(|c| c.is_rational()));
        assert_eq!(p.terms.len(), 2);
    }
}
