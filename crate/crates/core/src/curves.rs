//! Weighted homogeneous plane curve families and a coordinate-free key used to
//! compare them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{parse_equation, root_multiplicities, Monomial, Poly};
use crate::scalars::{q, CycloScalar, Field, Q};

/// `equation = 0` in the curve variables and parameters.
#[derive(Clone, Debug, Serialize)]
pub struct CurveFamily {
    pub curve_vars: Vec<String>,
    pub var_weights: Vec<i64>,
    pub params: Vec<(String, i64)>,
    pub equation: Poly,
    pub free_coeffs: Vec<String>,
    pub provenance: String,
}

/// Shape of the central fibre up to weighted coordinate changes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FibreClass {
    /// Equal weights: multiplicities of the distinct lines.
    Lines(Vec<usize>),
    /// Distinct weights: x^a y^b times branches y^p = c x^q with multiplicities.
    Branches { a: usize, b: usize, mults: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Piece {
    pub weight: i64,
    pub dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CurveKey {
    pub weights: (i64, i64),
    pub total: i64,
    pub class: FibreClass,
    pub pieces: Vec<Piece>,
}

impl CurveKey {
    pub fn is_reduced(&self) -> bool {
        match &self.class {
            FibreClass::Lines(m) => m.iter().all(|&k| k == 1),
            FibreClass::Branches { a, b, mults } => *a <= 1 && *b <= 1 && mults.iter().all(|&k| k == 1),
        }
    }

    pub fn is_isolated(&self) -> bool {
        self.is_reduced()
    }
}

impl fmt::Display for CurveKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w=({},{}) W={} {:?} [", self.weights.0, self.weights.1, self.total, self.class)?;
        for p in &self.pieces {
            write!(f, " {}:{}/{}", p.weight, p.rank, p.dim)?;
        }
        write!(f, " ]")
    }
}

/// Parameter weight from a name such as `p12` or `p6'`.
pub fn param_weight(name: &str) -> Option<i64> {
    let d: String = name.chars().skip(1).take_while(|c| c.is_ascii_digit()).collect();
    if !name.starts_with('p') || d.is_empty() {
        return None;
    }
    d.parse::<i64>().ok().map(|d| 2 * d)
}

impl CurveFamily {
    pub fn new(
        equation: Poly,
        curve_vars: &[&str],
        var_weights: &[i64],
        provenance: &str,
    ) -> Result<Self> {
        let mut params = Vec::new();
        for v in &equation.vars {
            if curve_vars.contains(&v.as_str()) {
                continue;
            }
            let w = param_weight(v).ok_or_else(|| Error::Parse(format!("unrecognised parameter {}", v)))?;
            params.push((v.clone(), w));
        }
        let mut vars: Vec<String> = curve_vars.iter().map(|s| s.to_string()).collect();
        vars.extend(params.iter().map(|(n, _)| n.clone()));
        let fam = CurveFamily {
            curve_vars: curve_vars.iter().map(|s| s.to_string()).collect(),
            var_weights: var_weights.to_vec(),
            params,
            equation: equation.with_vars(&vars),
            free_coeffs: Vec::new(),
            provenance: provenance.to_string(),
        };
        fam.total_weight()?;
        Ok(fam)
    }

    /// Parse `lhs = rhs` in x, y and parameters p<d>; the curve weights are
    /// solved from homogeneity, defaulting to equal weights when undetermined.
    pub fn parse(s: &str, provenance: &str) -> Result<Self> {
        let eq = parse_equation(s)?;
        let ix = eq.index_of("x");
        let iy = eq.index_of("y");
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for e in eq.terms.keys() {
            let a = ix.map(|i| e[i]).unwrap_or(0) as i64;
            let b = iy.map(|i| e[i]).unwrap_or(0) as i64;
            let mut pw = 0;
            for (i, v) in eq.vars.iter().enumerate() {
                if v != "x" && v != "y" && e[i] > 0 {
                    pw += e[i] as i64 * param_weight(v).ok_or_else(|| Error::Parse(format!("bad parameter {}", v)))?;
                }
            }
            rows.push(vec![q(a), q(b), q(-1)]);
            rhs.push(q(-pw));
        }
        let m = Matrix::from_rows(rows.clone());
        if m.rank() < 3 {
            rows.push(vec![q(1), q(-1), q(0)]);
            rhs.push(q(0));
        }
        let m = Matrix::from_rows(rows);
        let sol = solve_exact(&m, &rhs).ok_or_else(|| Error::Parse(format!("{:?} is not weighted homogeneous", s)))?;
        let w: Vec<i64> = sol
            .iter()
            .map(|x| crate::scalars::q_to_i64(x).ok_or_else(|| Error::Parse("non-integral weights".into())))
            .collect::<Result<_>>()?;
        let eq = eq.with_vars(&with_xy(&eq.vars));
        CurveFamily::new(eq, &["x", "y"], &w[..2], provenance)
    }

    pub fn weights_all(&self) -> Vec<i64> {
        let mut w = self.var_weights.clone();
        w.extend(self.params.iter().map(|p| p.1));
        w
    }

    pub fn total_weight(&self) -> Result<i64> {
        self.equation
            .weighted_degree(&self.weights_all())
            .ok_or_else(|| Error::Invariant(format!("family {} is not weighted homogeneous", self.equation)))
    }

    pub fn central_fibre(&self) -> Poly {
        let idx: Vec<usize> = (self.curve_vars.len()..self.equation.nvars()).collect();
        self.equation.set_zero(&idx).with_vars(&self.curve_vars)
    }

    /// Canonical form of the family, written as a product of two lines when
    /// a quadratic central fibre splits over Q.
    pub fn normalized(&self) -> Result<CurveFamily> {
        let key = canonical_key(self)?;
        let mut out = canonical_form(&key, &self.params);
        out.provenance = self.provenance.clone();
        out.free_coeffs = self.free_coeffs.clone();
        if key.class == FibreClass::Lines(vec![1, 1]) && splits_over_q(&self.central_fibre()) {
            let vars = out.equation.vars.clone();
            let x2 = Poly::var(&vars, 0).pow(2);
            let y2 = Poly::var(&vars, 1).pow(2);
            let xy = Poly::var(&vars, 0).mul(&Poly::var(&vars, 1));
            out.equation = out.equation.sub(&x2).sub(&y2).add(&xy);
        }
        Ok(out)
    }

    /// Coefficient of a parameter to first order, as a polynomial in the curve variables.
    pub fn linear_part(&self, j: usize) -> Poly {
        let nc = self.curve_vars.len();
        let mut r = Poly::zero(&self.curve_vars);
        for (e, c) in &self.equation.terms {
            let pe = &e[nc..];
            if pe[j] == 1 && pe.iter().sum::<u32>() == 1 {
                r.add_term(e[..nc].to_vec(), c.clone());
            }
        }
        r
    }

    pub fn display_equation(&self) -> String {
        render_equation(&self.equation, &self.curve_vars)
    }
}

fn with_xy(vars: &[String]) -> Vec<String> {
    let mut out = vec!["x".to_string(), "y".to_string()];
    out.extend(vars.iter().filter(|v| *v != "x" && *v != "y").cloned());
    out
}

fn solve_exact(m: &Matrix<Q>, b: &[Q]) -> Option<Vec<Q>> {
    let x = m.solve(b)?;
    (m.apply(&x) == b).then_some(x)
}

pub fn monomials_of_weight(w: &[i64], target: i64) -> Vec<Monomial> {
    fn rec(w: &[i64], i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut k = 0;
        while k as i64 * w[i] <= left {
            cur.push(k);
            rec(w, i + 1, left - k as i64 * w[i], cur, out);
            cur.pop();
            k += 1;
            if w[i] == 0 {
                break;
            }
        }
    }
    if target < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(w, 0, target, &mut Vec::new(), &mut out);
    // largest first in lex order, x > y > z
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn coords(p: &Poly, basis: &[Monomial]) -> Vec<CycloScalar> {
    basis.iter().map(|m| p.coeff(m)).collect()
}

/// Generators of the weight-w part of the Jacobian ideal of `p`.
pub fn jacobian_piece(p: &Poly, w: &[i64], target: i64) -> Vec<Poly> {
    let vars = p.vars.clone();
    let total = p.weighted_degree(w).unwrap_or(0);
    let mut gens = Vec::new();
    for i in 0..vars.len() {
        let d = p.derivative(i);
        if d.is_zero() {
            continue;
        }
        for m in monomials_of_weight(w, target - (total - w[i])) {
            gens.push(d.mul(&Poly::monomial(&vars, m, CycloScalar::one())));
        }
    }
    gens
}

/// Monomials of weight `target` that are not leading terms of the Jacobian
/// piece, with columns ordered largest first in lex order.
pub fn standard_monomials(p: &Poly, w: &[i64], target: i64) -> (Vec<Monomial>, usize) {
    standard_monomials_in(p, monomials_of_weight(w, target), w, target)
}

/// As `standard_monomials`, keeping the monomials with the most x where possible.
pub fn standard_monomials_x_first(p: &Poly, w: &[i64], target: i64) -> (Vec<Monomial>, usize) {
    let mut basis = monomials_of_weight(w, target);
    basis.reverse();
    standard_monomials_in(p, basis, w, target)
}

fn standard_monomials_in(p: &Poly, basis: Vec<Monomial>, w: &[i64], target: i64) -> (Vec<Monomial>, usize) {
    let gens = jacobian_piece(p, w, target);
    if gens.is_empty() {
        return (basis, 0);
    }
    let rows: Vec<Vec<CycloScalar>> = gens.iter().map(|g| coords(g, &basis)).collect();
    let (_, pivots) = Matrix::from_rows(rows).echelon();
    let std: Vec<Monomial> = basis.iter().enumerate().filter(|(i, _)| !pivots.contains(i)).map(|(_, m)| m.clone()).collect();
    (std, pivots.len())
}

fn rank_of(polys: &[Poly], basis: &[Monomial]) -> usize {
    if polys.is_empty() || basis.is_empty() {
        return 0;
    }
    Matrix::from_rows(polys.iter().map(|g| coords(g, basis)).collect()).rank()
}

fn fibre_class(p: &Poly, wx: i64, wy: i64) -> Result<FibreClass> {
    if p.is_zero() {
        return Err(Error::Domain("central fibre is identically zero".into()));
    }
    let a = p.terms.keys().map(|e| e[0]).min().unwrap();
    let b = p.terms.keys().map(|e| e[1]).min().unwrap();
    let g = num_integer::Integer::gcd(&wx, &wy);
    let step = (wx / g) as u32;
    // R(t) with t = y^step / x^(wy/g)
    let deg = p.terms.keys().map(|e| (e[1] - b) / step).max().unwrap() as usize;
    let mut r = vec![CycloScalar::zero(); deg + 1];
    for (e, c) in &p.terms {
        r[((e[1] - b) / step) as usize] = c.clone();
    }
    let mut mults = root_multiplicities(&r);
    if wx == wy {
        if a > 0 {
            mults.push(a as usize);
        }
        if b > 0 {
            mults.push(b as usize);
        }
        mults.sort();
        Ok(FibreClass::Lines(mults))
    } else {
        mults.sort();
        Ok(FibreClass::Branches { a: a as usize, b: b as usize, mults })
    }
}

/// The comparison key of a two-variable family.
pub fn canonical_key(fam: &CurveFamily) -> Result<CurveKey> {
    if fam.curve_vars.len() != 2 {
        return Err(Error::Domain("canonical keys need exactly two curve variables".into()));
    }
    let total = fam.total_weight()?;
    let (mut wx, mut wy) = (fam.var_weights[0], fam.var_weights[1]);
    let swap = wx > wy;
    let reorder = |p: &Poly| -> Poly {
        if !swap {
            return p.clone();
        }
        let vars = p.vars.clone();
        let img = vec![Poly::var(&vars, 1), Poly::var(&vars, 0)];
        p.compose(&img, &vars)
    };
    if swap {
        std::mem::swap(&mut wx, &mut wy);
    }
    let w = [wx, wy];
    let p = reorder(&fam.central_fibre());
    let class = fibre_class(&p, wx, wy)?;
    let lin: Vec<Poly> = (0..fam.params.len()).map(|j| reorder(&fam.linear_part(j))).collect();
    let mut pieces = Vec::new();
    for target in 0..=total {
        let basis = monomials_of_weight(&w, target);
        if basis.is_empty() {
            continue;
        }
        let jac = jacobian_piece(&p, &w, target);
        let rj = rank_of(&jac, &basis);
        let dim = basis.len() - rj;
        let gs: Vec<Poly> = fam
            .params
            .iter()
            .zip(&lin)
            .filter(|((_, pw), g)| total - pw == target && !g.is_zero())
            .map(|(_, g)| g.clone())
            .collect();
        let mut all = jac.clone();
        all.extend(gs);
        let rank = rank_of(&all, &basis) - rj;
        if dim > 0 || rank > 0 {
            pieces.push(Piece { weight: target, dim, rank });
        }
    }
    Ok(CurveKey { weights: (wx, wy), total, class, pieces })
}

// ---------------------------------------------------------------------------
// rendering

fn linear(vars: &[String], cx: i64, cy: i64) -> Poly {
    Poly::var(vars, 0)
        .scale(&CycloScalar::int(cx))
        .add(&Poly::var(vars, 1).scale(&CycloScalar::int(cy)))
}

fn rational_square(x: &Q) -> bool {
    use num_traits::Signed;
    if x.is_negative() {
        return false;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    &(&rn * &rn) == n && &(&rd * &rd) == d
}

/// Whether a binary quadratic form with rational coefficients is a product of rational lines.
pub fn splits_over_q(p: &Poly) -> bool {
    if p.nvars() != 2 || p.terms.keys().any(|e| e[0] + e[1] != 2) {
        return false;
    }
    let c = |e: [u32; 2]| p.coeff(&e).to_rational();
    match (c([2, 0]), c([1, 1]), c([0, 2])) {
        (Some(a), Some(b), Some(cc)) => rational_square(&(&b * &b - q(4) * a * cc)),
        _ => false,
    }
}

/// A normal form of the central fibre for a class.
pub fn normal_fibre(key: &CurveKey) -> Poly {
    let vars = vec!["x".to_string(), "y".to_string()];
    let one = || Poly::constant(&vars, CycloScalar::one());
    let x = Poly::var(&vars, 0);
    let y = Poly::var(&vars, 1);
    match &key.class {
        FibreClass::Lines(m) => {
            if m == &[1, 1] {
                return x.pow(2).add(&y.pow(2));
            }
            if m == &[1, 1, 1] {
                return x.mul(&y.pow(2)).sub(&x.pow(3));
            }
            let mut ms = m.clone();
            ms.sort_by(|a, b| b.cmp(a));
            let mut lines = vec![x.clone(), y.clone()];
            for k in 1.. {
                if lines.len() >= ms.len() {
                    break;
                }
                lines.push(linear(&vars, k, 1));
                lines.push(linear(&vars, -k, 1));
            }
            ms.iter().zip(&lines).fold(one(), |acc, (&k, l)| acc.mul(&l.pow(k as u32)))
        }
        FibreClass::Branches { a, b, mults } => {
            let (wx, wy) = key.weights;
            let g = num_integer::Integer::gcd(&wx, &wy);
            let (sp, sq) = ((wx / g) as u32, (wy / g) as u32);
            let mut p = x.pow(*a as u32).mul(&y.pow(*b as u32));
            let mut ms = mults.clone();
            ms.sort_by(|a, b| b.cmp(a));
            for (i, &k) in ms.iter().enumerate() {
                let c = if i % 2 == 0 { (i / 2 + 1) as i64 } else { -((i / 2 + 1) as i64) };
                let br = y.pow(sp).sub(&x.pow(sq).scale(&CycloScalar::int(c)));
                p = p.mul(&br.pow(k as u32));
            }
            p
        }
    }
}

/// Canonical representative of a family: the normal fibre plus one parameter
/// per independent direction on standard monomials.
pub fn canonical_form(key: &CurveKey, params: &[(String, i64)]) -> CurveFamily {
    let mut p0 = normal_fibre(key);
    let w = [key.weights.0, key.weights.1];
    if let FibreClass::Branches { a: 0, b: 0, mults } = &key.class {
        if mults == &[1, 1] && key.pieces.iter().all(|pc| pc.rank == 0 || pc.weight == 0) {
            // a sum of two powers when only the constant deforms
            let g = num_integer::Integer::gcd(&w[0], &w[1]);
            let vars = vec!["x".to_string(), "y".to_string()];
            p0 = Poly::var(&vars, 0).pow((2 * w[1] / g) as u32).add(&Poly::var(&vars, 1).pow((2 * w[0] / g) as u32));
        }
    }
    let mut names: Vec<(String, i64)> = params.to_vec();
    names.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    let mut used = vec![false; names.len()];
    let mut terms: Vec<(String, i64, Monomial)> = Vec::new();
    for piece in &key.pieces {
        if piece.rank == 0 {
            continue;
        }
        let (mut std, _) = standard_monomials_x_first(&p0, &w, piece.weight);
        std.sort_by(|a, b| b.cmp(a));
        let mut k = 0;
        for (i, (n, pw)) in names.iter().enumerate() {
            if k == piece.rank || k == std.len() {
                break;
            }
            if !used[i] && key.total - pw == piece.weight {
                used[i] = true;
                terms.push((n.clone(), *pw, std[k].clone()));
                k += 1;
            }
        }
        while k < piece.rank.min(std.len()) {
            let d = (key.total - piece.weight) / 2;
            let mut n = format!("p{}", d);
            while terms.iter().any(|t| t.0 == n) || names.iter().any(|t| t.0 == n) {
                n.push('\'');
            }
            terms.push((n, key.total - piece.weight, std[k].clone()));
            k += 1;
        }
    }
    terms.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    for i in 0..terms.len() {
        let bare = terms[i].0.trim_end_matches('\'').to_string();
        if bare != terms[i].0 && !terms.iter().any(|t| t.0 == bare) {
            terms[i].0 = bare;
        }
    }
    let mut vars = vec!["x".to_string(), "y".to_string()];
    vars.extend(terms.iter().map(|t| t.0.clone()));
    let mut f = p0.with_vars(&vars);
    for (i, (_, _, m)) in terms.iter().enumerate() {
        let mut e = m.clone();
        e.extend(std::iter::repeat(0).take(terms.len()));
        e[2 + i] = 1;
        f.add_term(e, CycloScalar::int(-1));
    }
    CurveFamily {
        curve_vars: vec!["x".into(), "y".into()],
        var_weights: w.to_vec(),
        params: terms.iter().map(|t| (t.0.clone(), t.1)).collect(),
        equation: f,
        free_coeffs: Vec::new(),
        provenance: "canonical form".into(),
    }
}

/// `lhs = rhs` with the leading pure curve term on the left.
pub fn render_equation(f: &Poly, curve_vars: &[String]) -> String {
    let nc = curve_vars.len();
    let is_curve_only = |e: &Monomial| e[nc..].iter().all(|&k| k == 0);
    let npar = f.nvars() - nc;
    let pure: Vec<(Monomial, CycloScalar)> = f.ordered_terms().into_iter().filter(|(e, _)| is_curve_only(e)).collect();
    // listing style: a single constant parameter and a positive fibre
    let constant_only = npar == 1
        && f.terms.keys().filter(|e| !is_curve_only(e)).all(|e| e[..nc].iter().all(|&k| k == 0));
    let positive = pure.iter().all(|(_, c)| c.to_rational().map(|r| r > q(0)).unwrap_or(false));
    if constant_only && positive && pure.len() >= 2 {
        let lhs = Poly { vars: f.vars.clone(), terms: pure.iter().cloned().collect() };
        let rhs = f.sub(&lhs).neg();
        return format!("{} = {}", lhs, rhs);
    }
    let lead = pure
        .iter()
        .max_by(|a, b| a.0.get(1).cmp(&b.0.get(1)).then(b.0.cmp(&a.0)))
        .cloned();
    match lead {
        Some((e, c)) => {
            let lhs = Poly::monomial(&f.vars, e.clone(), CycloScalar::one());
            let rest = f.scale(&c.inverse().expect("nonzero leading coefficient")).sub(&lhs).neg();
            format!("{} = {}", lhs, render_rhs(&rest, nc))
        }
        None => format!("{} = 0", f),
    }
}

fn render_rhs(p: &Poly, nc: usize) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut ts = p.ordered_terms();
    ts.sort_by(|a, b| {
        let pa: u32 = a.0[nc..].iter().sum();
        let pb: u32 = b.0[nc..].iter().sum();
        pa.cmp(&pb).then_with(|| {
            let ka: Vec<u32> = a.0[nc..].to_vec();
            let kb: Vec<u32> = b.0[nc..].to_vec();
            kb.cmp(&ka)
        }).then_with(|| b.0[..nc].cmp(&a.0[..nc]))
    });
    let mut out = String::new();
    for (i, (e, c)) in ts.iter().enumerate() {
        let mut order: Vec<usize> = (nc..e.len()).collect();
        order.extend(0..nc);
        let vars: Vec<String> = order.iter().map(|&i| p.vars[i].clone()).collect();
        let ex: Vec<u32> = order.iter().map(|&i| e[i]).collect();
        let single = Poly::monomial(&vars, ex, c.clone()).to_string();
        if i == 0 {
            out.push_str(&single);
        } else if let Some(s) = single.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(s);
        } else {
            out.push_str(" + ");
            out.push_str(&single);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(s: &str) -> CurveKey {
        canonical_key(&CurveFamily::parse(s, "test").unwrap()).unwrap()
    }

    #[test]
    fn weights_are_solved() {
        let f = CurveFamily::parse("y^2 = x^3 + p20*x + p30", "t").unwrap();
        assert_eq!(f.var_weights, vec![20, 30]);
        let f = CurveFamily::parse("x*y = p3", "t").unwrap();
        assert_eq!(f.var_weights, vec![3, 3]);
    }

    #[test]
    fn coordinate_changes_preserve_key() {
        assert_eq!(key("x^3 + y^3 + p2*x*y + p6"), key("y^2*x = x^3 + p2*x^2 + p6"));
        assert_eq!(key("x*y = p3"), key("x^2 + y^2 = p3"));
        assert_ne!(key("y^2 = x^3 + p6"), key("y^2 = x^3 + p4*x + p6"));
    }

    #[test]
    fn e8_key_and_render() {
        let k = key("y^2 = x^3 + p20*x + p30");
        assert!(k.is_reduced());
        let fam = canonical_form(&k, &[("p20".into(), 40), ("p30".into(), 60)]);
        assert_eq!(fam.display_equation(), "y^2 = x^3 + p20*x + p30");
        let k = key("x^2 + y^2 = p8");
        let fam = canonical_form(&k, &[("p8".into(), 16)]);
        assert_eq!(fam.display_equation(), "x^2 + y^2 = p8");
    }

    #[test]
    fn split_quadrics_become_products() {
        let f = CurveFamily::parse("y^2 = x^2 + p8", "test").unwrap();
        assert_eq!(f.normalized().unwrap().display_equation(), "x*y = p8");
        let f = CurveFamily::parse("y^2 = 2*x^2 + p8", "test").unwrap();
        assert_eq!(f.normalized().unwrap().display_equation(), "x^2 + y^2 = p8");
    }
}
