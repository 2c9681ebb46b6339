//! Chevalley bases, structure constants and adjoint linear algebra.
//!
//! Basis order: h_1..h_l, then e_alpha for every root in the order of
//! [`RootSystem::roots`].

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modp::ModP;
use crate::rootdata::RootSystem;
use crate::scalars::{q, CycloScalar, Field, Q};

/// Sparse structure constants in an arbitrary basis: [b_i, b_j] = sum_k c_ij^k b_k.
#[derive(Clone, Debug)]
pub struct StructureTable<F: Field> {
    pub dim: usize,
    entries: Vec<Vec<(usize, F)>>,
}

impl<F: Field> StructureTable<F> {
    pub fn new(dim: usize) -> Self {
        StructureTable { dim, entries: vec![Vec::new(); dim * dim] }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vec<(usize, F)>) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.entries[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[i] = F::one();
        v
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let e = self.get(i, j);
                if e.is_empty() {
                    continue;
                }
                let s = xi.times(yj);
                for (k, c) in e {
                    out[*k] = out[*k].plus(&s.times(c));
                }
            }
        }
        out
    }

    /// Matrix of ad(x); column j is [x, b_j].
    pub fn ad_matrix(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim;
        let mut m = Matrix::<F>::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.get(i, j) {
                    let v = m.get(*k, j).plus(&xi.times(c));
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    /// ad(x) restricted to the coordinate block `src` and projected to `dst`.
    pub fn ad_block(&self, x: &[F], src: &[usize], dst: &[usize]) -> Matrix<F> {
        let pos: HashMap<usize, usize> = dst.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let mut m = Matrix::<F>::zeros(dst.len(), src.len());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (jj, &j) in src.iter().enumerate() {
                for (k, c) in self.get(i, j) {
                    if let Some(&kk) = pos.get(k) {
                        let v = m.get(kk, jj).plus(&xi.times(c));
                        m.set(kk, jj, v);
                    }
                }
            }
        }
        m
    }

    /// ad(x) modulo p, or None when some coefficient does not reduce.
    pub fn ad_matrix_modp(&self, x: &[F], fp: &ModP) -> Option<Vec<Vec<u64>>> {
        let all: Vec<usize> = (0..self.dim).collect();
        self.ad_block_modp(x, &all, &all, fp)
    }

    pub fn ad_block_modp(&self, x: &[F], src: &[usize], dst: &[usize], fp: &ModP) -> Option<Vec<Vec<u64>>> {
        let mut pos = vec![usize::MAX; self.dim];
        for (a, &b) in dst.iter().enumerate() {
            pos[b] = a;
        }
        let mut m = vec![vec![0u64; src.len()]; dst.len()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let xr = fp.from_field(xi)?;
            for (jj, &j) in src.iter().enumerate() {
                for (k, c) in self.get(i, j) {
                    let kk = pos[*k];
                    if kk != usize::MAX {
                        let cr = fp.from_field(c)?;
                        m[kk][jj] = fp.add(m[kk][jj], fp.mul(xr, cr));
                    }
                }
            }
        }
        Some(m)
    }

    pub fn killing_form(&self, x: &[F], y: &[F]) -> F {
        let a = self.ad_matrix(x);
        let b = self.ad_matrix(y);
        let n = self.dim;
        let mut t = F::zero();
        for i in 0..n {
            for k in 0..n {
                let u = a.get(i, k);
                if u.is_zero() {
                    continue;
                }
                let v = b.get(k, i);
                if !v.is_zero() {
                    t = t.plus(&u.times(v));
                }
            }
        }
        t
    }

    /// Largest violation-free check of antisymmetry and Jacobi on given triples.
    pub fn check_jacobi(&self, triples: &[(usize, usize, usize)]) -> bool {
        for &(i, j, k) in triples {
            let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
            let t1 = self.bracket(&a, &self.bracket(&b, &c));
            let t2 = self.bracket(&b, &self.bracket(&c, &a));
            let t3 = self.bracket(&c, &self.bracket(&a, &b));
            if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !x.plus(y).plus(z).is_zero()) {
                return false;
            }
        }
        true
    }

    pub fn check_antisymmetry(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                let b = self.get(j, i);
                let mut sum: HashMap<usize, F> = HashMap::new();
                for (k, c) in a.iter().chain(b.iter()) {
                    let e = sum.entry(*k).or_insert_with(F::zero);
                    *e = e.plus(c);
                }
                if sum.values().any(|v| !v.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> StructureTable<G> {
        StructureTable {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.iter().map(|(k, c)| (*k, f(c))).collect()).collect(),
        }
    }

    /// Sparse triplets (i, j, k, c) for JSON dumps.
    pub fn triplets(&self) -> Vec<(usize, usize, usize, F)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.get(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }
}

/// Element of a built algebra in the Chevalley basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraElement {
    pub coords: Vec<CycloScalar>,
}

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        AlgebraElement { coords: vec![CycloScalar::zero(); dim] }
    }

    pub fn from_field<F: Field>(v: &[F]) -> Self {
        AlgebraElement { coords: v.iter().map(|x| x.to_cyclo()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn conductor(&self) -> u32 {
        self.coords.iter().fold(1, |acc, c| num_integer::lcm(acc, c.conductor()))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Vec<Q>> {
        self.coords.iter().map(|c| c.to_rational()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub root_system: RootSystem,
    pub dim: usize,
    pub table: StructureTable<Q>,
    /// N_{alpha,beta} for root indices with alpha + beta a root
    n_consts: HashMap<(usize, usize), i64>,
}

impl ChevalleyAlgebra {
    pub fn new(rs: &RootSystem) -> Self {
        let l = rs.rank;
        let dim = l + rs.num_roots();
        let n_consts = structure_constants(rs);
        let mut table: StructureTable<Q> = StructureTable::new(dim);
        for a in 0..rs.num_roots() {
            let ra = &rs.roots[a];
            for i in 0..l {
                let c = rs.pair_coroot(ra, i);
                if c != 0 {
                    table.set(i, l + a, vec![(l + a, q(c))]);
                    table.set(l + a, i, vec![(l + a, q(-c))]);
                }
            }
            for b in 0..rs.num_roots() {
                let rb = &rs.roots[b];
                let sum: Vec<i64> = ra.iter().zip(rb).map(|(x, y)| x + y).collect();
                if sum.iter().all(|&x| x == 0) {
                    let co = rs.coroot_coords(ra);
                    table.set(
                        l + a,
                        l + b,
                        co.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, q(c))).collect(),
                    );
                } else if let Some(c) = rs.root_index(&sum) {
                    let n = n_consts[&(a, b)];
                    table.set(l + a, l + b, vec![(l + c, q(n))]);
                }
            }
        }
        ChevalleyAlgebra { root_system: rs.clone(), dim, table, n_consts }
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank
    }

    /// Basis index of e_alpha.
    pub fn root_vector_index(&self, root: usize) -> usize {
        self.rank() + root
    }

    pub fn root_of_basis(&self, i: usize) -> Option<usize> {
        if i < self.rank() {
            None
        } else {
            Some(i - self.rank())
        }
    }

    pub fn n(&self, a: usize, b: usize) -> Option<i64> {
        self.n_consts.get(&(a, b)).copied()
    }

    pub fn check_dim(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::Domain(format!("element of dimension {} in algebra of dimension {}", x.dim(), self.dim)));
        }
        Ok(())
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let t = self.table.map_scalars(|c| c.to_cyclo());
        Ok(AlgebraElement { coords: t.bracket(&x.coords, &y.coords) })
    }

    pub fn ad_matrix(&self, x: &AlgebraElement) -> Matrix<CycloScalar> {
        if let Some(r) = x.to_rational() {
            let m = self.table.ad_matrix(&r);
            return Matrix::from_rows(m.to_rows().into_iter().map(|r| r.iter().map(|c| c.to_cyclo()).collect()).collect());
        }
        self.table.map_scalars(|c| c.to_cyclo()).ad_matrix(&x.coords)
    }

    pub fn killing_form(&self, x: &AlgebraElement, y: &AlgebraElement) -> CycloScalar {
        if let (Some(a), Some(b)) = (x.to_rational(), y.to_rational()) {
            return self.table.killing_form(&a, &b).to_cyclo();
        }
        self.table.map_scalars(|c| c.to_cyclo()).killing_form(&x.coords, &y.coords)
    }

    pub fn is_nilpotent(&self, x: &AlgebraElement) -> bool {
        is_nilpotent_matrix(&self.ad_matrix(x))
    }

    pub fn is_semisimple(&self, x: &AlgebraElement) -> bool {
        is_semisimple_matrix(&self.ad_matrix(x))
    }

    pub fn is_regular(&self, x: &AlgebraElement) -> bool {
        let a = self.ad_matrix(x);
        self.dim - a.rank() == self.rank()
    }

    /// Sum of the simple root vectors.
    pub fn regular_nilpotent(&self) -> AlgebraElement {
        let mut v = vec![q(0); self.dim];
        for i in 0..self.rank() {
            v[self.root_vector_index(self.root_system.simple_index(i))] = q(1);
        }
        AlgebraElement::from_field(&v)
    }

    /// rho-check as a Cartan element; [rho, e_alpha] = ht(alpha) e_alpha.
    pub fn rho_check_element(&self) -> AlgebraElement {
        let rho = crate::rootdata::rho_check(&self.root_system);
        let mut v = vec![q(0); self.dim];
        v[..self.rank()].clone_from_slice(&rho);
        AlgebraElement::from_field(&v)
    }

    pub fn basis_label(&self, i: usize) -> String {
        match self.root_of_basis(i) {
            None => format!("h{}", i + 1),
            Some(a) => format!("r{:?}", self.root_system.roots[a]),
        }
    }

    pub fn structure_json(&self) -> serde_json::Value {
        let trip: Vec<_> = self
            .table
            .triplets()
            .into_iter()
            .map(|(i, j, k, c)| serde_json::json!([i, j, k, crate::scalars::fmt_q(&c)]))
            .collect();
        serde_json::json!({ "dim": self.dim, "brackets": trip })
    }

    pub fn random_triples(&self, count: usize, rng: &mut impl Rng) -> Vec<(usize, usize, usize)> {
        (0..count)
            .map(|_| (rng.gen_range(0..self.dim), rng.gen_range(0..self.dim), rng.gen_range(0..self.dim)))
            .collect()
    }
}

pub fn is_nilpotent_matrix<F: Field>(a: &Matrix<F>) -> bool {
    // nilpotency mod p is necessary, so a failure there is final
    let fp = ModP::for_conductor(conductor_of(a));
    if let Some(r) = fp.reduce_matrix(a) {
        if !fp.is_nilpotent(&r) {
            return false;
        }
    }
    let n = a.rows;
    let mut p = a.clone();
    let mut k = 1;
    while k < n {
        p = p.mul(&p);
        k *= 2;
        if p.is_zero() {
            return true;
        }
    }
    p.is_zero()
}

pub fn conductor_of<F: Field>(a: &Matrix<F>) -> u32 {
    a.data.iter().fold(1, |acc, c| match c.to_rational() {
        Some(_) => acc,
        None => num_integer::lcm(acc, c.to_cyclo().conductor()),
    })
}

/// Semisimple iff the zero eigenvalue has no Jordan blocks of size > 1 on the
/// adjoint representation: rank(A) = rank(A^2).
pub fn is_semisimple_matrix<F: Field>(a: &Matrix<F>) -> bool {
    let fp = ModP::for_conductor(conductor_of(a));
    if let Some(r) = fp.reduce_matrix(a) {
        let r2 = fp.matmul(&r, &r);
        let (k1, k2) = (fp.rank(&r), fp.rank(&r2));
        // the mod p rank of A^2 is a lower bound; if it reaches the exact rank of A we are done
        if k1 == k2 && a.rank() == k1 {
            return true;
        }
    }
    a.rank() == a.mul(a).rank()
}

/// Minimal polynomial of a square matrix by Krylov dependence (monic, low degree first).
pub fn minimal_polynomial<F: Field>(a: &Matrix<F>) -> Vec<F> {
    // lcm of the local minimal polynomials of the standard basis vectors
    let n = a.rows;
    let mut acc: Vec<F> = vec![F::one()];
    for j in 0..n {
        let mut v = vec![F::zero(); n];
        v[j] = F::one();
        // skip vectors already annihilated by acc
        if poly_apply(a, &acc, &v).iter().all(|x| x.is_zero()) {
            continue;
        }
        let local = local_minimal_polynomial(a, &v);
        acc = poly_lcm(&acc, &local);
    }
    acc
}

fn poly_apply<F: Field>(a: &Matrix<F>, p: &[F], v: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); v.len()];
    let mut cur = v.to_vec();
    for (k, c) in p.iter().enumerate() {
        if !c.is_zero() {
            for (o, x) in out.iter_mut().zip(&cur) {
                *o = o.plus(&c.times(x));
            }
        }
        if k + 1 < p.len() {
            cur = a.apply(&cur);
        }
    }
    out
}

fn local_minimal_polynomial<F: Field>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    let mut krylov: Vec<Vec<F>> = vec![v.to_vec()];
    loop {
        let next = a.apply(krylov.last().unwrap());
        // solve next = sum c_k krylov_k
        let m = Matrix::from_cols(v.len(), &krylov);
        if let Some(c) = m.solve(&next) {
            let mut p: Vec<F> = c.iter().map(|x| x.negated()).collect();
            p.push(F::one());
            return p;
        }
        krylov.push(next);
    }
}

pub fn poly_trim<F: Field>(mut p: Vec<F>) -> Vec<F> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    if p.is_empty() {
        p.push(F::zero());
    }
    p
}

pub fn poly_divrem<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].inverse().expect("nonzero divisor");
    if r.len() < b.len() {
        return (vec![F::zero()], r);
    }
    let mut qt = vec![F::zero(); r.len() - db];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap().times(&lead_inv);
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].minus(&c.times(bi));
        }
        qt[shift] = c;
        r.pop();
        r = poly_trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (qt, r)
}

pub fn poly_gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !(y.len() == 1 && y[0].is_zero()) {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().unwrap().inverse().unwrap_or_else(F::one);
    x.iter().map(|c| c.times(&lead)).collect()
}

fn poly_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].plus(&x.times(y));
        }
    }
    out
}

fn poly_lcm<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let g = poly_gcd(a, b);
    let (qt, _) = poly_divrem(&poly_mul(a, b), &g);
    let lead = qt.last().unwrap().inverse().unwrap_or_else(F::one);
    qt.iter().map(|c| c.times(&lead)).collect()
}

pub fn poly_derivative<F: Field>(a: &[F]) -> Vec<F> {
    if a.len() <= 1 {
        return vec![F::zero()];
    }
    a.iter().enumerate().skip(1).map(|(k, c)| c.times(&F::from_i64(k as i64))).collect()
}

/// Squarefree test through gcd(p, p') = 1.
pub fn is_squarefree<F: Field>(p: &[F]) -> bool {
    poly_gcd(p, &poly_derivative(p)).len() == 1
}

/// Structure constants N_{a,b} (root indices) from extraspecial pairs.
fn structure_constants(rs: &RootSystem) -> HashMap<(usize, usize), i64> {
    let npos = rs.num_positive();
    let norm = |i: usize| rs.inner(&rs.roots[i], &rs.roots[i]);
    let add = |a: usize, b: usize| -> Option<usize> {
        let s: Vec<i64> = rs.roots[a].iter().zip(&rs.roots[b]).map(|(x, y)| x + y).collect();
        rs.root_index(&s)
    };
    let p_value = |r: usize, s: usize| -> i64 {
        // largest p with s - p r a root
        let mut p = 0;
        let mut cur = rs.roots[s].clone();
        loop {
            let nxt: Vec<i64> = cur.iter().zip(&rs.roots[r]).map(|(x, y)| x - y).collect();
            if rs.is_root(&nxt) {
                p += 1;
                cur = nxt;
            } else {
                return p;
            }
        }
    };
    // special pairs stored as (r, s) with r < s positive
    let mut special: HashMap<(usize, usize), i64> = HashMap::new();

    fn lookup(
        rs: &RootSystem,
        special: &HashMap<(usize, usize), i64>,
        a: usize,
        b: usize,
        norm: &dyn Fn(usize) -> i64,
        add: &dyn Fn(usize, usize) -> Option<usize>,
    ) -> i64 {
        let npos = rs.num_positive();
        let c = match add(a, b) {
            Some(c) => c,
            None => return 0,
        };
        let pa = a < npos;
        let pb = b < npos;
        if pa && pb {
            return if a < b { special[&(a, b)] } else { -special[&(b, a)] };
        }
        if !pa && !pb {
            return -lookup(rs, special, rs.negative(a), rs.negative(b), norm, add);
        }
        if !pa {
            return -lookup(rs, special, b, a, norm, add);
        }
        // a > 0 > b; let c' = -(a+b)
        let cneg = rs.negative(c);
        if c < npos {
            // a+b > 0 so c' < 0: N_{a,b} = -|c'|^2/|a|^2 N_{-b,-c'}
            let v = lookup(rs, special, rs.negative(b), c, norm, add);
            let num = -norm(cneg) * v;
            debug_assert_eq!(num % norm(a), 0);
            num / norm(a)
        } else {
            // c' > 0: N_{a,b} = |c'|^2/|b|^2 N_{c',a}
            let v = lookup(rs, special, cneg, a, norm, add);
            let num = norm(cneg) * v;
            debug_assert_eq!(num % norm(b), 0);
            num / norm(b)
        }
    }

    // group positive roots by height; heights increase along the ordering
    for xi in 0..npos {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for r in 0..xi {
            let d: Vec<i64> = rs.roots[xi].iter().zip(&rs.roots[r]).map(|(x, y)| x - y).collect();
            if let Some(s) = rs.root_index(&d) {
                if s < npos && r < s {
                    pairs.push((r, s));
                }
            }
        }
        if pairs.is_empty() {
            continue;
        }
        let (r1, s1) = pairs[0];
        let n1 = p_value(r1, s1) + 1;
        special.insert((r1, s1), n1);
        let nxi = Q::from_integer(norm(xi).into());
        for &(r, s) in &pairs[1..] {
            let mut acc = q(0);
            let nr1 = rs.negative(r1);
            let ns1 = rs.negative(s1);
            if let Some(t) = add(s, nr1) {
                let a = lookup(rs, &special, s, nr1, &norm, &add);
                let b = lookup(rs, &special, r, ns1, &norm, &add);
                acc += Q::new((a * b).into(), norm(t).into());
            }
            if let Some(t) = add(nr1, r) {
                let a = lookup(rs, &special, nr1, r, &norm, &add);
                let b = lookup(rs, &special, s, ns1, &norm, &add);
                acc += Q::new((a * b).into(), norm(t).into());
            }
            let val = acc * &nxi / Q::from_integer(n1.into());
            assert!(val.is_integer(), "structure constant is not integral");
            let v = crate::scalars::q_to_i64(&val).unwrap();
            debug_assert_eq!(v.abs(), p_value(r, s) + 1);
            special.insert((r, s), v);
        }
    }

    let mut out = HashMap::new();
    for a in 0..rs.num_roots() {
        for b in 0..rs.num_roots() {
            if add(a, b).is_some() {
                out.insert((a, b), lookup(rs, &special, a, b, &norm, &add));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::DynkinType;
    use rand::SeedableRng;

    fn alg(t: DynkinType, l: usize) -> ChevalleyAlgebra {
        ChevalleyAlgebra::new(&RootSystem::new(t, l).unwrap())
    }

    #[test]
    fn sl2_relations() {
        let a = alg(DynkinType::A, 1);
        let t = &a.table;
        assert_eq!(t.get(1, 2), &[(0, q(1))]);
        assert_eq!(t.get(0, 1), &[(1, q(2))]);
        assert_eq!(t.get(0, 2), &[(2, q(-2))]);
    }

    #[test]
    fn jacobi_exhaustive_small() {
        for (t, l) in [
            (DynkinType::A, 2),
            (DynkinType::A, 3),
            (DynkinType::B, 2),
            (DynkinType::B, 3),
            (DynkinType::C, 3),
            (DynkinType::G, 2),
        ] {
            let a = alg(t, l);
            assert!(a.table.check_antisymmetry());
            let mut triples = Vec::new();
            for i in 0..a.dim {
                for j in 0..a.dim {
                    for k in 0..a.dim {
                        triples.push((i, j, k));
                    }
                }
            }
            assert!(a.table.check_jacobi(&triples), "{t}{l}");
        }
    }

    #[test]
    fn jacobi_sampled_large() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (t, l) in [(DynkinType::F, 4), (DynkinType::D, 4), (DynkinType::E, 6)] {
            let a = alg(t, l);
            let tr = a.random_triples(500, &mut rng);
            assert!(a.table.check_jacobi(&tr), "{t}{l}");
        }
    }

    #[test]
    fn killing_sl2() {
        let a = alg(DynkinType::A, 1);
        let h = AlgebraElement::from_field(&[q(1), q(0), q(0)]);
        assert_eq!(a.killing_form(&h, &h), CycloScalar::int(8));
    }

    #[test]
    fn jordan_predicates() {
        let a = alg(DynkinType::A, 1);
        let ef = AlgebraElement::from_field(&[q(0), q(1), q(1)]);
        assert!(a.is_semisimple(&ef));
        assert!(!a.is_nilpotent(&ef));
        let e = AlgebraElement::from_field(&[q(0), q(1), q(0)]);
        assert!(a.is_nilpotent(&e));
        assert!(!a.is_semisimple(&e));
        let mp = minimal_polynomial(&a.table.ad_matrix(&[q(0), q(1), q(1)]));
        assert!(is_squarefree(&mp));
        let f4 = alg(DynkinType::F, 4);
        assert!(f4.is_regular(&f4.regular_nilpotent()));
    }
}
