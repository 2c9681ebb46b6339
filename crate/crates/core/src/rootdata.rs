//! Root systems in the simple-root basis, Weyl combinatorics, degrees and
//! lattice coinvariants.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det_int, smith_invariants, Matrix};
use crate::scalars::{q, Field, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl DynkinType {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(DynkinType::A),
            "B" => Ok(DynkinType::B),
            "C" => Ok(DynkinType::C),
            "D" => Ok(DynkinType::D),
            "E" => Ok(DynkinType::E),
            "F" => Ok(DynkinType::F),
            "G" => Ok(DynkinType::G),
            other => Err(Error::Domain(format!("unknown Dynkin type {other:?}"))),
        }
    }

    pub fn letter(self) -> char {
        match self {
            DynkinType::A => 'A',
            DynkinType::B => 'B',
            DynkinType::C => 'C',
            DynkinType::D => 'D',
            DynkinType::E => 'E',
            DynkinType::F => 'F',
            DynkinType::G => 'G',
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Parses labels such as "E8", "B3" or "F4" into a type and rank.
pub fn parse_type_label(s: &str) -> Result<(DynkinType, usize)> {
    let s = s.trim();
    let (head, tail) = s.split_at(1);
    let t = DynkinType::parse(head)?;
    let r: usize = tail.parse().map_err(|_| Error::Parse(format!("bad type label {s:?}")))?;
    Ok((t, r))
}

pub fn cartan_matrix(t: DynkinType, l: usize) -> Result<Vec<Vec<i64>>> {
    let valid = match t {
        DynkinType::A => l >= 1,
        DynkinType::B => l >= 2,
        DynkinType::C => l >= 3,
        DynkinType::D => l >= 4,
        DynkinType::E => (6..=8).contains(&l),
        DynkinType::F => l == 4,
        DynkinType::G => l == 2,
    };
    if !valid {
        return Err(Error::Domain(format!("no simple type {t}{l}")));
    }
    let mut c = vec![vec![0i64; l]; l];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match t {
        DynkinType::A | DynkinType::B | DynkinType::C => {
            for i in 0..l - 1 {
                link(&mut c, i, i + 1);
            }
            if t == DynkinType::B {
                c[l - 2][l - 1] = -2;
            } else if t == DynkinType::C {
                c[l - 1][l - 2] = -2;
            }
        }
        DynkinType::D => {
            for i in 0..l - 2 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, l - 3, l - 1);
        }
        DynkinType::E => {
            link(&mut c, 0, 2);
            link(&mut c, 2, 3);
            link(&mut c, 1, 3);
            for i in 3..l - 1 {
                link(&mut c, i, i + 1);
            }
        }
        DynkinType::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[1][2] = -2;
        }
        DynkinType::G => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
    }
    Ok(c)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub dynkin_type: DynkinType,
    pub rank: usize,
    /// cartan[i][j] = <alpha_i, alpha_j^vee>
    pub cartan: Vec<Vec<i64>>,
    /// all roots: positive roots by (height, lex), then their negatives in the same order
    pub roots: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
    /// (alpha_i, alpha_i), short roots normalized to 2
    pub simple_norms: Vec<i64>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn new(t: DynkinType, l: usize) -> Result<Self> {
        let cartan = cartan_matrix(t, l)?;
        Ok(Self::from_cartan(t, cartan))
    }

    pub fn from_cartan(t: DynkinType, cartan: Vec<Vec<i64>>) -> Self {
        let l = cartan.len();
        let simple_norms = symmetrizer(&cartan);
        let pos = reflection_closure(&cartan);
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let heights = roots.iter().map(|r| r.iter().sum()).collect();
        let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        RootSystem { dynkin_type: t, rank: l, cartan, roots, heights, simple_norms, index }
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.dynkin_type, self.rank)
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.index.contains_key(r)
    }

    /// Index of -alpha.
    pub fn negative(&self, i: usize) -> usize {
        let n = self.num_positive();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    pub fn simple_index(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        self.root_index(&v).expect("simple roots are roots")
    }

    /// Symmetric form (a, b) on root-lattice coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] == 0 {
                    continue;
                }
                // (alpha_i, alpha_j) = cartan[i][j] * (alpha_j, alpha_j) / 2
                s += a[i] * b[j] * self.cartan[i][j] * self.simple_norms[j] / 2;
            }
        }
        s
    }

    /// <beta, alpha_i^vee>.
    pub fn pair_coroot(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| beta[j] * self.cartan[j][i]).sum()
    }

    pub fn reflect_simple(&self, beta: &[i64], i: usize) -> Vec<i64> {
        let c = self.pair_coroot(beta, i);
        let mut out = beta.to_vec();
        out[i] -= c;
        out
    }

    /// Coordinates of the coroot of alpha in the basis of simple coroots.
    pub fn coroot_coords(&self, alpha: &[i64]) -> Vec<i64> {
        let n = self.inner(alpha, alpha);
        (0..self.rank)
            .map(|i| {
                let v = alpha[i] * self.simple_norms[i];
                debug_assert_eq!(v % n, 0);
                v / n
            })
            .collect()
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.roots[self.num_positive() - 1]
    }

    pub fn coxeter_number(&self) -> i64 {
        self.heights[self.num_positive() - 1] + 1
    }

    /// Weyl group order via the product of degrees.
    pub fn weyl_order(&self) -> BigInt {
        self.invariant_degrees().iter().fold(BigInt::one(), |acc, &d| acc * BigInt::from(d))
    }

    pub fn invariant_degrees(&self) -> Vec<i64> {
        invariant_degrees(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.dynkin_type.letter().to_string(),
            "rank": self.rank,
            "cartan": self.cartan,
            "roots": self.roots,
            "degrees": self.invariant_degrees(),
        })
    }

    /// Reflection in an arbitrary root, as an integer matrix on the root lattice (columns = images of simple roots).
    pub fn reflection_matrix(&self, beta: &[i64]) -> Vec<Vec<i64>> {
        let nb = self.inner(beta, beta);
        let mut m = vec![vec![0i64; self.rank]; self.rank];
        for j in 0..self.rank {
            let mut e = vec![0i64; self.rank];
            e[j] = 1;
            let c = 2 * self.inner(&e, beta);
            debug_assert_eq!(c % nb, 0);
            let c = c / nb;
            for i in 0..self.rank {
                m[i][j] = e[i] - c * beta[i];
            }
        }
        m
    }
}

/// Positive roots from closure under simple reflections, sorted by (height, lex).
fn reflection_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..l {
        let mut v = vec![0; l];
        v[i] = 1;
        seen.insert(v.clone());
        queue.push_back(v);
    }
    while let Some(b) = queue.pop_front() {
        for i in 0..l {
            let c: i64 = (0..l).map(|j| b[j] * cartan[j][i]).sum();
            let mut r = b.clone();
            r[i] -= c;
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
    pos.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    pos
}

/// (alpha_i, alpha_i) with the short roots of each component at 2.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let l = cartan.len();
    // rational lengths by propagation along the diagram
    let mut len: Vec<Option<Q>> = vec![None; l];
    for start in 0..l {
        if len[start].is_some() {
            continue;
        }
        len[start] = Some(q(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..l {
                if i != j && cartan[i][j] != 0 && len[j].is_none() {
                    // cartan[i][j] * d_j = cartan[j][i] * d_i
                    let di = len[i].clone().unwrap();
                    len[j] = Some(di * q(cartan[j][i]) / q(cartan[i][j]));
                    stack.push(j);
                }
            }
        }
    }
    let lens: Vec<Q> = len.into_iter().map(|x| x.unwrap()).collect();
    let min = lens.iter().cloned().fold(None, |acc: Option<Q>, x| match acc {
        None => Some(x),
        Some(a) => Some(if x < a { x } else { a }),
    });
    let min = min.unwrap_or_else(|| q(1));
    lens.iter()
        .map(|x| {
            let r = x / &min * q(2);
            crate::scalars::q_to_i64(&r).expect("integral root lengths")
        })
        .collect()
}

/// Degrees from the dual partition of the positive-root height distribution.
pub fn invariant_degrees(rs: &RootSystem) -> Vec<i64> {
    let hmax = rs.coxeter_number() - 1;
    let mut counts = vec![0i64; hmax as usize + 2];
    for (r, &h) in rs.roots.iter().zip(&rs.heights) {
        if h > 0 && r.iter().all(|&x| x >= 0) {
            counts[h as usize] += 1;
        }
    }
    let mut degrees = Vec::new();
    for k in 1..=hmax as usize {
        let mult = counts[k] - counts[k + 1];
        for _ in 0..mult {
            degrees.push(k as i64 + 1);
        }
    }
    degrees.sort();
    degrees
}

/// rho-check as coordinates in the basis of simple coroots: C c = 1.
pub fn rho_check(rs: &RootSystem) -> Vec<Q> {
    let l = rs.rank;
    let m = Matrix::from_rows(
        (0..l).map(|i| (0..l).map(|j| q(rs.cartan[i][j])).collect()).collect(),
    );
    m.solve(&vec![q(1); l]).expect("Cartan matrix is invertible")
}

/// Pairing <beta, h> for h given in simple-coroot coordinates.
pub fn pair_coweight(rs: &RootSystem, beta: &[i64], h: &[Q]) -> Q {
    let mut s = q(0);
    for i in 0..rs.rank {
        if beta[i] == 0 {
            continue;
        }
        for j in 0..rs.rank {
            if rs.cartan[i][j] != 0 && !Field::is_zero(&h[j]) {
                s += q(beta[i] * rs.cartan[i][j]) * &h[j];
            }
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramAutomorphism {
    pub perm: Vec<usize>,
    pub order: usize,
}

impl DiagramAutomorphism {
    pub fn identity(l: usize) -> Self {
        DiagramAutomorphism { perm: (0..l).collect(), order: 1 }
    }

    pub fn from_perm(perm: Vec<usize>) -> Self {
        let mut order = 1;
        let mut cur = perm.clone();
        while cur.iter().enumerate().any(|(i, &x)| i != x) {
            cur = cur.iter().map(|&x| perm[x]).collect();
            order += 1;
        }
        DiagramAutomorphism { perm, order }
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// sigma(sum a_i alpha_i) = sum a_i alpha_{sigma(i)}.
    pub fn apply_root(&self, r: &[i64]) -> Vec<i64> {
        let mut out = vec![0; r.len()];
        for (i, &a) in r.iter().enumerate() {
            out[self.perm[i]] = a;
        }
        out
    }
}

pub fn diagram_automorphisms(rs: &RootSystem) -> Vec<DiagramAutomorphism> {
    let l = rs.rank;
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; l];
    let mut used = vec![false; l];
    fn rec(
        k: usize,
        c: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<DiagramAutomorphism>,
    ) {
        let l = c.len();
        if k == l {
            out.push(DiagramAutomorphism::from_perm(perm.clone()));
            return;
        }
        for t in 0..l {
            if used[t] {
                continue;
            }
            if (0..k).all(|j| c[perm[j]][t] == c[j][k] && c[t][perm[j]] == c[k][j]) && c[t][t] == c[k][k] {
                perm[k] = t;
                used[t] = true;
                rec(k + 1, c, perm, used, out);
                used[t] = false;
            }
        }
        perm[k] = usize::MAX;
    }
    rec(0, &rs.cartan, &mut perm, &mut used, &mut out);
    out.sort_by(|a, b| a.perm.cmp(&b.perm));
    out
}

/// The standard outer automorphism of a given order, if any.
pub fn canonical_outer(rs: &RootSystem, order: usize) -> Result<DiagramAutomorphism> {
    let l = rs.rank;
    if order == 1 {
        return Ok(DiagramAutomorphism::identity(l));
    }
    let perm: Vec<usize> = match (rs.dynkin_type, order) {
        (DynkinType::A, 2) if l >= 2 => (0..l).rev().collect(),
        (DynkinType::D, 2) => {
            let mut p: Vec<usize> = (0..l).collect();
            p.swap(l - 2, l - 1);
            p
        }
        (DynkinType::D, 3) if l == 4 => vec![2, 1, 3, 0],
        (DynkinType::E, 2) if l == 6 => vec![5, 1, 4, 3, 2, 0],
        _ => {
            return Err(Error::Domain(format!(
                "type {} has no diagram automorphism of order {order}",
                rs.label()
            )))
        }
    };
    let a = DiagramAutomorphism::from_perm(perm);
    debug_assert!(diagram_automorphisms(rs).contains(&a));
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEndo {
    /// columns are images of the simple roots
    pub matrix: Vec<Vec<i64>>,
}

impl LatticeEndo {
    pub fn identity(l: usize) -> Self {
        let mut m = vec![vec![0; l]; l];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        LatticeEndo { matrix: m }
    }

    pub fn compose(&self, rhs: &LatticeEndo) -> LatticeEndo {
        let n = self.matrix.len();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.matrix[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i][j] += self.matrix[i][k] * rhs.matrix[k][j];
                }
            }
        }
        LatticeEndo { matrix: m }
    }

    pub fn order(&self, max: usize) -> Option<usize> {
        let id = LatticeEndo::identity(self.matrix.len());
        let mut cur = self.clone();
        for k in 1..=max {
            if cur == id {
                return Some(k);
            }
            cur = cur.compose(self);
        }
        None
    }

    pub fn one_minus(&self) -> Vec<Vec<BigInt>> {
        let n = self.matrix.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(if i == j { 1 } else { 0 } - self.matrix[i][j]))
                    .collect()
            })
            .collect()
    }

    pub fn det_one_minus(&self) -> BigInt {
        det_int(&self.one_minus())
    }

    pub fn is_elliptic(&self) -> bool {
        !self.det_one_minus().is_zero()
    }
}

/// Product of the reflections in the given roots (applied right to left in list order s_1 s_2 ... s_k).
pub fn subsystem_coxeter(rs: &RootSystem, subsystem: &[Vec<i64>]) -> Result<LatticeEndo> {
    if subsystem.is_empty() {
        return Ok(LatticeEndo::identity(rs.rank));
    }
    for r in subsystem {
        if r.len() != rs.rank || !rs.is_root(r) {
            return Err(Error::Domain(format!("{r:?} is not a root of {}", rs.label())));
        }
    }
    let m = Matrix::from_rows(
        subsystem.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<Vec<Q>>>(),
    );
    if m.rank() < subsystem.len() {
        return Err(Error::Domain("selected roots are linearly dependent".into()));
    }
    let mut w = LatticeEndo::identity(rs.rank);
    for r in subsystem {
        w = w.compose(&LatticeEndo { matrix: rs.reflection_matrix(r) });
    }
    Ok(w)
}

/// Invariant factors of L / (1 - w) L.
pub fn coinvariant_lattice(w: &LatticeEndo) -> Vec<BigInt> {
    smith_invariants(&w.one_minus())
}

/// The A4 x A4 subsystem of E8 used for the order-5 elliptic element.
pub fn e8_a4a4_subsystem(rs: &RootSystem) -> Vec<Vec<i64>> {
    assert_eq!(rs.label(), "E8");
    let unit = |i: usize| {
        let mut v = vec![0i64; 8];
        v[i - 1] = 1;
        v
    };
    let theta: Vec<i64> = rs.highest_root().iter().map(|x| -x).collect();
    vec![unit(1), unit(3), unit(4), unit(2), unit(6), unit(7), unit(8), theta]
}

pub fn bigint_list_to_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.abs().to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_heights() {
        let a2 = RootSystem::new(DynkinType::A, 2).unwrap();
        assert_eq!(a2.num_roots(), 6);
        let mut h = a2.heights.clone();
        h.sort();
        assert_eq!(h, vec![-2, -1, -1, 1, 1, 2]);
        let e8 = RootSystem::new(DynkinType::E, 8).unwrap();
        assert_eq!(e8.num_roots(), 240);
        assert_eq!(e8.highest_root(), &[2, 3, 4, 6, 5, 4, 3, 2]);
        let g2 = RootSystem::new(DynkinType::G, 2).unwrap();
        assert_eq!(g2.num_roots(), 12);
        assert_eq!(g2.coxeter_number(), 6);
        assert_eq!(g2.highest_root(), &[3, 2]);
    }

    #[test]
    fn degrees() {
        let e6 = RootSystem::new(DynkinType::E, 6).unwrap();
        assert_eq!(e6.invariant_degrees(), vec![2, 5, 6, 8, 9, 12]);
        let e8 = RootSystem::new(DynkinType::E, 8).unwrap();
        assert_eq!(e8.invariant_degrees(), vec![2, 8, 12, 14, 18, 20, 24, 30]);
        let a2 = RootSystem::new(DynkinType::A, 2).unwrap();
        assert_eq!(a2.invariant_degrees(), vec![2, 3]);
        assert_eq!(e8.weyl_order(), BigInt::from(696729600u64));
    }

    #[test]
    fn invalid_type() {
        assert!(RootSystem::new(DynkinType::E, 5).is_err());
        assert!(RootSystem::new(DynkinType::C, 2).is_err());
    }

    #[test]
    fn automorphism_groups() {
        let d4 = RootSystem::new(DynkinType::D, 4).unwrap();
        assert_eq!(diagram_automorphisms(&d4).len(), 6);
        let e8 = RootSystem::new(DynkinType::E, 8).unwrap();
        assert_eq!(diagram_automorphisms(&e8).len(), 1);
        let a3 = RootSystem::new(DynkinType::A, 3).unwrap();
        assert_eq!(diagram_automorphisms(&a3).len(), 2);
        assert_eq!(canonical_outer(&d4, 3).unwrap().order, 3);
    }

    #[test]
    fn rho_check_pairs_to_heights() {
        let e8 = RootSystem::new(DynkinType::E, 8).unwrap();
        let rho = rho_check(&e8);
        assert_eq!(pair_coweight(&e8, e8.highest_root(), &rho), q(29));
    }

    #[test]
    fn a4a4_element() {
        let e8 = RootSystem::new(DynkinType::E, 8).unwrap();
        let w = subsystem_coxeter(&e8, &e8_a4a4_subsystem(&e8)).unwrap();
        assert_eq!(w.order(100), Some(5));
        assert_eq!(w.det_one_minus(), BigInt::from(25));
        assert_eq!(coinvariant_lattice(&w), vec![BigInt::from(5), BigInt::from(5)]);
    }
}
