//! Principal Z/mZ-gradings, inner and pinned-outer, in an eigenbasis of theta.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chevalley::{AlgebraElement, ChevalleyAlgebra, StructureTable};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modp::ModP;
use crate::rootdata::{canonical_outer, DiagramAutomorphism, RootSystem};
use crate::scalars::{q, CycloScalar, Field, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingSpec {
    pub m: usize,
    pub outer: DiagramAutomorphism,
}

impl GradingSpec {
    pub fn new(m: usize, outer: DiagramAutomorphism) -> Result<Self> {
        if m == 0 || m % outer.order != 0 {
            return Err(Error::Domain(format!("outer order {} does not divide m = {m}", outer.order)));
        }
        Ok(GradingSpec { m, outer })
    }

    pub fn inner(rank: usize, m: usize) -> Self {
        GradingSpec { m, outer: DiagramAutomorphism::identity(rank) }
    }

    /// Standard outer automorphism of the requested order.
    pub fn with_outer_order(rs: &RootSystem, m: usize, order: usize) -> Result<Self> {
        GradingSpec::new(m, canonical_outer(rs, order)?)
    }

    pub fn outer_order(&self) -> usize {
        self.outer.order
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// orbit of simple indices; theta-eigen index j
    Cartan { orbit: Vec<usize>, j: usize },
    /// orbit of root indices; theta-eigen index j
    Root { orbit: Vec<usize>, j: usize },
}

/// A graded simple Lie algebra in a basis of theta-eigenvectors.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<F: Field> {
    pub chev: ChevalleyAlgebra,
    pub spec: GradingSpec,
    pub table: StructureTable<F>,
    pub degree: Vec<usize>,
    pub pieces: Vec<Vec<usize>>,
    pub kinds: Vec<BasisKind>,
    /// graded basis vector -> Chevalley coordinates
    pub to_chevalley: Vec<Vec<(usize, CycloScalar)>>,
    /// Chevalley basis vector -> graded coordinates
    pub from_chevalley: Vec<Vec<(usize, CycloScalar)>>,
    /// vartheta(e_alpha) = c_alpha e_{sigma alpha}
    pub theta_signs: Vec<i64>,
}

/// Either scalar field a grading can live over.
#[derive(Clone, Debug)]
pub enum Graded {
    Rational(GradedAlgebra<Q>),
    Cyclotomic(GradedAlgebra<CycloScalar>),
}

#[macro_export]
macro_rules! with_graded {
    ($g:expr, $ga:ident => $body:expr) => {
        match $g {
            $crate::grading::Graded::Rational($ga) => $body,
            $crate::grading::Graded::Cyclotomic($ga) => $body,
        }
    };
}

impl Graded {
    pub fn m(&self) -> usize {
        with_graded!(self, g => g.spec.m)
    }
    pub fn piece_dims(&self) -> Vec<usize> {
        with_graded!(self, g => g.piece_dims())
    }
    pub fn chev(&self) -> &ChevalleyAlgebra {
        with_graded!(self, g => &g.chev)
    }
    pub fn spec(&self) -> &GradingSpec {
        with_graded!(self, g => &g.spec)
    }
}

/// Sign function c_alpha making e_alpha -> c_alpha e_{sigma alpha} an automorphism.
pub fn outer_signs(chev: &ChevalleyAlgebra, sigma: &DiagramAutomorphism) -> Vec<i64> {
    let rs = &chev.root_system;
    let n = rs.num_roots();
    let npos = rs.num_positive();
    let mut c = vec![0i64; n];
    for sign in [1i64, -1] {
        // roots ordered by height, so decompositions reach earlier entries
        for a in 0..npos {
            let idx = if sign == 1 { a } else { rs.negative(a) };
            let root = &rs.roots[idx];
            if rs.heights[a] == 1 {
                c[idx] = 1;
                continue;
            }
            let mut done = false;
            for i in 0..rs.rank {
                let mut beta = root.clone();
                beta[i] -= sign;
                if let Some(b) = rs.root_index(&beta) {
                    let ai = if sign == 1 { rs.simple_index(i) } else { rs.negative(rs.simple_index(i)) };
                    let sai = rs.root_index(&sigma.apply_root(&rs.roots[ai])).unwrap();
                    let sb = rs.root_index(&sigma.apply_root(&rs.roots[b])).unwrap();
                    let n1 = chev.n(ai, b).expect("root sum");
                    let n2 = chev.n(sai, sb).expect("root sum");
                    c[idx] = c[b] * n2 / n1;
                    debug_assert_eq!(n2.abs(), n1.abs());
                    done = true;
                    break;
                }
            }
            assert!(done, "every non-simple root decomposes");
        }
    }
    c
}

fn theta_image(chev: &ChevalleyAlgebra, sigma: &DiagramAutomorphism, c: &[i64], i: usize) -> (usize, i64) {
    let l = chev.rank();
    if i < l {
        (sigma.perm[i], 1)
    } else {
        let a = i - l;
        let rs = &chev.root_system;
        let sa = rs.root_index(&sigma.apply_root(&rs.roots[a])).unwrap();
        (l + sa, c[a])
    }
}

/// Checks that vartheta preserves every basis bracket.
pub fn check_outer_automorphism(chev: &ChevalleyAlgebra, sigma: &DiagramAutomorphism, c: &[i64]) -> bool {
    let d = chev.dim;
    for i in 0..d {
        let (ti, ci) = theta_image(chev, sigma, c, i);
        for j in 0..d {
            let (tj, cj) = theta_image(chev, sigma, c, j);
            let lhs: BTreeMap<usize, Q> = chev
                .table
                .get(i, j)
                .iter()
                .map(|(k, v)| {
                    let (tk, ck) = theta_image(chev, sigma, c, *k);
                    (tk, v * q(ck))
                })
                .collect();
            let rhs: BTreeMap<usize, Q> =
                chev.table.get(ti, tj).iter().map(|(k, v)| (*k, v * q(ci * cj))).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn principal_grading(chev: &ChevalleyAlgebra, spec: &GradingSpec) -> Result<Graded> {
    if spec.outer.perm.len() != chev.rank() {
        return Err(Error::Domain("diagram automorphism has the wrong rank".into()));
    }
    if !crate::rootdata::diagram_automorphisms(&chev.root_system).contains(&spec.outer) {
        return Err(Error::Domain("permutation is not a diagram automorphism".into()));
    }
    if spec.m % spec.outer.order != 0 {
        return Err(Error::Domain("outer order must divide m".into()));
    }
    if spec.outer.order <= 2 {
        Ok(Graded::Rational(GradedAlgebra::build(chev, spec)?))
    } else {
        Ok(Graded::Cyclotomic(GradedAlgebra::build(chev, spec)?))
    }
}

impl<F: Field> GradedAlgebra<F> {
    pub fn build(chev: &ChevalleyAlgebra, spec: &GradingSpec) -> Result<Self> {
        let rs = &chev.root_system;
        let l = rs.rank;
        let m = spec.m;
        let e = spec.outer.order;
        let sigma = &spec.outer;
        let c = if e == 1 { vec![1; rs.num_roots()] } else { outer_signs(chev, sigma) };
        if e > 1 && !check_outer_automorphism(chev, sigma, &c) {
            return Err(Error::Invariant("outer automorphism does not preserve brackets".into()));
        }
        let mut kinds = Vec::new();
        let mut degree = Vec::new();
        let mut to_chev: Vec<Vec<(usize, CycloScalar)>> = Vec::new();
        let mut from_chev: Vec<Vec<(usize, CycloScalar)>> = vec![Vec::new(); chev.dim];

        // orbits: Cartan first, then roots
        let mut push_orbit = |orbit: Vec<usize>, offset: usize, signs: Vec<i64>, ht: i64, is_cartan: bool| -> Result<()> {
            let k = orbit.len();
            let mut a = vec![1i64; k + 1];
            for t in 0..k {
                a[t + 1] = a[t] * signs[t];
            }
            let big_c = a[k];
            let mut js = Vec::new();
            for j in 0..e {
                let ok = if big_c == 1 { (j * k) % e == 0 } else { e % 2 == 0 && (j * k) % e == e / 2 };
                if ok {
                    js.push(j);
                }
            }
            if js.len() != k {
                return Err(Error::Invariant("theta orbit does not split into eigenvectors".into()));
            }
            let mut p: Vec<Vec<CycloScalar>> = vec![vec![CycloScalar::zero(); k]; k];
            let first = to_chev.len();
            for (jj, &j) in js.iter().enumerate() {
                let mut vec = Vec::new();
                for t in 0..k {
                    let coef = CycloScalar::zeta_pow(e as u32, -((j * t) as i64)).times(&CycloScalar::int(a[t]));
                    p[t][jj] = coef.clone();
                    vec.push((offset + orbit[t], coef));
                }
                to_chev.push(vec);
                let deg = (ht + (j * (m / e)) as i64).rem_euclid(m as i64) as usize;
                degree.push(deg);
                kinds.push(if is_cartan {
                    BasisKind::Cartan { orbit: orbit.clone(), j }
                } else {
                    BasisKind::Root { orbit: orbit.clone(), j }
                });
            }
            let inv = Matrix::from_rows(p).inverse().ok_or_else(|| Error::Invariant("singular orbit block".into()))?;
            for t in 0..k {
                for jj in 0..k {
                    let v = inv.get(jj, t).clone();
                    if !v.is_zero() {
                        from_chev[offset + orbit[t]].push((first + jj, v));
                    }
                }
            }
            Ok(())
        };

        let mut seen = vec![false; l];
        for i in 0..l {
            if seen[i] {
                continue;
            }
            let mut orbit = vec![i];
            seen[i] = true;
            let mut cur = sigma.perm[i];
            while cur != i {
                seen[cur] = true;
                orbit.push(cur);
                cur = sigma.perm[cur];
            }
            let k = orbit.len();
            push_orbit(orbit, 0, vec![1; k], 0, true)?;
        }
        let mut seen = vec![false; rs.num_roots()];
        for a in 0..rs.num_roots() {
            if seen[a] {
                continue;
            }
            let mut orbit = vec![a];
            let mut signs = vec![c[a]];
            seen[a] = true;
            let mut cur = rs.root_index(&sigma.apply_root(&rs.roots[a])).unwrap();
            while cur != a {
                seen[cur] = true;
                orbit.push(cur);
                signs.push(c[cur]);
                cur = rs.root_index(&sigma.apply_root(&rs.roots[cur])).unwrap();
            }
            push_orbit(orbit, l, signs, rs.heights[a], false)?;
        }

        let dim = chev.dim;
        let mut pieces = vec![Vec::new(); m];
        for (i, &d) in degree.iter().enumerate() {
            pieces[d].push(i);
        }
        // structure constants in the graded basis
        let mut table: StructureTable<F> = StructureTable::new(dim);
        for u in 0..dim {
            for w in 0..dim {
                let mut acc: BTreeMap<usize, CycloScalar> = BTreeMap::new();
                for (a, ca) in &to_chev[u] {
                    for (b, cb) in &to_chev[w] {
                        let br = chev.table.get(*a, *b);
                        if br.is_empty() {
                            continue;
                        }
                        let s = ca.times(cb);
                        for (k, ck) in br {
                            let sk = s.times(&CycloScalar::rational(ck.clone()));
                            for (g, cg) in &from_chev[*k] {
                                let e = acc.entry(*g).or_insert_with(CycloScalar::zero);
                                *e = e.plus(&sk.times(cg));
                            }
                        }
                    }
                }
                let mut entry = Vec::new();
                for (g, v) in acc {
                    if !v.is_zero() {
                        let fv = F::from_cyclo(&v)
                            .ok_or_else(|| Error::Invariant("structure constant outside the scalar field".into()))?;
                        entry.push((g, fv));
                    }
                }
                table.set(u, w, entry);
            }
        }
        Ok(GradedAlgebra {
            chev: chev.clone(),
            spec: spec.clone(),
            table,
            degree,
            pieces,
            kinds,
            to_chevalley: to_chev,
            from_chevalley: from_chev,
            theta_signs: c,
        })
    }

    pub fn dim(&self) -> usize {
        self.degree.len()
    }

    pub fn m(&self) -> usize {
        self.spec.m
    }

    pub fn rank(&self) -> usize {
        self.chev.rank()
    }

    pub fn piece(&self, i: i64) -> &[usize] {
        &self.pieces[i.rem_euclid(self.m() as i64) as usize]
    }

    pub fn piece_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.len()).collect()
    }

    pub fn is_inner(&self) -> bool {
        self.spec.outer.order == 1
    }

    /// Graded coordinates to Chevalley coordinates.
    pub fn to_element(&self, v: &[F]) -> AlgebraElement {
        let mut out = vec![CycloScalar::zero(); self.dim()];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xc = x.to_cyclo();
            for (k, c) in &self.to_chevalley[i] {
                out[*k] = out[*k].plus(&xc.times(c));
            }
        }
        AlgebraElement { coords: out.into_iter().map(|c| c.reduce_conductor()).collect() }
    }

    pub fn from_element(&self, x: &AlgebraElement) -> Result<Vec<F>> {
        self.chev.check_dim(x)?;
        let mut out = vec![CycloScalar::zero(); self.dim()];
        for (k, xk) in x.coords.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for (g, c) in &self.from_chevalley[k] {
                out[*g] = out[*g].plus(&xk.times(c));
            }
        }
        out.iter()
            .map(|c| F::from_cyclo(&c.reduce_conductor()).ok_or_else(|| Error::Domain("element needs a larger field".into())))
            .collect()
    }

    /// Degree of a homogeneous vector, None when zero or inhomogeneous.
    pub fn degree_of(&self, v: &[F]) -> Option<usize> {
        let mut d = None;
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                match d {
                    None => d = Some(self.degree[i]),
                    Some(dd) if dd != self.degree[i] => return None,
                    _ => {}
                }
            }
        }
        d
    }

    pub fn in_piece(&self, v: &[F], i: i64) -> bool {
        let i = i.rem_euclid(self.m() as i64) as usize;
        v.iter().enumerate().all(|(k, x)| x.is_zero() || self.degree[k] == i)
    }

    /// Root height of a graded basis vector (0 on the Cartan part).
    pub fn height(&self, i: usize) -> i64 {
        match &self.kinds[i] {
            BasisKind::Cartan { .. } => 0,
            BasisKind::Root { orbit, .. } => self.chev.root_system.heights[orbit[0]],
        }
    }

    /// Basis indices of the fixed Cartan subalgebra t^vartheta.
    pub fn fixed_cartan(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| matches!(&self.kinds[i], BasisKind::Cartan { j: 0, .. }))
            .collect()
    }

    /// Every bracket of basis vectors lands in the piece of the summed degrees.
    pub fn graded_bracket_check(&self) -> bool {
        let m = self.m();
        for u in 0..self.dim() {
            for w in 0..self.dim() {
                let target = (self.degree[u] + self.degree[w]) % m;
                if self.table.get(u, w).iter().any(|(k, _)| self.degree[*k] != target) {
                    return false;
                }
            }
        }
        true
    }

    /// theta acts on every graded basis vector by zeta^degree, checked in Chevalley coordinates.
    pub fn theta_eigen_check(&self) -> bool {
        let chev = &self.chev;
        let m = self.m() as u32;
        let sigma = &self.spec.outer;
        let l = chev.rank();
        let rs = &chev.root_system;
        for (i, vec) in self.to_chevalley.iter().enumerate() {
            let z = CycloScalar::zeta_pow(m, self.degree[i] as i64);
            let mut image: BTreeMap<usize, CycloScalar> = BTreeMap::new();
            for (k, c) in vec {
                let (tk, ck) = theta_image(chev, sigma, &self.theta_signs, *k);
                let ht = if tk < l { 0 } else { rs.heights[tk - l] };
                let f = CycloScalar::zeta_pow(m, ht).times(&CycloScalar::int(ck)).times(c);
                let e = image.entry(tk).or_insert_with(CycloScalar::zero);
                *e = e.plus(&f);
            }
            for (k, c) in vec {
                let lhs = image.remove(k).unwrap_or_else(CycloScalar::zero);
                if lhs != z.times(c) {
                    return false;
                }
            }
            if image.values().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }

    /// Copy of the decomposition with one basis vector assigned to the wrong piece.
    pub fn corrupted(&self) -> Self {
        let mut g = self.clone();
        let i = g.pieces[1.min(g.m() - 1)][0];
        g.degree[i] = (g.degree[i] + 1) % g.m();
        g.pieces = vec![Vec::new(); g.m()];
        for (k, &d) in g.degree.iter().enumerate() {
            g.pieces[d].push(k);
        }
        g
    }

    pub fn modp(&self) -> ModP {
        ModP::for_conductor(num_integer::lcm(self.spec.m as u32, self.spec.outer.order as u32))
    }

    /// ad(x) restricted to piece `src` and projected to piece `dst`.
    pub fn ad_piece(&self, x: &[F], src: i64, dst: i64) -> Matrix<F> {
        self.table.ad_block(x, self.piece(src), self.piece(dst))
    }

    /// ad(x) composed with the graded structure, reduced mod p.
    pub fn ad_piece_modp(&self, x: &[F], src: i64, dst: i64, fp: &ModP) -> Option<Vec<Vec<u64>>> {
        self.table.ad_block_modp(x, self.piece(src), self.piece(dst), fp)
    }

    /// Vector in the graded basis with the given coordinates on piece i.
    pub fn embed_piece(&self, i: i64, coords: &[F]) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        for (k, &b) in self.piece(i).iter().enumerate() {
            v[b] = coords[k].clone();
        }
        v
    }

    pub fn restrict_piece(&self, v: &[F], i: i64) -> Vec<F> {
        self.piece(i).iter().map(|&b| v[b].clone()).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilityCertificate {
    pub witness: Option<AlgebraElement>,
    /// witness in graded coordinates of h_1, as exact strings
    pub witness_coords: Option<Vec<String>>,
    pub stabilizer_dim: usize,
    pub regular_semisimple: bool,
    pub seed: u64,
    pub trials: usize,
    pub verdict: String,
}

/// Random element of h_1 with integer coordinates in [-3, 3].
pub fn sample_piece<F: Field>(g: &GradedAlgebra<F>, i: i64, rng: &mut impl Rng) -> Vec<F> {
    let coords: Vec<F> = g.piece(i).iter().map(|_| F::from_i64(rng.gen_range(-3..=3))).collect();
    g.embed_piece(i, &coords)
}

struct TrialOutcome {
    stab: usize,
    witness: bool,
}

fn evaluate_trial<F: Field>(g: &GradedAlgebra<F>, v: &[F], fp: &ModP) -> TrialOutcome {
    let h0 = g.piece(0).len();
    let rank = g.rank();
    let dim = g.dim();
    let block = g.ad_piece_modp(v, 0, 1, fp);
    let full = g.table.ad_matrix_modp(v, fp);
    if let (Some(block), Some(full)) = (block, full) {
        let stab = h0 - fp.rank(&block);
        if stab != 0 {
            return TrialOutcome { stab, witness: false };
        }
        let r1 = fp.rank(&full);
        if r1 != dim - rank {
            return TrialOutcome { stab, witness: false };
        }
        // rank_p <= exact rank <= dim - rank, so both are certified
        let sq = fp.matmul(&full, &full);
        let r2 = fp.rank(&sq);
        return TrialOutcome { stab, witness: r2 == r1 };
    }
    // coefficients that do not reduce: decide exactly
    let block = g.ad_piece(v, 0, 1);
    let stab = h0 - block.rank();
    if stab != 0 {
        return TrialOutcome { stab, witness: false };
    }
    let a = g.table.ad_matrix(v);
    let r1 = a.rank();
    TrialOutcome { stab, witness: r1 == dim - rank && a.mul(&a).rank() == r1 }
}

pub fn stability_witness<F: Field>(g: &GradedAlgebra<F>, trials: usize, seed: u64) -> StabilityCertificate {
    let fp = g.modp();
    let trials = trials.max(1);
    let outcomes: Vec<(Vec<F>, TrialOutcome)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(t as u64));
            let v = sample_piece(g, 1, &mut rng);
            let out = evaluate_trial(g, &v, &fp);
            (v, out)
        })
        .collect();
    if let Some((v, _)) = outcomes.iter().find(|(_, o)| o.witness) {
        let coords = g.restrict_piece(v, 1).iter().map(|x| x.to_cyclo().to_string()).collect();
        return StabilityCertificate {
            witness: Some(g.to_element(v)),
            witness_coords: Some(coords),
            stabilizer_dim: 0,
            regular_semisimple: true,
            seed,
            trials,
            verdict: "stable".into(),
        };
    }
    let stab = outcomes.iter().map(|(_, o)| o.stab).min().unwrap_or(0);
    StabilityCertificate {
        witness: None,
        witness_coords: None,
        stabilizer_dim: stab,
        regular_semisimple: false,
        seed,
        trials,
        verdict: format!("no witness found after {trials} trials"),
    }
}

/// Multiplicities E(i, n) of ad(h)-eigenvalue n on piece i.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EigenTable {
    pub m: usize,
    pub counts: BTreeMap<(usize, i64), usize>,
}

impl EigenTable {
    pub fn get(&self, i: i64, n: i64) -> usize {
        let i = i.rem_euclid(self.m as i64) as usize;
        self.counts.get(&(i, n)).copied().unwrap_or(0)
    }

    /// Lowest-weight vectors (kernel of ad f) of weight -k in piece i.
    pub fn lowest(&self, i: i64, k: i64) -> usize {
        self.get(i, -k) - self.get(i - 1, -k - 2)
    }

    /// Highest-weight vectors (kernel of ad e) of weight k in piece i.
    pub fn highest(&self, i: i64, k: i64) -> usize {
        self.get(i, k) - self.get(i + 1, k + 2)
    }

    pub fn max_weight(&self) -> i64 {
        self.counts.keys().map(|(_, n)| n.abs()).max().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// dim z_{h_i}(e) for each i.
    pub fn centralizer_e(&self) -> Vec<usize> {
        let top = self.max_weight();
        (0..self.m as i64).map(|i| (0..=top).map(|k| self.highest(i, k)).sum()).collect()
    }

    /// dim z_{h_i}(f) for each i.
    pub fn centralizer_f(&self) -> Vec<usize> {
        let top = self.max_weight();
        (0..self.m as i64).map(|i| (0..=top).map(|k| self.lowest(i, k)).sum()).collect()
    }

    /// Every lowest-weight vector as (eigenvalue, degree).
    pub fn lowest_vectors(&self) -> Vec<(i64, usize)> {
        let top = self.max_weight();
        let mut out = Vec::new();
        for i in 0..self.m {
            for k in 0..=top {
                for _ in 0..self.lowest(i as i64, k) {
                    out.push((-k, i));
                }
            }
        }
        out
    }

    pub fn eigenvalue_multiset(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for ((_, n), c) in &self.counts {
            *out.entry(*n).or_insert(0) += c;
        }
        out
    }
}

/// Eigen table for a Cartan element given by its values alpha_i(h) on simple roots.
pub fn eigen_table_for_cartan<F: Field>(g: &GradedAlgebra<F>, simple_values: &[i64]) -> EigenTable {
    let rs = &g.chev.root_system;
    let mut counts = BTreeMap::new();
    for (i, kind) in g.kinds.iter().enumerate() {
        let n = match kind {
            BasisKind::Cartan { .. } => 0,
            BasisKind::Root { orbit, .. } => rs.roots[orbit[0]].iter().zip(simple_values).map(|(a, b)| a * b).sum(),
        };
        *counts.entry((g.degree[i], n)).or_insert(0) += 1;
    }
    EigenTable { m: g.m(), counts }
}

/// Degrees of the basic invariants of the little quotient, read off the
/// principal slice: p_d survives exactly when the lowest-weight vector of
/// weight -2(d-1) of the principal sl2 sits in degree 1.
pub fn invariant_degrees_of_b<F: Field>(g: &GradedAlgebra<F>) -> Vec<i64> {
    let et = eigen_table_for_cartan(g, &vec![2; g.rank()]);
    let mut out = Vec::new();
    for (n, deg) in et.lowest_vectors() {
        if deg == 1 % g.m() {
            out.push(1 - n / 2);
        }
    }
    out.sort();
    out
}

/// All degrees with their sigma-weight on the full invariant quotient,
/// in the vector convention (2d, 1 - k mod m).
pub fn ambient_base_weights<F: Field>(g: &GradedAlgebra<F>) -> Vec<(i64, i64)> {
    let et = eigen_table_for_cartan(g, &vec![2; g.rank()]);
    let m = g.m() as i64;
    let mut out: Vec<(i64, i64)> =
        et.lowest_vectors().into_iter().map(|(n, k)| (2 - n, (1 - k as i64).rem_euclid(m))).collect();
    out.sort();
    out
}

pub fn dimension_identity_check<F: Field>(g: &GradedAlgebra<F>) -> bool {
    g.piece(1).len() == g.piece(0).len() + invariant_degrees_of_b(g).len()
}

/// For x in h_{-1}: rank of ad(x) on h_n equals its rank on h_{1-n}, for every n.
pub fn centralizer_balance_check<F: Field>(g: &GradedAlgebra<F>, x: &[F]) -> bool {
    let m = g.m() as i64;
    (0..m).all(|n| g.ad_piece(x, n, n - 1).rank() == g.ad_piece(x, 1 - n, -n).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::DynkinType;

    fn graded(t: DynkinType, l: usize, m: usize, e: usize) -> Graded {
        let rs = RootSystem::new(t, l).unwrap();
        let chev = ChevalleyAlgebra::new(&rs);
        let spec = GradingSpec::with_outer_order(&rs, m, e).unwrap();
        principal_grading(&chev, &spec).unwrap()
    }

    #[test]
    fn inner_dims() {
        assert_eq!(graded(DynkinType::F, 4, 2, 1).piece_dims(), vec![24, 28]);
        assert_eq!(graded(DynkinType::A, 2, 3, 1).piece_dims(), vec![2, 3, 3]);
    }

    #[test]
    fn outer_gradings_are_consistent() {
        for (t, l, m, e) in [
            (DynkinType::A, 2, 2, 2),
            (DynkinType::A, 3, 2, 2),
            (DynkinType::D, 4, 3, 3),
            (DynkinType::D, 5, 2, 2),
            (DynkinType::E, 6, 2, 2),
            (DynkinType::E, 6, 4, 2),
        ] {
            let g = graded(t, l, m, e);
            with_graded!(&g, ga => {
                assert!(ga.graded_bracket_check(), "{t}{l}/{m}");
                assert!(ga.theta_eigen_check(), "{t}{l}/{m}");
                assert!(!ga.corrupted().graded_bracket_check());
            });
        }
    }

    #[test]
    fn degrees_of_b() {
        let g = graded(DynkinType::E, 6, 2, 2);
        with_graded!(&g, ga => assert_eq!(invariant_degrees_of_b(ga), vec![2, 5, 6, 8, 9, 12]));
        let g = graded(DynkinType::E, 6, 4, 2);
        with_graded!(&g, ga => assert_eq!(invariant_degrees_of_b(ga), vec![8, 12]));
        let g = graded(DynkinType::D, 4, 3, 3);
        with_graded!(&g, ga => assert_eq!(invariant_degrees_of_b(ga), vec![4, 6]));
        let g = graded(DynkinType::F, 4, 2, 1);
        with_graded!(&g, ga => {
            assert_eq!(invariant_degrees_of_b(ga), vec![2, 6, 8, 12]);
            assert!(dimension_identity_check(ga));
        });
    }

    #[test]
    fn witnesses() {
        let g = graded(DynkinType::A, 2, 3, 1);
        with_graded!(&g, ga => assert!(stability_witness(ga, 16, 1).witness.is_some()));
        let g = graded(DynkinType::A, 2, 2, 1);
        with_graded!(&g, ga => {
            let c = stability_witness(ga, 64, 1);
            assert!(c.witness.is_none());
            assert_eq!(c.stabilizer_dim, 1);
        });
        let g = graded(DynkinType::D, 4, 3, 3);
        with_graded!(&g, ga => assert!(stability_witness(ga, 16, 1).witness.is_some()));
    }
}
