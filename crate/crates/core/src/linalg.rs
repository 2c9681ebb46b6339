//! Dense exact linear algebra over a `Field`, plus integer Smith normal form.
//!
//! Rational matrices are cleared of denominators and eliminated fraction-free
//! (Bareiss); other fields use plain Gauss-Jordan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalars::{Field, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.into_iter().flatten().collect::<Vec<_>>();
        assert_eq!(data.len(), r * c, "ragged rows");
        Matrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.minus(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.times(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.plus(self.get(i, i));
        }
        t
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    fn all_rational(&self) -> Option<Vec<Vec<Q>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut r = Vec::with_capacity(self.cols);
            for x in self.row(i) {
                r.push(x.to_rational()?);
            }
            out.push(r);
        }
        Some(out)
    }

    /// Row echelon form with pivot columns. Rational input goes through Bareiss.
    pub fn echelon(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        if let Some(qrows) = self.all_rational() {
            let ints = clear_denominators(&qrows);
            let (ech, piv) = bareiss_echelon(ints, self.cols);
            let rows = ech
                .into_iter()
                .map(|r| r.into_iter().map(|x| F::from_rational(&Q::from_integer(x))).collect())
                .collect();
            return (rows, piv);
        }
        gauss_echelon(self.to_rows(), self.cols)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.echelon().1.len()
    }

    /// Basis of the right null space {v : A v = 0}.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        if self.rows == 0 {
            return (0..self.cols)
                .map(|j| {
                    let mut v = vec![F::zero(); self.cols];
                    v[j] = F::one();
                    v
                })
                .collect();
        }
        let (ech, piv) = self.echelon();
        kernel_from_echelon(&ech, &piv, self.cols)
    }

    /// A particular solution of A x = b, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.to_rows();
        for (row, bi) in aug.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        let augm = Matrix::from_rows(aug);
        let (ech, piv) = augm.echelon();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        // back substitution
        let mut x = vec![F::zero(); self.cols];
        for (r, &c) in piv.iter().enumerate().rev() {
            let row = &ech[r];
            let mut acc = row[self.cols].clone();
            for j in (c + 1)..self.cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc = acc.minus(&row[j].times(&x[j]));
                }
            }
            x[c] = acc.divided(&row[c]).expect("pivot is nonzero");
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug: Vec<Vec<F>> = self.to_rows();
        for (i, row) in aug.iter_mut().enumerate() {
            for j in 0..n {
                row.push(if i == j { F::one() } else { F::zero() });
            }
        }
        let (rows, piv) = gauss_jordan(aug, n);
        if piv.len() < n || piv.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        Some(Matrix::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }
}

pub fn clear_denominators(rows: &[Vec<Q>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free row echelon form. Rows are primitive-reduced to limit growth.
pub fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = a.len();
    let mut piv = Vec::new();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // choose the smallest nonzero pivot to keep entries short
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let pv = prow[c].clone();
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                if pv != prev {
                    for x in row[c..].iter_mut() {
                        if !x.is_zero() {
                            *x = &*x * &pv / &prev;
                        }
                    }
                }
                continue;
            }
            let f = row[c].clone();
            for j in c..row.len() {
                let v = &row[j] * &pv - &f * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pv;
        piv.push(c);
        r += 1;
    }
    a.truncate(r);
    for row in a.iter_mut() {
        let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in row.iter_mut() {
                *x = &*x / &g;
            }
        }
    }
    (a, piv)
}

fn gauss_echelon<F: Field>(mut a: Vec<Vec<F>>, ncols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let nrows = a.len();
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inverse().expect("nonzero pivot");
        let prow: Vec<F> = a[r].iter().map(|x| x.times(&inv)).collect();
        for row in a[r + 1..].iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..row.len() {
                if !prow[j].is_zero() {
                    row[j] = row[j].minus(&f.times(&prow[j]));
                }
            }
        }
        a[r] = prow;
        piv.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, piv)
}

fn gauss_jordan<F: Field>(a: Vec<Vec<F>>, ncols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let (mut a, piv) = gauss_echelon(a, ncols);
    for (r, &c) in piv.iter().enumerate().rev() {
        for i in 0..r {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let width = a[i].len();
            for j in c..width {
                if !a[r][j].is_zero() {
                    let v = f.times(&a[r][j]);
                    a[i][j] = a[i][j].minus(&v);
                }
            }
        }
    }
    (a, piv)
}

fn kernel_from_echelon<F: Field>(ech: &[Vec<F>], piv: &[usize], ncols: usize) -> Vec<Vec<F>> {
    let is_piv: Vec<bool> = (0..ncols).map(|c| piv.contains(&c)).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_piv[c]) {
        let mut x = vec![F::zero(); ncols];
        x[free] = F::one();
        for (r, &c) in piv.iter().enumerate().rev() {
            let row = &ech[r];
            let mut acc = F::zero();
            for j in (c + 1)..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc = acc.minus(&row[j].times(&x[j]));
                }
            }
            x[c] = acc.divided(&row[c]).expect("pivot is nonzero");
        }
        basis.push(x);
    }
    basis
}

/// Rank of a list of vectors.
pub fn span_rank<F: Field>(vecs: &[Vec<F>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_rows(vecs.to_vec()).rank()
}

/// Echelon basis of the span of the given vectors.
pub fn span_basis<F: Field>(vecs: &[Vec<F>]) -> Vec<Vec<F>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    Matrix::from_rows(vecs.to_vec()).echelon().0
}

/// Determinant of a square integer matrix (Bareiss).
pub fn det_int(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Invariant factors of an integer matrix; zero entries encode free rank.
/// The returned list has min(rows, cols) entries, unit factors omitted.
pub fn smith_invariants(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        // bring the smallest nonzero entry of the lower-right block to (t, t)
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                // rest is zero
                for _ in t..n {
                    diag.push(BigInt::zero());
                }
                return finish_smith(diag);
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let mut done = true;
            for i in t + 1..rows {
                let qt = m[i][t].div_floor(&m[t][t]);
                if !qt.is_zero() {
                    for j in t..cols {
                        let v = &qt * &m[t][j];
                        m[i][j] -= v;
                    }
                }
                if !m[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let qt = m[t][j].div_floor(&m[t][t]);
                if !qt.is_zero() {
                    for i in t..rows {
                        let v = &qt * &m[i][t];
                        m[i][j] -= v;
                    }
                }
                if !m[t][j].is_zero() {
                    done = false;
                }
            }
            if !done {
                continue;
            }
            // divisibility condition
            let mut fixed = true;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&m[i][j] % &m[t][t]).is_zero() {
                        for k in t..cols {
                            let v = m[i][k].clone();
                            m[t][k] += v;
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        diag.push(m[t][t].abs());
    }
    finish_smith(diag)
}

fn finish_smith(diag: Vec<BigInt>) -> Vec<BigInt> {
    diag.into_iter().filter(|d| !d.is_one()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{q, CycloScalar};

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn rank_kernel_solve() {
        let a = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).iter().all(|x| Field::is_zero(x)));
        let x = a.solve(&[q(1), q(2), q(0)]).unwrap();
        assert_eq!(a.apply(&x), vec![q(1), q(2), q(0)]);
        assert!(a.solve(&[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn bareiss_rank_full() {
        let rows: Vec<Vec<Q>> = vec![
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 1],
            vec![-2, -3, -4, -6, -5, -4, -3, -2],
        ]
        .into_iter()
        .map(|r| r.into_iter().map(q).collect())
        .collect();
        let m = Matrix::from_rows(rows);
        assert_eq!(m.rank(), 8);
    }

    #[test]
    fn inverse_over_cyclotomics() {
        let z = CycloScalar::zeta(3);
        let one = CycloScalar::one();
        let a = Matrix::from_rows(vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn smith_small() {
        let a: Vec<Vec<BigInt>> = vec![
            vec![2.into(), 4.into(), 4.into()],
            vec![(-6).into(), 6.into(), 12.into()],
            vec![10.into(), (-4).into(), (-16).into()],
        ];
        let f = smith_invariants(&a);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(det_int(&a).abs(), BigInt::from(144));
    }
}
