//! Exact scalars: rationals and cyclotomic numbers on the power basis.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// Minimal field interface used by the linear algebra layer.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &Q) -> Self;
    fn to_rational(&self) -> Option<Q>;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn to_cyclo(&self) -> CycloScalar;
    fn from_cyclo(c: &CycloScalar) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn divided(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|r| self.times(&r))
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Q::from_integer(BigInt::from(n))
    }
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
    fn to_rational(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_cyclo(&self) -> CycloScalar {
        CycloScalar::rational(self.clone())
    }
    fn from_cyclo(c: &CycloScalar) -> Option<Self> {
        c.to_rational()
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as "p/q", always with an explicit denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Q::new(n, d))
}

// ---------------------------------------------------------------------------
// cyclotomic tables

pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    // x^m - 1 divided by every Phi_d for proper divisors d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let den = cyclotomic_poly(d);
        num = exact_div(&num, &den);
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quo = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd] / den[dd];
        quo[k] = c;
        for (i, &b) in den.iter().enumerate() {
            rem[k + i] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

struct CycloTable {
    phi: usize,
    /// reduction of x^k modulo Phi_m for 0 <= k < m
    powers: Vec<Vec<i64>>,
}

fn table(m: u32) -> Arc<CycloTable> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&m) {
        return t.clone();
    }
    let phi_poly = cyclotomic_poly(m);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    if phi == 0 {
        unreachable!()
    }
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1];
        }
        for i in 0..phi {
            next[i] -= top * phi_poly[i];
        }
        cur = next;
    }
    let t = Arc::new(CycloTable { phi, powers });
    cache.lock().unwrap().insert(m, t.clone());
    t
}

// ---------------------------------------------------------------------------

/// An element of Q(zeta_m) stored on the power basis modulo Phi_m.
#[derive(Clone)]
pub struct CycloScalar {
    m: u32,
    coeffs: Vec<Q>,
}

impl CycloScalar {
    pub fn rational(x: Q) -> Self {
        CycloScalar { m: 1, coeffs: vec![x] }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(q(n))
    }

    /// zeta_m^k.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        let t = table(m);
        let k = k.rem_euclid(m as i64) as usize;
        CycloScalar { m, coeffs: t.powers[k].iter().map(|&c| q(c)).collect() }.shrink_trivial()
    }

    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// Canonical representative of sum c_i zeta^i modulo Phi_m.
    pub fn normalize(poly: &[Q], m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("conductor must be positive".into()));
        }
        let t = table(m);
        let mut coeffs = vec![<Q as Zero>::zero(); t.phi];
        for (i, c) in poly.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let row = &t.powers[i % m as usize];
            for (j, &r) in row.iter().enumerate() {
                if r != 0 {
                    coeffs[j] += c * q(r);
                }
            }
        }
        Ok(CycloScalar { m, coeffs }.shrink_trivial())
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    fn shrink_trivial(self) -> Self {
        if self.m == 2 {
            CycloScalar { m: 1, coeffs: self.coeffs }
        } else {
            self
        }
    }

    /// Re-expresses the value in conductor `big`, which must be a multiple of the current one.
    pub fn embed(&self, big: u32) -> Self {
        if big == self.m {
            return self.clone();
        }
        assert!(big % self.m == 0, "conductor {} does not divide {}", self.m, big);
        let t = table(big);
        let step = (big / self.m) as usize;
        let mut coeffs = vec![<Q as Zero>::zero(); t.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let row = &t.powers[(i * step) % big as usize];
            for (j, &r) in row.iter().enumerate() {
                if r != 0 {
                    coeffs[j] += c * q(r);
                }
            }
        }
        CycloScalar { m: big, coeffs }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self, u32) {
        if a.m == b.m {
            return (a.clone(), b.clone(), a.m);
        }
        let l = a.m.lcm(&b.m);
        (a.embed(l), b.embed(l), l)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// Smallest conductor whose field contains the value.
    pub fn reduce_conductor(&self) -> Self {
        if self.m <= 2 || self.is_rational() {
            return CycloScalar::rational(self.coeffs[0].clone());
        }
        for d in divisors(self.m) {
            if d == self.m {
                break;
            }
            if d % 4 == 2 {
                continue;
            }
            if let Some(v) = self.try_descend(d) {
                return v;
            }
        }
        self.clone()
    }

    fn try_descend(&self, d: u32) -> Option<Self> {
        let pd = euler_phi(d) as usize;
        let big = table(self.m);
        let step = (self.m / d) as usize;
        // columns: images of zeta_d^j
        let rows = big.phi;
        let mut aug: Vec<Vec<Q>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Q> = (0..pd)
                    .map(|j| q(big.powers[(j * step) % self.m as usize][r]))
                    .collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let sol = solve_augmented(&mut aug, pd)?;
        Some(CycloScalar { m: d, coeffs: sol }.shrink_trivial())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let r = self.reduce_conductor();
        serde_json::json!({
            "m": r.m,
            "coeffs": r.coeffs.iter().map(fmt_q).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let m = v["m"].as_u64().ok_or_else(|| Error::Parse("missing m".into()))? as u32;
        let arr = v["coeffs"].as_array().ok_or_else(|| Error::Parse("missing coeffs".into()))?;
        let coeffs: Result<Vec<Q>> = arr
            .iter()
            .map(|c| parse_q(c.as_str().unwrap_or("")))
            .collect();
        let coeffs = coeffs?;
        if m == 0 || coeffs.len() != euler_phi(m) as usize {
            return Err(Error::Parse("coefficient count does not match conductor".into()));
        }
        Ok(CycloScalar { m, coeffs }.shrink_trivial())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }

    fn mul_same(&self, rhs: &Self) -> Self {
        let m = self.m;
        if m == 1 {
            return CycloScalar::rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        let t = table(m);
        let phi = t.phi;
        let mut conv = vec![<Q as Zero>::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if Zero::is_zero(b) {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut out: Vec<Q> = conv[..phi].to_vec();
        for (k, c) in conv.iter().enumerate().skip(phi) {
            if Zero::is_zero(c) {
                continue;
            }
            let row = &t.powers[k % m as usize];
            for (j, &r) in row.iter().enumerate() {
                if r != 0 {
                    out[j] += c * q(r);
                }
            }
        }
        CycloScalar { m, coeffs: out }
    }

    /// Galois conjugate zeta -> zeta^k, gcd(k, m) = 1.
    pub fn galois(&self, k: i64) -> Self {
        let poly: Vec<Q> = {
            let mut v = vec![<Q as Zero>::zero(); self.m as usize];
            for (i, c) in self.coeffs.iter().enumerate() {
                let e = ((i as i64) * k).rem_euclid(self.m as i64) as usize;
                v[e] += c;
            }
            v
        };
        CycloScalar::normalize(&poly, self.m).expect("positive conductor")
    }
}

fn solve_augmented(aug: &mut [Vec<Q>], ncols: usize) -> Option<Vec<Q>> {
    let nrows = aug.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !Zero::is_zero(&aug[i][c])) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !Zero::is_zero(&aug[i][c]) {
                let f = aug[i][c].clone();
                for j in 0..=ncols {
                    let v = &aug[r][j] * &f;
                    aug[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| !Zero::is_zero(&row[ncols])) {
        return None;
    }
    let mut sol = vec![<Q as Zero>::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = aug[i][ncols].clone();
    }
    Some(sol)
}

impl Field for CycloScalar {
    fn to_cyclo(&self) -> CycloScalar {
        self.clone()
    }
    fn from_cyclo(c: &CycloScalar) -> Option<Self> {
        Some(c.clone())
    }
    fn zero() -> Self {
        CycloScalar::rational(<Q as Zero>::zero())
    }
    fn one() -> Self {
        CycloScalar::rational(<Q as One>::one())
    }
    fn from_i64(n: i64) -> Self {
        CycloScalar::int(n)
    }
    fn from_rational(x: &Q) -> Self {
        CycloScalar::rational(x.clone())
    }
    fn to_rational(&self) -> Option<Q> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn plus(&self, rhs: &Self) -> Self {
        if rhs.m == 1 && Zero::is_zero(&rhs.coeffs[0]) {
            return self.clone();
        }
        if self.m == 1 && Zero::is_zero(&self.coeffs[0]) {
            return rhs.clone();
        }
        if self.m == 1 && rhs.m != 1 {
            let mut c = rhs.coeffs.clone();
            c[0] += &self.coeffs[0];
            return CycloScalar { m: rhs.m, coeffs: c };
        }
        if rhs.m == 1 {
            let mut c = self.coeffs.clone();
            c[0] += &rhs.coeffs[0];
            return CycloScalar { m: self.m, coeffs: c };
        }
        let (a, b, m) = CycloScalar::common(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycloScalar { m, coeffs }
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.m == 1 {
            let s = &self.coeffs[0];
            return CycloScalar { m: rhs.m, coeffs: rhs.coeffs.iter().map(|c| c * s).collect() };
        }
        if rhs.m == 1 {
            let s = &rhs.coeffs[0];
            return CycloScalar { m: self.m, coeffs: self.coeffs.iter().map(|c| c * s).collect() };
        }
        let (a, b, _) = CycloScalar::common(self, rhs);
        a.mul_same(&b)
    }
    fn negated(&self) -> Self {
        CycloScalar { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn inverse(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        if self.is_rational() {
            return Some(CycloScalar::rational(self.coeffs[0].recip()));
        }
        // solve (multiplication by self) * y = 1 on the power basis
        let m = self.m;
        let phi = self.coeffs.len();
        let cols: Vec<CycloScalar> = (0..phi)
            .map(|j| self.mul_same(&CycloScalar::zeta_pow_raw(m, j)))
            .collect();
        let mut aug: Vec<Vec<Q>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Q> = cols.iter().map(|c| c.coeffs[r].clone()).collect();
                row.push(if r == 0 { <Q as One>::one() } else { <Q as Zero>::zero() });
                row
            })
            .collect();
        let sol = solve_augmented(&mut aug, phi)?;
        Some(CycloScalar { m, coeffs: sol })
    }
}

impl CycloScalar {
    fn zeta_pow_raw(m: u32, k: usize) -> Self {
        let t = table(m);
        CycloScalar { m, coeffs: t.powers[k % m as usize].iter().map(|&c| q(c)).collect() }
    }

    pub fn checked_inverse(&self) -> Result<Self> {
        self.inverse().ok_or(Error::DivisionByZero)
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = CycloScalar::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloScalar {}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduce_conductor();
        if r.m == 1 {
            return write!(f, "{}", fmt_q(&r.coeffs[0]));
        }
        let mut parts = Vec::new();
        for (i, c) in r.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let term = match i {
                0 => fmt_q(c),
                1 => format!("{}*z{}", fmt_q(c), r.m),
                _ => format!("{}*z{}^{}", fmt_q(c), r.m, i),
            };
            parts.push(term);
        }
        if parts.is_empty() {
            write!(f, "0/1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for CycloScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        CycloScalar::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Rounds a rational that is known to be an integer.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn zeta_squared_mod_four() {
        let z = CycloScalar::zeta(4);
        assert_eq!(z.times(&z), CycloScalar::int(-1));
    }

    #[test]
    fn fourth_power_mod_five() {
        let z4 = CycloScalar::zeta_pow(5, 4);
        let expect = CycloScalar::normalize(&[q(-1), q(-1), q(-1), q(-1)], 5).unwrap();
        assert_eq!(z4, expect);
    }

    #[test]
    fn inverse_one_minus_zeta3() {
        let x = CycloScalar::one().minus(&CycloScalar::zeta(3));
        let inv = x.inverse().unwrap();
        let expect = CycloScalar::normalize(&[qq(1, 3), <Q as Zero>::zero(), qq(-1, 3)], 3).unwrap();
        assert_eq!(inv, expect);
        assert!(inv.times(&x).is_one());
    }

    #[test]
    fn cross_conductor() {
        let a = CycloScalar::zeta(3);
        let b = CycloScalar::zeta(5);
        let c = a.times(&b);
        assert_eq!(c, CycloScalar::zeta_pow(15, 5 + 3));
        assert_eq!(c.pow(15), CycloScalar::one());
        // zeta_6 lives in Q(zeta_3)
        let z6 = CycloScalar::zeta(6);
        assert_eq!(z6.reduce_conductor().conductor(), 3);
        assert_eq!(z6, CycloScalar::zeta_pow(3, 2).negated());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(CycloScalar::zero().checked_inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn json_round_trip() {
        let x = CycloScalar::normalize(&[qq(1, 2), q(3)], 5).unwrap();
        let v = x.to_json();
        assert_eq!(v["m"], 5);
        assert_eq!(CycloScalar::from_json(&v).unwrap(), x);
    }
}
