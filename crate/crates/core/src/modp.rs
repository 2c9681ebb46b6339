//! Arithmetic modulo a word-sized prime, used to filter candidates quickly.
//!
//! Reduction never increases rank, so a mod-p rank is a lower bound for the
//! rank over the number field. Callers turn that into certificates.

use num_traits::{ToPrimitive, Zero};

use crate::scalars::{CycloScalar, Q};

#[derive(Clone, Debug)]
pub struct ModP {
    pub p: u64,
    /// the image of zeta_N, with N the modulus the prime was chosen for
    zeta_big: u64,
    big: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl ModP {
    /// Largest prime below 2^31 with p = 1 mod `modulus`, together with a primitive root of unity.
    pub fn for_conductor(modulus: u32) -> ModP {
        // work with a multiple of every conductor that can occur
        let big = num_integer::lcm(modulus.max(1), 120);
        let mut k = ((1u64 << 31) - 1) / big as u64;
        loop {
            let p = k * big as u64 + 1;
            if is_prime(p) {
                let g = primitive_root(p);
                let zeta_big = pow_mod(g, (p - 1) / big as u64, p);
                return ModP { p, zeta_big, big };
            }
            k -= 1;
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn from_q(&self, x: &Q) -> Option<u64> {
        let p = num_bigint::BigInt::from(self.p);
        let n = (x.numer() % &p + &p) % &p;
        let d = (x.denom() % &p + &p) % &p;
        if d.is_zero() {
            return None;
        }
        Some(self.mul(n.to_u64()?, self.inv(d.to_u64()?)))
    }

    pub fn zeta(&self, m: u32) -> Option<u64> {
        if self.big % m != 0 {
            return None;
        }
        Some(pow_mod(self.zeta_big, (self.big / m) as u64, self.p))
    }

    pub fn from_cyclo(&self, x: &CycloScalar) -> Option<u64> {
        let m = x.conductor();
        let z = self.zeta(m)?;
        let mut acc = 0u64;
        let mut zp = 1u64;
        for c in x.coeffs() {
            if !c.is_zero() {
                acc = self.add(acc, self.mul(self.from_q(c)?, zp));
            }
            zp = self.mul(zp, z);
        }
        Some(acc)
    }

    pub fn from_field<F: crate::scalars::Field>(&self, x: &F) -> Option<u64> {
        match x.to_rational() {
            Some(r) => self.from_q(&r),
            None => self.from_cyclo(&x.to_cyclo()),
        }
    }

    pub fn reduce_matrix<F: crate::scalars::Field>(&self, m: &crate::linalg::Matrix<F>) -> Option<Vec<Vec<u64>>> {
        let mut out = Vec::with_capacity(m.rows);
        for i in 0..m.rows {
            let mut r = Vec::with_capacity(m.cols);
            for x in m.row(i) {
                r.push(if x.is_zero() { 0 } else { self.from_field(x)? });
            }
            out.push(r);
        }
        Some(out)
    }

    pub fn rank(&self, rows: &[Vec<u64>]) -> usize {
        let mut a: Vec<Vec<u64>> = rows.to_vec();
        self.rank_in_place(&mut a)
    }

    pub fn rank_in_place(&self, a: &mut [Vec<u64>]) -> usize {
        let nrows = a.len();
        if nrows == 0 {
            return 0;
        }
        let ncols = a[0].len();
        let mut r = 0;
        for c in 0..ncols {
            let Some(piv) = (r..nrows).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, piv);
            let inv = self.inv(a[r][c]);
            for x in a[r].iter_mut() {
                *x = *x * inv % self.p;
            }
            let (top, rest) = a.split_at_mut(r + 1);
            let prow = &top[r];
            for row in rest.iter_mut() {
                let f = row[c];
                if f == 0 {
                    continue;
                }
                let nf = self.p - f;
                for j in c..ncols {
                    if prow[j] != 0 {
                        row[j] = (row[j] + nf * prow[j]) % self.p;
                    }
                }
            }
            r += 1;
            if r == nrows {
                break;
            }
        }
        r
    }

    pub fn matmul(&self, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.len();
        let k = b.len();
        let m = if k == 0 { 0 } else { b[0].len() };
        let mut out = vec![vec![0u64; m]; n];
        for i in 0..n {
            for t in 0..k {
                let x = a[i][t];
                if x == 0 {
                    continue;
                }
                let brow = &b[t];
                let orow = &mut out[i];
                for j in 0..m {
                    if brow[j] != 0 {
                        orow[j] = (orow[j] + x * brow[j]) % self.p;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero_matrix(a: &[Vec<u64>]) -> bool {
        a.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    /// Nilpotency of a square matrix by repeated squaring up to its size.
    pub fn is_nilpotent(&self, a: &[Vec<u64>]) -> bool {
        let n = a.len();
        if n == 0 {
            return true;
        }
        let mut pw = a.to_vec();
        let mut k = 1;
        while k < n {
            pw = self.matmul(&pw, &pw);
            k *= 2;
            if Self::is_zero_matrix(&pw) {
                return true;
            }
        }
        Self::is_zero_matrix(&pw)
    }
}

fn primitive_root(p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
        .expect("primes have primitive roots")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{qq, Field};

    #[test]
    fn zeta_images_have_right_order() {
        let f = ModP::for_conductor(5);
        let z = f.zeta(5).unwrap();
        assert_eq!(pow_mod(z, 5, f.p), 1);
        assert_ne!(z, 1);
        let x = CycloScalar::zeta(3).plus(&CycloScalar::rational(qq(1, 2)));
        let y = x.times(&x);
        let (a, b) = (f.from_cyclo(&x).unwrap(), f.from_cyclo(&y).unwrap());
        assert_eq!(f.mul(a, a), b);
    }

    #[test]
    fn rank_and_nilpotency() {
        let f = ModP::for_conductor(1);
        let a = vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]];
        assert_eq!(f.rank(&a), 2);
        assert!(f.is_nilpotent(&a));
        let b = vec![vec![0, 1], vec![1, 0]];
        assert!(!f.is_nilpotent(&b));
    }
}
