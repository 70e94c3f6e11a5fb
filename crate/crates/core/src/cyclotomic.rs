//! Arithmetic in `Z[q]`, `q` a primitive `p`-th root of unity, stored in the
//! basis `1, h, ..., h^(p-2)` with `h = q - 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::is_prime;

pub const MAX_PRIME: u32 = 31;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

pub fn check_prime(p: u32) -> Result<()> {
    if p % 2 == 0 || !is_prime(p as u64) || p > MAX_PRIME {
        return Err(Error::NotPrime(p as u64));
    }
    Ok(())
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Self {
        CyclotomicInt { p, coeffs: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        let mut a = Self::zero(p);
        a.coeffs[0] = n.into();
        a
    }

    /// `h^k`, reduced.
    pub fn h_pow(p: u32, k: u32) -> Self {
        let mut c = vec![BigInt::zero(); k as usize + 1];
        c[k as usize] = BigInt::one();
        Self::from_h_poly(p, c)
    }

    /// Build from h-basis coefficients; the vector is reduced if longer than `p - 1`.
    pub fn from_h_poly(p: u32, mut c: Vec<BigInt>) -> Self {
        let n = (p - 1) as usize;
        // h^(p-1) = -sum_{j<p-1} C(p, j+1) h^j
        let red: Vec<BigInt> = (0..n).map(|j| binomial(p, j as u32 + 1)).collect();
        while c.len() > n {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = c.len() - n;
            for (j, r) in red.iter().enumerate() {
                c[base + j] -= &top * r;
            }
        }
        c.resize(n, BigInt::zero());
        CyclotomicInt { p, coeffs: c }
    }

    pub fn from_h_coeffs(p: u32, c: &[i64]) -> Self {
        Self::from_h_poly(p, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `q^e`.
    pub fn from_q_power(p: u32, e: i64) -> Self {
        let e = e.rem_euclid(p as i64) as u32;
        Self::from_h_poly(p, (0..=e).map(|j| binomial(e, j)).collect())
    }

    /// Element given by coefficients of `1, q, q^2, ...` (any length).
    pub fn from_q_poly(p: u32, c: &[BigInt]) -> Self {
        let mut folded = vec![BigInt::zero(); p as usize];
        for (i, x) in c.iter().enumerate() {
            folded[i % p as usize] += x;
        }
        // (1+h)^i expanded
        let mut out = vec![BigInt::zero(); p as usize];
        for (i, x) in folded.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..=i {
                out[j] += x * binomial(i as u32, j as u32);
            }
        }
        Self::from_h_poly(p, out)
    }

    /// Coefficients of `1, q, ..., q^(p-2)`.
    pub fn to_q_poly(&self) -> Vec<BigInt> {
        // (q-1)^j expanded
        let n = self.coeffs.len();
        let mut out = vec![BigInt::zero(); n];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for i in 0..=j {
                let b = binomial(j as u32, i as u32);
                if (j - i) % 2 == 0 {
                    out[i] += a * b;
                } else {
                    out[i] -= a * b;
                }
            }
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInt { p: self.p, coeffs: self.coeffs.iter().map(|x| x * k).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under `q -> q^c`.
    pub fn galois(&self, c: i64) -> Self {
        let qp = self.to_q_poly();
        let mut out = vec![BigInt::zero(); self.p as usize];
        for (i, x) in qp.iter().enumerate() {
            let e = ((i as i64) * c).rem_euclid(self.p as i64) as usize;
            out[e] += x;
        }
        Self::from_q_poly(self.p, &out)
    }

    /// Image under `q -> q^(-1)`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// `p / h`, used to divide elements whose constant term is a multiple of `p`.
    fn p_over_h(p: u32) -> Vec<BigInt> {
        let n = (p - 1) as usize;
        let mut c: Vec<BigInt> = (1..n).map(|j| -binomial(p, j as u32 + 1)).collect();
        c.push(-BigInt::one());
        c
    }

    /// `self / h` when exact.
    pub fn div_h(&self) -> Option<Self> {
        let pb = BigInt::from(self.p);
        let (m, r) = self.coeffs[0].div_rem(&pb);
        if !r.is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let mut out: Vec<BigInt> = self.coeffs[1..].to_vec();
        out.push(BigInt::zero());
        if !m.is_zero() {
            for (j, x) in Self::p_over_h(self.p).iter().enumerate() {
                out[j] += &m * x;
            }
        }
        debug_assert_eq!(out.len(), n);
        Some(CyclotomicInt { p: self.p, coeffs: out })
    }

    /// h-adic valuation; `None` stands for infinity.
    pub fn v_h(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut a = self.clone();
        let mut v = 0;
        while let Some(b) = a.div_h() {
            a = b;
            v += 1;
        }
        Some(v)
    }

    /// `(a_j mod p^k, p^k)` with `j = d mod (p-1)`, `k = d div (p-1) + 1`.
    pub fn pi_d(&self, d: u32) -> (BigInt, BigInt) {
        let n = self.p - 1;
        let j = (d % n) as usize;
        let k = d / n + 1;
        let modulus = BigInt::from(self.p).pow(k);
        (self.coeffs[j].mod_floor(&modulus), modulus)
    }

    /// Multiplication-by-self matrix in the h-basis (column j = self * h^j).
    fn mult_matrix(&self) -> Vec<Vec<BigRational>> {
        let n = self.coeffs.len();
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            cols.push(cur.coeffs.clone());
            let mut shifted = vec![BigInt::zero()];
            shifted.extend(cur.coeffs.iter().cloned());
            cur = Self::from_h_poly(self.p, shifted);
        }
        (0..n)
            .map(|i| (0..n).map(|j| BigRational::from_integer(cols[j][i].clone())).collect())
            .collect()
    }

    /// Exact quotient `self / d` in `Z[q]`.
    pub fn div_exact(&self, d: &CyclotomicInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let n = self.coeffs.len();
        let mut a = d.mult_matrix();
        for (i, row) in a.iter_mut().enumerate() {
            row.push(BigRational::from_integer(self.coeffs[i].clone()));
        }
        for col in 0..n {
            let piv = (col..n).find(|&i| !a[i][col].is_zero()).expect("nonzero element is invertible over Q");
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for j in col..=n {
                a[col][j] = &a[col][j] * &inv;
            }
            for i in 0..n {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in col..=n {
                        let v = &a[col][j] * &f;
                        a[i][j] -= v;
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(n);
        for row in &a {
            let x = &row[n];
            if !x.is_integer() {
                return Err(Error::InexactDivision(format!("{self} by {d}")));
            }
            out.push(x.to_integer());
        }
        Ok(CyclotomicInt { p: self.p, coeffs: out })
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::one(self.p).div_exact(self)
    }

    /// Small coefficients as `i64` (panics on overflow; used for JSON output of small values).
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|x| x.to_i64()).collect()
    }

    pub fn describe(&self) -> String {
        format!("{self} (p={})", self.p)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mono = match j {
                0 => String::new(),
                1 => "*h".to_string(),
                _ => format!("*h^{j}"),
            };
            if first {
                write!(f, "{a}{mono}")?;
            } else if a.is_negative() {
                write!(f, " - {}{mono}", a.abs())?;
            } else {
                write!(f, " + {a}{mono}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, o: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, o.p);
        CyclotomicInt { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, o: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, o.p);
        CyclotomicInt { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt { p: self.p, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, o: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, o.p);
        let n = self.coeffs.len();
        let mut c = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        CyclotomicInt::from_h_poly(self.p, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_powers() {
        assert!(CyclotomicInt::from_q_power(5, 0).is_one());
        assert_eq!(CyclotomicInt::from_q_power(5, 1), CyclotomicInt::from_h_coeffs(5, &[1, 1]));
        let s = (0..7).fold(CyclotomicInt::zero(7), |acc, e| &acc + &CyclotomicInt::from_q_power(7, e));
        assert!(s.is_zero());
    }

    #[test]
    fn valuations() {
        assert_eq!(CyclotomicInt::zero(5).v_h(), None);
        assert_eq!(CyclotomicInt::h_pow(7, 3).v_h(), Some(3));
        for p in [3u32, 5, 7, 11, 13] {
            assert_eq!(CyclotomicInt::from_int(p, p).v_h(), Some(p - 1));
        }
        assert_eq!(CyclotomicInt::h_pow(5, 6).v_h(), Some(6));
    }

    #[test]
    fn pi_d_cases() {
        let one = CyclotomicInt::one(5);
        assert_eq!(one.pi_d(0), (BigInt::one(), BigInt::from(5)));
        let h2 = CyclotomicInt::h_pow(7, 2);
        assert!(h2.pi_d(0).0.is_zero());
        assert!(h2.pi_d(1).0.is_zero());
    }

    #[test]
    fn q_round_trip_and_units() {
        let a = CyclotomicInt::from_h_coeffs(7, &[3, -1, 4, 1, -5, 9]);
        assert_eq!(CyclotomicInt::from_q_poly(7, &a.to_q_poly()), a);
        let u = CyclotomicInt::from_q_power(11, 4);
        assert!((&u * &CyclotomicInt::from_q_power(11, 7)).is_one());
        assert_eq!(u.inverse().unwrap(), CyclotomicInt::from_q_power(11, 7));
    }

    #[test]
    fn division_is_exact_or_rejected() {
        let a = CyclotomicInt::from_h_coeffs(5, &[1, 2, 0, 1]);
        let b = CyclotomicInt::from_h_coeffs(5, &[2, 0, 1]);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        assert!(CyclotomicInt::one(5).div_exact(&CyclotomicInt::h_pow(5, 1)).is_err());
    }

    #[test]
    fn display_format() {
        assert_eq!(CyclotomicInt::from_h_coeffs(5, &[1, 0, -3, 2]).to_string(), "1 - 3*h^2 + 2*h^3");
        assert_eq!(CyclotomicInt::zero(5).to_string(), "0");
    }
}
