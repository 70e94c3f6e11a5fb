//! Exact integer and rational linear algebra, polynomials in `z`, and formal sums.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone().into());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
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

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Principal submatrix on the given indices.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let rat: Vec<Vec<BigRational>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let d = rational_determinant(rat);
        assert!(d.is_integer());
        d.to_integer()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + f * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + f * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form with the transforms: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

/// Invariant factors `d1 | d2 | ...` (length `min(rows, cols)`) and the rank.
pub fn smith_normal_form(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    let s = smith_decompose(m, false);
    (s.factors, s.rank)
}

/// Smith normal form keeping the unimodular transforms when `track` is set.
pub fn smith_decompose(m: &IntMatrix, track: bool) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = if track { IntMatrix::identity(r) } else { IntMatrix::zeros(0, 0) };
    let mut v = if track { IntMatrix::identity(c) } else { IntMatrix::zeros(0, 0) };
    let n = r.min(c);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = a.get(i, j);
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if track {
            u.swap_rows(t, pi);
            v.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row(i, t, &q);
                if track {
                    u.add_row(i, t, &q);
                }
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col(j, t, &q);
                if track {
                    v.add_col(j, t, &q);
                }
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // enforce divisibility of the trailing block by the pivot
                let p = a.get(t, t).clone();
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&p)));
                match bad {
                    None => break,
                    Some(i) => {
                        a.add_row(t, i, &BigInt::one());
                        if track {
                            u.add_row(t, i, &BigInt::one());
                        }
                    }
                }
            }
            // move the smallest entry of row/col t into the pivot position
            let mut best = (t, t);
            for i in t..r {
                let x = a.get(i, t);
                if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t..c {
                let x = a.get(t, j);
                if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            a.swap_rows(t, best.0);
            a.swap_cols(t, best.1);
            if track {
                u.swap_rows(t, best.0);
                v.swap_cols(t, best.1);
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if track {
                u.negate_row(t);
            }
        }
        t += 1;
    }
    let factors: Vec<BigInt> = (0..n).map(|i| a.get(i, i).clone()).collect();
    let rank = factors.iter().filter(|x| !x.is_zero()).count();
    SmithForm { u, d: a, v, factors, rank }
}

/// Determinant over the rationals by Gaussian elimination.
pub fn rational_determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let piv = m[k][k].clone();
        det *= &piv;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &piv;
            for j in k..n {
                let v = &m[k][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    det
}

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix,
/// by congruence diagonalisation over the rationals.
pub fn signature_nullity(m: &IntMatrix) -> Result<(usize, usize, usize)> {
    if !m.is_symmetric() {
        return Err(Error::Invalid("signature of a non-symmetric matrix".into()));
    }
    let n = m.rows;
    let mut a: Vec<Vec<BigRational>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            sym_swap(&mut a, k, p);
        } else if let Some((i, j)) =
            (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        {
            // diagonal vanishes: e_i + e_j has value 2 a_ij
            sym_add(&mut a, i, j);
            sym_swap(&mut a, k, i);
        } else {
            break;
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..n {
                let v = &a[k][j] * &f;
                a[i][j] -= v;
            }
            for j in k..n {
                let v = &a[j][k] * &f;
                a[j][i] -= v;
            }
        }
        k += 1;
    }
    Ok((pos, neg, n - pos - neg))
}

fn sym_swap(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// row_i += row_j and col_i += col_j
fn sym_add(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone();
        a[i][c] += v;
    }
    for r in 0..n {
        let v = a[r][j].clone();
        a[r][i] += v;
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank over the field with `p` elements.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| m.row(i).iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(piv) = (rank..m.rows).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for j in col..m.cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in 0..m.rows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in col..m.cols {
                    a[i][j] = (a[i][j] + p * p - f * a[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Basis of the kernel of `m` over the rationals, scaled to primitive integer vectors.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (r, c) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigRational>> = m
        .to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..c {
        let Some(p) = (row..r).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for j in 0..c {
            a[row][j] = &a[row][j] * &inv;
        }
        for i in 0..r {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..c {
                    let v = &a[row][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..c).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); c];
            v[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

/// Clear denominators and divide by the content.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Polynomial in the formal variable `z` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: BTreeMap<u32, BigRational>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    /// `c z^k`
    pub fn monomial(k: u32, c: BigRational) -> Self {
        let mut p = ZPoly::zero();
        p.add_term(k, c);
        p
    }

    pub fn z() -> Self {
        Self::monomial(1, BigRational::one())
    }

    pub fn from_ints(c: &[i64]) -> Self {
        let mut p = ZPoly::zero();
        for (k, &x) in c.iter().enumerate() {
            p.add_term(k as u32, BigRational::from_integer(x.into()));
        }
        p
    }

    pub fn add_term(&mut self, k: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: u32) -> BigRational {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    /// Largest `k` with `z^k` dividing the polynomial; `None` for zero.
    pub fn z_valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn divisible_by_z_pow(&self, k: u32) -> bool {
        self.z_valuation().map_or(true, |v| v >= k)
    }

    pub fn scale(&self, c: &BigRational) -> ZPoly {
        let mut out = ZPoly::zero();
        for (k, v) in &self.coeffs {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> ZPoly {
        (0..e).fold(ZPoly::one(), |acc, _| &acc * self)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }
}

impl fmt::Display for ZPoly {
    /// Ascending powers, e.g. `1+z^2`, `-z+3z^3`, `1/2z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if *k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, o: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, o: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            out.add_term(*k, -v.clone());
        }
        out
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, o: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

/// Basis types that can sit in a [`FormalSum`].
pub trait Canonical: Clone {
    /// Deterministic byte encoding; equal encodings mean equal basis elements.
    fn encode(&self) -> Vec<u8>;
}

/// Integer linear combination of basis elements, keyed by canonical encoding.
#[derive(Clone, Debug)]
pub struct FormalSum<B> {
    terms: BTreeMap<Vec<u8>, (BigInt, B)>,
}

impl<B> Default for FormalSum<B> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<B: Canonical> PartialEq for FormalSum<B> {
    fn eq(&self, o: &Self) -> bool {
        self.terms.len() == o.terms.len()
            && self.terms.iter().zip(o.terms.iter()).all(|((ka, (ca, _)), (kb, (cb, _)))| ka == kb && ca == cb)
    }
}

impl<B: Canonical> Eq for FormalSum<B> {}

impl<B: Canonical> FormalSum<B> {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn single(b: B) -> Self {
        Self::term(BigInt::one(), b)
    }

    pub fn term(c: BigInt, b: B) -> Self {
        let mut s = Self::zero();
        s.add_term(c, b);
        s
    }

    pub fn add_term(&mut self, c: BigInt, b: B) {
        if c.is_zero() {
            return;
        }
        let key = b.encode();
        match self.terms.get_mut(&key) {
            Some((x, _)) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, (c, b));
            }
        }
    }

    pub fn add_assign(&mut self, o: &FormalSum<B>) {
        for (c, b) in o.iter() {
            self.add_term(c.clone(), b.clone());
        }
    }

    pub fn plus(&self, o: &FormalSum<B>) -> Self {
        let mut s = self.clone();
        s.add_assign(o);
        s
    }

    pub fn minus(&self, o: &FormalSum<B>) -> Self {
        self.plus(&o.negate())
    }

    pub fn negate(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut s = Self::zero();
        for (c, b) in self.iter() {
            s.add_term(c * k, b.clone());
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical-key order.
    pub fn iter(&self) -> impl Iterator<Item = (&BigInt, &B)> {
        self.terms.values().map(|(c, b)| (c, b))
    }

    pub fn coefficient(&self, b: &B) -> BigInt {
        self.terms.get(&b.encode()).map(|(c, _)| c.clone()).unwrap_or_else(BigInt::zero)
    }

    /// Linear extension of a basis map.
    pub fn map<C: Canonical>(&self, f: impl Fn(&B) -> C) -> FormalSum<C> {
        let mut s = FormalSum::zero();
        for (c, b) in self.iter() {
            s.add_term(c.clone(), f(b));
        }
        s
    }

    /// Linear extension of a map into formal sums.
    pub fn flat_map<C: Canonical>(&self, f: impl Fn(&B) -> FormalSum<C>) -> FormalSum<C> {
        let mut s = FormalSum::zero();
        for (c, b) in self.iter() {
            s.add_assign(&f(b).scale(c));
        }
        s
    }
}

impl Canonical for Vec<u8> {
    fn encode(&self) -> Vec<u8> {
        self.clone()
    }
}

impl Canonical for String {
    fn encode(&self) -> Vec<u8> {
        self.as_bytes().to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn snf_small_cases() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(2)), (ints(&[1, 1]), 2));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![0]])), (ints(&[0]), 0));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 4], vec![4, 2]])), (ints(&[2, 6]), 2));
        assert_eq!(smith_normal_form(&IntMatrix::zeros(0, 0)), (vec![], 0));
    }

    #[test]
    fn snf_transforms_reconstruct() {
        let m = IntMatrix::from_rows(&[vec![6, 4, 0], vec![2, 8, 10], vec![4, -2, 6]]);
        let s = smith_decompose(&m, true);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
    }

    #[test]
    fn signature_cases() {
        let d = IntMatrix::diagonal(&[1, -1, 0]);
        assert_eq!(signature_nullity(&d).unwrap(), (1, 1, 1));
        assert_eq!(signature_nullity(&IntMatrix::zeros(0, 0)).unwrap(), (0, 0, 0));
        let hyp = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(signature_nullity(&hyp).unwrap(), (1, 1, 0));
        assert!(signature_nullity(&IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]])).is_err());
    }

    #[test]
    fn rank_mod_p_cases() {
        assert_eq!(rank_mod_p(&IntMatrix::zeros(3, 3), 5).unwrap(), 0);
        assert_eq!(rank_mod_p(&IntMatrix::identity(3), 5).unwrap(), 3);
        assert_eq!(rank_mod_p(&IntMatrix::diagonal(&[5, 1]), 5).unwrap(), 1);
        assert!(rank_mod_p(&IntMatrix::identity(2), 9).is_err());
    }

    #[test]
    fn zpoly_display() {
        assert_eq!(ZPoly::from_ints(&[1, 0, 1]).to_string(), "1+z^2");
        assert_eq!(ZPoly::from_ints(&[0, -1, 0, 3]).to_string(), "-z+3z^3");
        assert_eq!(ZPoly::zero().to_string(), "0");
    }

    #[test]
    fn kernel_is_primitive() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![1, 2]]);
        assert_eq!(integer_kernel(&m), vec![ints(&[-2, 1])]);
    }
}
