use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::cyclotomic::CyclotomicInt;

/// Quantum integers, factorials, theta and tetrahedron evaluations at a
/// fixed prime, with memoized network values.
pub struct QTables {
    pub p: u32,
    /// `A = q^a`
    pub a: i64,
    qint: Vec<CyclotomicInt>,
    fact: Vec<CyclotomicInt>,
    inv_fact: Vec<CyclotomicInt>,
    delta: Vec<CyclotomicInt>,
    theta_memo: Mutex<HashMap<[u32; 3], CyclotomicInt>>,
    tet_memo: Mutex<HashMap<[u32; 6], CyclotomicInt>>,
    memo: Mutex<HashMap<(u8, [u32; 7]), CyclotomicInt>>,
}

impl QTables {
    pub fn new(p: u32) -> Self {
        let a = (1..p as i64).find(|x| (4 * x) % p as i64 == 1).expect("odd prime");
        let zero = CyclotomicInt::zero(p);
        let one = CyclotomicInt::one(p);
        let top = 2 * p as usize + 2;
        let mut qint = vec![zero.clone()];
        for k in 1..=top as i64 {
            let mut s = zero.clone();
            for j in 0..k {
                s = &s + &CyclotomicInt::from_q_power(p, a * (2 * k - 2 - 4 * j));
            }
            qint.push(s);
        }
        let mut fact = vec![one.clone()];
        for k in 1..=top {
            fact.push(&fact[k - 1] * &qint[k]);
        }
        // [k]! is a unit for k < p
        let inv_fact = (0..p as usize).map(|k| fact[k].inverse().expect("quantum factorial is a unit")).collect();
        let delta = (0..p as usize - 1)
            .map(|n| if n % 2 == 0 { qint[n + 1].clone() } else { -&qint[n + 1] })
            .collect();
        QTables {
            p,
            a,
            qint,
            fact,
            inv_fact,
            delta,
            theta_memo: Mutex::new(HashMap::new()),
            tet_memo: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// `A^e`.
    pub fn a_pow(&self, e: i64) -> CyclotomicInt {
        CyclotomicInt::from_q_power(self.p, self.a * e)
    }

    pub fn qint(&self, k: usize) -> &CyclotomicInt {
        &self.qint[k]
    }

    /// `Δ_n = (-1)^n [n+1]`, the closed `n`-colored loop.
    pub fn delta(&self, n: u32) -> &CyclotomicInt {
        &self.delta[n as usize]
    }

    /// Value of a positive kink on an `n`-colored strand, raised to `e`.
    pub fn twist_power(&self, n: u32, e: i64) -> CyclotomicInt {
        let n = n as i64;
        let v = self.a_pow((n * n + 2 * n) * e);
        if n % 2 == 1 && e % 2 != 0 {
            -&v
        } else {
            v
        }
    }

    /// Eigenvalue of the half twist of the two upper legs of an `(a, b, c)`
    /// vertex; `positive` is the twist with the left leg passing over.
    pub fn half_twist(&self, a: u32, b: u32, c: u32, positive: bool) -> CyclotomicInt {
        let (a, b, c) = (a as i64, b as i64, c as i64);
        let e = (c * (c + 2) - a * (a + 2) - b * (b + 2)) / 2;
        let v = self.a_pow(if positive { e } else { -e });
        if ((a + b - c) / 2) % 2 == 1 {
            -&v
        } else {
            v
        }
    }

    /// Triangle condition plus the level bound `a + b + c <= 2p - 4`.
    pub fn admissible(&self, a: u32, b: u32, c: u32) -> bool {
        (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * self.p - 4
    }

    pub fn theta(&self, a: u32, b: u32, c: u32) -> CyclotomicInt {
        let mut key = [a, b, c];
        key.sort();
        if let Some(v) = self.theta_memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let m = ((a + b - c) / 2) as usize;
        let n = ((b + c - a) / 2) as usize;
        let q = ((a + c - b) / 2) as usize;
        let mut v = &(&(&self.fact[m + n + q + 1] * &self.fact[m]) * &self.fact[n]) * &self.fact[q];
        v = &(&(&v * &self.inv_fact[m + n]) * &self.inv_fact[n + q]) * &self.inv_fact[m + q];
        if (m + n + q) % 2 == 1 {
            v = -&v;
        }
        self.theta_memo.lock().unwrap().insert(key, v.clone());
        v
    }

    /// Tetrahedral network with faces `(A,D,E)`, `(B,C,E)`, `(A,B,F)`, `(C,D,F)`.
    pub fn tet(&self, aa: u32, bb: u32, ee: u32, cc: u32, dd: u32, ff: u32) -> CyclotomicInt {
        let key = [aa, bb, ee, cc, dd, ff];
        if let Some(v) = self.tet_memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let ai = [(aa + dd + ee) / 2, (bb + cc + ee) / 2, (aa + bb + ff) / 2, (cc + dd + ff) / 2];
        let bj = [(bb + dd + ee + ff) / 2, (aa + cc + ee + ff) / 2, (aa + bb + cc + dd) / 2];
        let lo = *ai.iter().max().unwrap();
        let hi = *bj.iter().min().unwrap();
        let mut sum = CyclotomicInt::zero(self.p);
        for s in lo..=hi {
            let mut t = self.fact[s as usize + 1].clone();
            for &x in &ai {
                t = &t * &self.inv_fact[(s - x) as usize];
            }
            for &y in &bj {
                t = &t * &self.inv_fact[(y - s) as usize];
            }
            sum = if s % 2 == 0 { &sum + &t } else { &sum - &t };
        }
        let mut v = sum;
        for &y in &bj {
            for &x in &ai {
                v = &v * &self.fact[(y - x) as usize];
            }
        }
        for e in [aa, bb, cc, dd, ee, ff] {
            v = &v * &self.inv_fact[e as usize];
        }
        self.tet_memo.lock().unwrap().insert(key, v.clone());
        v
    }

    /// Memoized value of an arbitrary labelled coefficient.
    pub fn cached(&self, kind: u8, key: [u32; 7], f: impl FnOnce() -> CyclotomicInt) -> CyclotomicInt {
        if let Some(v) = self.memo.lock().unwrap().get(&(kind, key)) {
            return v.clone();
        }
        let v = f();
        self.memo.lock().unwrap().insert((kind, key), v.clone());
        v
    }

    /// `1 / θ(a, b, c)`; theta values of admissible triples are units.
    pub fn inv_theta(&self, a: u32, b: u32, c: u32) -> CyclotomicInt {
        let mut k = [a, b, c];
        k.sort();
        self.cached(0, [k[0], k[1], k[2], 0, 0, 0, 0], || self.theta(a, b, c).inverse().expect("theta is a unit"))
    }

    pub fn int(&self, n: i64) -> CyclotomicInt {
        CyclotomicInt::from_int(self.p, BigInt::from(n))
    }
}
