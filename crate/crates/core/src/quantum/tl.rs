//! Temperley–Lieb sweep over blackboard cables; colors enter through the
//! Chebyshev expansion `e_n = S_n(x)` of the idempotent closures.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::tables::QTables;
use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::link_diagrams::{MorseEvent, MorseLink};

/// Linear combination of non-crossing perfect matchings of `width` points;
/// a matching is stored as its partner array.
#[derive(Clone, Debug)]
pub struct TLVector {
    pub p: u32,
    pub width: usize,
    pub amplitudes: HashMap<Vec<u8>, CyclotomicInt>,
}

fn add_to(s: &mut HashMap<Vec<u8>, CyclotomicInt>, k: Vec<u8>, v: CyclotomicInt) {
    if v.is_zero() {
        return;
    }
    match s.get_mut(&k) {
        Some(x) => {
            *x = &*x + &v;
            if x.is_zero() {
                s.remove(&k);
            }
        }
        None => {
            s.insert(k, v);
        }
    }
}

fn insert_pair(m: &[u8], i: usize) -> Vec<u8> {
    let sh = |k: u8| if (k as usize) < i { k } else { k + 2 };
    let mut out = Vec::with_capacity(m.len() + 2);
    out.extend(m[..i].iter().map(|&k| sh(k)));
    out.push(i as u8 + 1);
    out.push(i as u8);
    out.extend(m[i..].iter().map(|&k| sh(k)));
    out
}

/// Closes points `i, i+1`; returns the new matching and whether a loop formed.
fn close_pair(m: &[u8], i: usize) -> (Vec<u8>, bool) {
    let i8 = i as u8;
    if m[i] == i8 + 1 {
        let sh = |k: u8| if k < i8 { k } else { k - 2 };
        let mut out: Vec<u8> = m[..i].iter().map(|&k| sh(k)).collect();
        out.extend(m[i + 2..].iter().map(|&k| sh(k)));
        return (out, true);
    }
    let mut w = m.to_vec();
    let (x, y) = (w[i] as usize, w[i + 1] as usize);
    w[x] = y as u8;
    w[y] = x as u8;
    let sh = |k: u8| if k < i8 { k } else { k - 2 };
    let mut out: Vec<u8> = w[..i].iter().map(|&k| sh(k)).collect();
    out.extend(w[i + 2..].iter().map(|&k| sh(k)));
    (out, false)
}

impl TLVector {
    /// The empty diagram with amplitude one.
    pub fn vacuum(p: u32) -> Self {
        let mut amplitudes = HashMap::new();
        amplitudes.insert(Vec::new(), CyclotomicInt::one(p));
        TLVector { p, width: 0, amplitudes }
    }

    pub fn cup(&mut self, i: usize) {
        let old = std::mem::take(&mut self.amplitudes);
        for (m, v) in old {
            self.amplitudes.insert(insert_pair(&m, i), v);
        }
        self.width += 2;
    }

    pub fn cap(&mut self, i: usize, delta: &CyclotomicInt) {
        let old = std::mem::take(&mut self.amplitudes);
        for (m, v) in old {
            let (k, looped) = close_pair(&m, i);
            add_to(&mut self.amplitudes, k, if looped { &v * delta } else { v });
        }
        self.width -= 2;
    }

    /// `x · id + y · U_i`.
    pub fn apply(&mut self, i: usize, x: &CyclotomicInt, y: &CyclotomicInt, delta: &CyclotomicInt) {
        let old = std::mem::take(&mut self.amplitudes);
        for (m, v) in old {
            let (closed, looped) = close_pair(&m, i);
            let u = insert_pair(&closed, i);
            let yv = if looped { &(&v * y) * delta } else { &v * y };
            add_to(&mut self.amplitudes, m, &v * x);
            add_to(&mut self.amplitudes, u, yv);
        }
    }

    /// Amplitude of the empty matching.
    pub fn scalar(&self) -> CyclotomicInt {
        self.amplitudes.get(&Vec::new()).cloned().unwrap_or_else(|| CyclotomicInt::zero(self.p))
    }
}

/// Unnormalized Kauffman bracket (empty diagram 1, loop `δ`) of the
/// blackboard-framed Morse diagram.
pub(super) fn bracket(t: &QTables, m: &MorseLink, cap: usize) -> Result<CyclotomicInt> {
    if m.width() > cap {
        return Err(Error::WidthCap { width: m.width(), cap });
    }
    m.strand_components()?;
    let a = t.a_pow(1);
    let ai = t.a_pow(-1);
    let delta = t.delta(1).clone();
    let mut v = TLVector::vacuum(t.p);
    for e in &m.events {
        match *e {
            MorseEvent::Cup { pos, .. } => v.cup(pos),
            MorseEvent::Cap { pos } => v.cap(pos, &delta),
            MorseEvent::Cross { pos, over_left: true } => v.apply(pos, &a, &ai, &delta),
            MorseEvent::Cross { pos, over_left: false } => v.apply(pos, &ai, &a, &delta),
        }
    }
    Ok(v.scalar())
}

/// Integer coefficients of the Chebyshev polynomial `S_n`.
pub(super) fn chebyshev(n: u32) -> Vec<i64> {
    let mut prev = vec![1i64];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0i64, 1];
    for _ in 1..n {
        let mut next = vec![0i64; cur.len() + 1];
        for (k, &c) in cur.iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Blackboard-framed colored bracket via cables.
pub(super) fn colored_evaluate(t: &QTables, m: &MorseLink, colors: &[u32], cap: usize) -> Result<CyclotomicInt> {
    let link = m.to_link()?;
    let w = link.writhes()?;
    let mut bb = m.clone();
    for (c, &wi) in bb.components.iter_mut().zip(&w) {
        c.framing = BigRational::from_integer(wi.into());
    }
    let polys: Vec<Vec<i64>> = colors.iter().map(|&n| chebyshev(n)).collect();
    let mut total = CyclotomicInt::zero(t.p);
    let mut idx = vec![0usize; colors.len()];
    loop {
        let coef: i64 = idx.iter().zip(&polys).map(|(&c, s)| s[c]).product();
        if coef != 0 {
            let cabled = bb.cable(&idx)?;
            let v = bracket(t, &cabled, cap)?;
            total = &total + &v.scale(&BigInt::from(coef));
        }
        // next multi-index
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(total);
            }
            idx[k] += 1;
            if idx[k] < polys[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
