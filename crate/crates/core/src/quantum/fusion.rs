//! Sweep over a Morse diagram in the basis of left-comb fusion trees.
//!
//! The frontier is a row of colored legs `a_0..a_{k-1}`. A basis vector is a
//! comb: legs are fused left to right, `J[t]` the color after absorbing leg
//! `t`, with `J[k-1] = 0` for a closed frontier. Local moves at legs `i, i+1`
//! recouple to the basis where the two legs fuse first (tetrahedron over
//! theta coefficients), act there, and recouple back.

use std::collections::HashMap;

use super::tables::QTables;
use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::link_diagrams::{MorseEvent, MorseLink};

type State = HashMap<Vec<u32>, CyclotomicInt>;

fn add_to(s: &mut State, k: Vec<u32>, v: CyclotomicInt) {
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

/// Comb with `j` between legs `a` and `b` (trunk `l` below, `r` above)
/// rewritten with `a, b` fused to `c`.
fn to_pair(t: &QTables, l: u32, a: u32, j: u32, b: u32, r: u32, c: u32) -> CyclotomicInt {
    t.cached(1, [l, a, j, b, r, c, 0], || {
        let v = &t.tet(a, b, j, r, l, c) * t.delta(c);
        &(&v * &t.inv_theta(a, b, c)) * &t.inv_theta(l, c, r)
    })
}

/// Inverse direction: legs `a, b` fused to `c` rewritten as the comb with `j`.
fn to_comb(t: &QTables, l: u32, a: u32, b: u32, r: u32, c: u32, j: u32) -> CyclotomicInt {
    t.cached(2, [l, a, b, r, c, j, 0], || {
        let v = &t.tet(a, b, j, r, l, c) * t.delta(j);
        &(&v * &t.inv_theta(l, a, j)) * &t.inv_theta(j, b, r)
    })
}

fn colors_up_to(t: &QTables) -> impl Iterator<Item = u32> {
    0..=t.p - 2
}

/// Bracket of the blackboard-framed diagram with component `i` carrying the
/// idempotent on `colors[i]` strands.
pub(super) fn evaluate(t: &QTables, m: &MorseLink, colors: &[u32], cap: usize) -> Result<CyclotomicInt> {
    if m.width() > cap {
        return Err(Error::WidthCap { width: m.width(), cap });
    }
    if colors.iter().any(|&c| c > t.p - 2) {
        return Err(Error::Invalid(format!("color above {}", t.p - 2)));
    }
    let frontiers = m.strand_components()?;
    let mut state: State = HashMap::new();
    state.insert(Vec::new(), CyclotomicInt::one(t.p));
    for (e, fr) in m.events.iter().zip(&frontiers) {
        // legs of color zero are invisible
        let vis = |pos: usize| fr[..pos].iter().filter(|&&c| colors[c] != 0).count();
        let legs: Vec<u32> = fr.iter().map(|&c| colors[c]).filter(|&c| c != 0).collect();
        match *e {
            MorseEvent::Cup { pos, comp, .. } => {
                let a = colors[comp];
                if a == 0 {
                    continue;
                }
                let i = vis(pos);
                let mut next = HashMap::new();
                for (key, v) in &state {
                    let l = if i == 0 { 0 } else { key[i - 1] };
                    for j in colors_up_to(t) {
                        if !t.admissible(l, a, j) {
                            continue;
                        }
                        let mut k = Vec::with_capacity(key.len() + 2);
                        k.extend_from_slice(&key[..i]);
                        k.push(j);
                        k.push(l);
                        k.extend_from_slice(&key[i..]);
                        add_to(&mut next, k, v * &to_comb(t, l, a, a, l, 0, j));
                    }
                }
                state = next;
            }
            MorseEvent::Cap { pos } => {
                let a = colors[fr[pos]];
                if a == 0 {
                    continue;
                }
                let i = vis(pos);
                let mut next = HashMap::new();
                for (key, v) in &state {
                    let l = if i == 0 { 0 } else { key[i - 1] };
                    if key[i + 1] != l {
                        continue;
                    }
                    let coef = &to_pair(t, l, a, key[i], a, l, 0) * t.delta(a);
                    let mut k = key[..i].to_vec();
                    k.extend_from_slice(&key[i + 2..]);
                    add_to(&mut next, k, v * &coef);
                }
                state = next;
            }
            MorseEvent::Cross { pos, over_left } => {
                let (a, b) = (colors[fr[pos]], colors[fr[pos + 1]]);
                if a == 0 || b == 0 {
                    // the visible legs keep their order
                    continue;
                }
                let i = vis(pos);
                debug_assert_eq!(legs[i], a);
                let mut next = HashMap::new();
                for (key, v) in &state {
                    let l = if i == 0 { 0 } else { key[i - 1] };
                    let (j, r) = (key[i], key[i + 1]);
                    for c in colors_up_to(t) {
                        if !t.admissible(a, b, c) || !t.admissible(l, c, r) {
                            continue;
                        }
                        let f = &to_pair(t, l, a, j, b, r, c) * &t.half_twist(a, b, c, over_left);
                        for j2 in colors_up_to(t) {
                            if !t.admissible(l, b, j2) || !t.admissible(j2, a, r) {
                                continue;
                            }
                            let mut k = key.clone();
                            k[i] = j2;
                            add_to(&mut next, k, &(v * &f) * &to_comb(t, l, b, a, r, c, j2));
                        }
                    }
                }
                state = next;
            }
        }
    }
    Ok(state.remove(&Vec::new()).unwrap_or_else(|| CyclotomicInt::zero(t.p)))
}
