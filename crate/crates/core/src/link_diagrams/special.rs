//! Trivial links with Borromean tangles inserted among triples of components.

use num_rational::BigRational;
use rand::Rng;

use super::morse::{MorseComponent, MorseEvent, MorseLink};
use super::{FramedLink, Role};
use crate::error::{Error, Result};

/// One Borromean insertion among components `i < j < k` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Replacement {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub sign: i8,
}

impl Replacement {
    pub fn new(i: usize, j: usize, k: usize, sign: i8) -> Self {
        Replacement { i, j, k, sign }
    }
}

/// Components `1..=l` are +1-framed surgery components, `l+1..=l+m` are
/// 0-framed base components. Each replacement pulls one strand of each of its
/// three components together over the rest of the diagram, inserts the pure
/// braid `(s1 s2^-1)^3` (its inverse for sign -1) and pulls them back.
pub fn special_link(m: usize, l: usize, replacements: &[Replacement]) -> Result<FramedLink> {
    let n = m + l;
    let mut uses = vec![0usize; n + 1];
    for r in replacements {
        if !(1 <= r.i && r.i < r.j && r.j < r.k && r.k <= n) {
            return Err(Error::Precondition(format!("replacement ({},{},{}) out of order or range", r.i, r.j, r.k)));
        }
        if r.i > l {
            return Err(Error::Precondition(format!("replacement ({},{},{}) has no surgery component", r.i, r.j, r.k)));
        }
        if r.sign != 1 && r.sign != -1 {
            return Err(Error::Precondition(format!("replacement sign {}", r.sign)));
        }
        for c in [r.i, r.j, r.k] {
            uses[c] += 1;
            if c <= l && uses[c] > 2 {
                return Err(Error::Precondition(format!("component {c} used more than twice")));
            }
        }
    }
    // left-to-right placement: order of first use, then the rest
    let mut order: Vec<usize> = Vec::new();
    for r in replacements {
        for c in [r.i, r.j, r.k] {
            if !order.contains(&(c - 1)) {
                order.push(c - 1);
            }
        }
    }
    for c in 0..n {
        if !order.contains(&c) {
            order.push(c);
        }
    }
    let mut slot = vec![0usize; n];
    for (p, &c) in order.iter().enumerate() {
        slot[c] = p;
    }
    let mut events = Vec::new();
    for (p, &c) in order.iter().enumerate() {
        events.push(MorseEvent::Cup { pos: 2 * p, comp: c, left_up: true });
    }
    for r in replacements {
        let mut ps = [slot[r.i - 1], slot[r.j - 1], slot[r.k - 1]];
        ps.sort();
        let s1 = 2 * ps[0] + 1;
        let s2 = 2 * ps[1];
        let s3 = 2 * ps[2];
        for q in (s1 + 1..s2).rev() {
            events.push(MorseEvent::Cross { pos: q, over_left: false });
        }
        for q in (s1 + 2..s3).rev() {
            events.push(MorseEvent::Cross { pos: q, over_left: false });
        }
        for _ in 0..3 {
            if r.sign > 0 {
                events.push(MorseEvent::Cross { pos: s1, over_left: true });
                events.push(MorseEvent::Cross { pos: s1 + 1, over_left: false });
            } else {
                events.push(MorseEvent::Cross { pos: s1 + 1, over_left: true });
                events.push(MorseEvent::Cross { pos: s1, over_left: false });
            }
        }
        for q in s1 + 2..s3 {
            events.push(MorseEvent::Cross { pos: q, over_left: true });
        }
        for q in s1 + 1..s2 {
            events.push(MorseEvent::Cross { pos: q, over_left: true });
        }
    }
    for p in (0..n).rev() {
        events.push(MorseEvent::Cap { pos: 2 * p });
    }
    let components = (0..n)
        .map(|c| {
            let surgery = c < l;
            MorseComponent {
                framing: BigRational::from_integer(if surgery { 1 } else { 0 }.into()),
                color: None,
                role: if surgery { Role::Surgery } else { Role::Base },
            }
        })
        .collect();
    MorseLink { events, components }.to_link()
}

/// Up to `count` random replacements for `special_link(m, l, _)`, each
/// meeting a surgery component and using no surgery component more than twice.
pub fn random_replacements<R: Rng>(rng: &mut R, m: usize, l: usize, count: usize) -> Vec<Replacement> {
    let n = m + l;
    let mut uses = vec![0usize; n + 1];
    let mut out = Vec::new();
    for _ in 0..4 * count {
        if out.len() == count || n < 3 {
            break;
        }
        let mut t = [rng.gen_range(1..=l), rng.gen_range(1..=n), rng.gen_range(1..=n)];
        t.sort();
        if t[0] == t[1] || t[1] == t[2] || t.iter().any(|&c| c <= l && uses[c] == 2) {
            continue;
        }
        for c in t {
            uses[c] += 1;
        }
        out.push(Replacement::new(t[0], t[1], t[2], if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    out
}

/// Unknots side by side with framings `framings`, one Hopf clasp per edge
/// `(u, v)` (0-based). The left strand of `v` travels over the components in
/// between, clasps the right strand of `u` and travels back, so only the
/// clasped pairs link.
pub fn plumbing_link(framings: &[i64], edges: &[(usize, usize)]) -> Result<FramedLink> {
    let n = framings.len();
    let mut events = Vec::new();
    for c in 0..n {
        events.push(MorseEvent::Cup { pos: 2 * c, comp: c, left_up: true });
    }
    for &(a, b) in edges {
        let (u, v) = (a.min(b), a.max(b));
        if u == v || v >= n {
            return Err(Error::Precondition(format!("plumbing edge ({a},{b})")));
        }
        let (target, start) = (2 * u + 2, 2 * v);
        for q in (target..start).rev() {
            events.push(MorseEvent::Cross { pos: q, over_left: false });
        }
        events.push(MorseEvent::Cross { pos: 2 * u + 1, over_left: true });
        events.push(MorseEvent::Cross { pos: 2 * u + 1, over_left: true });
        for q in target..start {
            events.push(MorseEvent::Cross { pos: q, over_left: true });
        }
    }
    for c in (0..n).rev() {
        events.push(MorseEvent::Cap { pos: 2 * c });
    }
    let components = framings
        .iter()
        .map(|&f| MorseComponent { framing: BigRational::from_integer(f.into()), color: None, role: Role::Base })
        .collect();
    MorseLink { events, components }.to_link()
}
