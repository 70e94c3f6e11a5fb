//! Exhaustive enumeration of admissible graphs of a given degree.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use super::{AdmissibleGraph, WHITE};
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 6;

/// Trivalent vertex type: the colors of its darts in cyclic order, white first.
type Kind = [u8; 3];

fn kinds(m: u8) -> Vec<Kind> {
    let mut out = vec![[WHITE; 3]];
    for i in 1..=m {
        out.push([WHITE, WHITE, i]);
    }
    for i in 1..=m {
        for j in 1..=m {
            if i != j {
                out.push([WHITE, i, j]);
            }
        }
    }
    out
}

fn white_darts(k: &Kind) -> usize {
    k.iter().filter(|&&c| c == WHITE).count()
}

/// Multisets of `t` kinds (as nondecreasing index lists) with at most `wmax` white darts.
fn multisets(ks: &[Kind], t: usize, wmax: usize) -> Vec<Vec<usize>> {
    fn go(ks: &[Kind], t: usize, from: usize, w: usize, wmax: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for k in from..ks.len() {
            let w2 = w + white_darts(&ks[k]);
            if w2 <= wmax {
                cur.push(k);
                go(ks, t, k, w2, wmax, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(ks, t, 0, 0, wmax, &mut Vec::new(), &mut out);
    out
}

/// Partial matchings of `darts` (vertex of each dart) pairing darts at distinct
/// vertices, with exactly `free` darts left unmatched. Entries are partner
/// indices, `usize::MAX` for unmatched.
fn matchings(owner: &[usize], free: usize) -> Vec<Vec<usize>> {
    fn go(owner: &[usize], free: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        const UNSET: usize = usize::MAX - 1;
        let Some(i) = cur.iter().position(|&x| x == UNSET) else {
            if free == 0 {
                out.push(cur.clone());
            }
            return;
        };
        if free > 0 {
            cur[i] = usize::MAX;
            go(owner, free - 1, cur, out);
            cur[i] = UNSET;
        }
        for j in i + 1..cur.len() {
            if cur[j] == UNSET && owner[j] != owner[i] {
                cur[i] = j;
                cur[j] = i;
                go(owner, free, cur, out);
                cur[i] = UNSET;
                cur[j] = UNSET;
            }
        }
    }
    let mut out = Vec::new();
    go(owner, free, &mut vec![usize::MAX - 1; owner.len()], &mut out);
    out
}

fn assemble(vs: &[Kind], matching: &[usize], white_owner: &[(usize, usize)], iso_white: usize, iso_colors: &[u8]) -> AdmissibleGraph {
    let t = vs.len();
    let mut n = t;
    let mut edges: Vec<(usize, usize, u8)> = Vec::new();
    // (vertex, slot) -> dart, filled as edges are created
    let mut slot_dart = vec![[usize::MAX; 3]; t];
    let mut add = |edges: &mut Vec<(usize, usize, u8)>, a: (usize, usize), b: Option<(usize, usize)>, c: u8, n: &mut usize| {
        let e = edges.len();
        match b {
            Some(b) => {
                edges.push((a.0, b.0, c));
                slot_dart[b.0][b.1] = 2 * e + 1;
            }
            None => {
                edges.push((a.0, *n, c));
                *n += 1;
            }
        }
        slot_dart[a.0][a.1] = 2 * e;
    };
    for (k, &p) in matching.iter().enumerate() {
        if p == usize::MAX {
            add(&mut edges, white_owner[k], None, WHITE, &mut n);
        } else if p > k {
            add(&mut edges, white_owner[k], Some(white_owner[p]), WHITE, &mut n);
        }
    }
    for (v, kind) in vs.iter().enumerate() {
        for (s, &c) in kind.iter().enumerate() {
            if c != WHITE {
                add(&mut edges, (v, s), None, c, &mut n);
            }
        }
    }
    for _ in 0..iso_white {
        edges.push((n, n + 1, WHITE));
        n += 2;
    }
    for &c in iso_colors {
        edges.push((n, n + 1, c));
        n += 2;
    }
    let mut g = AdmissibleGraph::from_edges(n, &edges);
    for v in 0..t {
        g.rotation[v] = slot_dart[v].to_vec();
    }
    g
}

/// All admissible graphs with colors `1..=m` and `degree` white edges, up to
/// orientation-preserving isomorphism, in canonical form and sorted by code.
/// With `closed_only`, only graphs whose white edges all join trivalent vertices.
pub fn enumerate_graphs(m: u8, degree: usize, closed_only: bool) -> Result<Vec<AdmissibleGraph>> {
    if m == 0 {
        return Err(Error::Invalid("at least one color".into()));
    }
    if degree > MAX_DEGREE {
        return Err(Error::Cap(format!("degree {degree} > {MAX_DEGREE}")));
    }
    let ks = kinds(m);
    let wmax = 2 * degree;
    let mut jobs: Vec<Vec<usize>> = Vec::new();
    for t in 0..=wmax {
        jobs.extend(multisets(&ks, t, wmax));
    }
    let found: Vec<Vec<(Vec<u16>, AdmissibleGraph)>> = jobs
        .par_iter()
        .map(|ms| {
            let vs: Vec<Kind> = ms.iter().map(|&k| ks[k]).collect();
            let mut used = vec![false; m as usize + 1];
            for k in &vs {
                for &c in k {
                    used[c as usize] = true;
                }
            }
            let iso_colors: Vec<u8> = (1..=m).filter(|&c| !used[c as usize]).collect();
            let white_owner: Vec<(usize, usize)> = vs
                .iter()
                .enumerate()
                .flat_map(|(v, k)| k.iter().enumerate().filter(|(_, &c)| c == WHITE).map(move |(s, _)| (v, s)))
                .collect();
            let owner: Vec<usize> = white_owner.iter().map(|x| x.0).collect();
            let w = owner.len();
            let mut out = Vec::new();
            let mut seen = HashSet::new();
            // w = 2·pairs + free, degree = pairs + free + isolated white edges
            for free in 0..=w {
                if (w - free) % 2 != 0 || (closed_only && free > 0) {
                    continue;
                }
                let pairs = (w - free) / 2;
                if pairs + free > degree {
                    continue;
                }
                let iso_white = degree - pairs - free;
                if closed_only && iso_white > 0 {
                    continue;
                }
                for mt in matchings(&owner, free) {
                    let g = assemble(&vs, &mt, &white_owner, iso_white, &iso_colors);
                    debug_assert!(g.validate().is_ok(), "{g:?}");
                    let code = g.canonical_code();
                    if seen.insert(code.clone()) {
                        out.push((code, g.canonical()));
                    }
                }
            }
            out
        })
        .collect();
    let mut all: BTreeMap<Vec<u16>, AdmissibleGraph> = BTreeMap::new();
    for batch in found {
        for (k, g) in batch {
            all.entry(k).or_insert(g);
        }
    }
    Ok(all.into_values().collect())
}
