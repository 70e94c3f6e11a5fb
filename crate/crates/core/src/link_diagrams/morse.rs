//! Links as sequences of cups, caps and crossings swept bottom to top.
//!
//! Strand positions are counted from the left. A cup at `pos` inserts two
//! strands at `pos` and `pos + 1`; a cap removes them; a crossing swaps them.
//! In an `over_left` crossing the strand from bottom-left to top-right is over.

use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Component, Crossing, FramedLink, Role};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorseEvent {
    /// `left_up`: the component runs upward along the left strand.
    Cup { pos: usize, comp: usize, left_up: bool },
    Cap { pos: usize },
    Cross { pos: usize, over_left: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseComponent {
    pub framing: BigRational,
    pub color: Option<i64>,
    pub role: Role,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseLink {
    pub events: Vec<MorseEvent>,
    pub components: Vec<MorseComponent>,
}

#[derive(Clone, Copy, Debug)]
enum Joint {
    Cross(usize, usize),
    Cap(usize, usize),
}

impl MorseLink {
    /// Closure of a braid on `n` strands. Generator `i` (1-based) is a positive
    /// crossing of strands `i` and `i + 1`; `-i` is its inverse.
    pub fn braid_closure(n: usize, word: &[i32]) -> Result<MorseLink> {
        let mut perm: Vec<usize> = (0..n).collect();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= n {
                return Err(Error::Invalid(format!("generator {g} on {n} strands")));
            }
            perm.swap(i - 1, i);
        }
        // perm[pos] = bottom strand now at top position pos; closure joins top pos to bottom pos
        let mut comp = vec![usize::MAX; n];
        let mut ncomp = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut cur = s;
            while comp[cur] == usize::MAX {
                comp[cur] = ncomp;
                cur = perm.iter().position(|&b| b == cur).unwrap();
            }
            ncomp += 1;
        }
        let mut events = Vec::new();
        for t in 0..n {
            events.push(MorseEvent::Cup { pos: t, comp: comp[t], left_up: true });
        }
        for &g in word {
            events.push(MorseEvent::Cross { pos: g.unsigned_abs() as usize - 1, over_left: g > 0 });
        }
        for t in (0..n).rev() {
            events.push(MorseEvent::Cap { pos: t });
        }
        let components = (0..ncomp)
            .map(|_| MorseComponent { framing: BigRational::from_integer(0.into()), color: None, role: Role::Base })
            .collect();
        Ok(MorseLink { events, components })
    }

    /// Largest number of strands at any height.
    pub fn width(&self) -> usize {
        let mut w = 0usize;
        let mut best = 0;
        for e in &self.events {
            match e {
                MorseEvent::Cup { .. } => w += 2,
                MorseEvent::Cap { .. } => w -= 2,
                MorseEvent::Cross { .. } => {}
            }
            best = best.max(w);
        }
        best
    }

    pub fn num_crossings(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, MorseEvent::Cross { .. })).count()
    }

    /// Component index of every strand just before each event.
    pub fn strand_components(&self) -> Result<Vec<Vec<usize>>> {
        let mut fr: Vec<usize> = Vec::new();
        let mut out = Vec::with_capacity(self.events.len());
        for e in &self.events {
            out.push(fr.clone());
            match *e {
                MorseEvent::Cup { pos, comp, .. } => {
                    if pos > fr.len() {
                        return Err(Error::Malformed(format!("cup at {pos} beyond width {}", fr.len())));
                    }
                    fr.insert(pos, comp);
                    fr.insert(pos, comp);
                }
                MorseEvent::Cap { pos } => {
                    if pos + 1 >= fr.len() {
                        return Err(Error::Malformed(format!("cap at {pos} beyond width {}", fr.len())));
                    }
                    fr.drain(pos..pos + 2);
                }
                MorseEvent::Cross { pos, .. } => {
                    if pos + 1 >= fr.len() {
                        return Err(Error::Malformed(format!("crossing at {pos} beyond width {}", fr.len())));
                    }
                    fr.swap(pos, pos + 1);
                }
            }
        }
        if !fr.is_empty() {
            return Err(Error::Malformed("strands left open at the top".into()));
        }
        Ok(out)
    }

    /// The PD form; crossings keep their event order and each component is
    /// listed in its traversal direction.
    pub fn to_link(&self) -> Result<FramedLink> {
        self.strand_components()?;
        // segment ends: cups have ends (left, right); crossing outputs (bottom, top)
        let mut joints: Vec<[Option<Joint>; 2]> = Vec::new();
        let mut slots: Vec<[(usize, usize); 4]> = Vec::new();
        let mut over_left: Vec<bool> = Vec::new();
        let mut cups: Vec<(usize, usize, bool)> = Vec::new();
        let mut cup_of_seg: HashMap<usize, (usize, bool)> = HashMap::new();
        let mut fr: Vec<(usize, usize)> = Vec::new();
        for e in &self.events {
            match *e {
                MorseEvent::Cup { pos, comp, left_up } => {
                    if comp >= self.components.len() {
                        return Err(Error::Malformed(format!("cup names component {comp}")));
                    }
                    let s = joints.len();
                    joints.push([None, None]);
                    cups.push((s, comp, left_up));
                    cup_of_seg.insert(s, (comp, left_up));
                    fr.insert(pos, (s, 1));
                    fr.insert(pos, (s, 0));
                }
                MorseEvent::Cap { pos } => {
                    let (a, b) = (fr[pos], fr[pos + 1]);
                    joints[a.0][a.1] = Some(Joint::Cap(b.0, b.1));
                    joints[b.0][b.1] = Some(Joint::Cap(a.0, a.1));
                    fr.drain(pos..pos + 2);
                }
                MorseEvent::Cross { pos, over_left: ol } => {
                    let x = slots.len();
                    let (bl, br) = (fr[pos], fr[pos + 1]);
                    let tl = joints.len();
                    let tr = tl + 1;
                    joints.push([Some(Joint::Cross(x, 3)), None]);
                    joints.push([Some(Joint::Cross(x, 2)), None]);
                    joints[bl.0][bl.1] = Some(Joint::Cross(x, 0));
                    joints[br.0][br.1] = Some(Joint::Cross(x, 1));
                    slots.push([bl, br, (tr, 0), (tl, 0)]);
                    over_left.push(ol);
                    fr[pos] = (tl, 1);
                    fr[pos + 1] = (tr, 1);
                }
            }
        }
        let nx = slots.len();
        let ncomp = self.components.len();
        let mut passages: Vec<Option<Vec<(usize, usize)>>> = vec![None; ncomp];
        let mut seen = vec![false; joints.len()];
        for &(s0, comp, left_up) in &cups {
            if seen[s0] {
                continue;
            }
            if passages[comp].is_some() {
                return Err(Error::Malformed(format!("component {comp} is more than one curve")));
            }
            let mut path = Vec::new();
            // enter the cup through its right end when running up the left strand
            let start = (s0, if left_up { 1 } else { 0 });
            let mut cur = start;
            loop {
                let (seg, end_in) = cur;
                if seen[seg] {
                    return Err(Error::Malformed("curve revisits a segment".into()));
                }
                seen[seg] = true;
                if let Some(&(c, lu)) = cup_of_seg.get(&seg) {
                    if c != comp || lu != (end_in == 1) {
                        return Err(Error::Malformed("cup labels disagree along a curve".into()));
                    }
                }
                let exit = 1 - end_in;
                cur = match joints[seg][exit] {
                    Some(Joint::Cap(s, e)) => (s, e),
                    Some(Joint::Cross(x, g)) => {
                        path.push((x, g));
                        slots[x][(g + 2) % 4]
                    }
                    None => return Err(Error::Malformed("dangling strand".into())),
                };
                if cur == start {
                    break;
                }
            }
            passages[comp] = Some(path);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Malformed("curve without a cup".into()));
        }
        let mut slot_edge = vec![[0i64; 4]; nx];
        let mut in_slots: Vec<Vec<usize>> = vec![Vec::new(); nx];
        let mut components = Vec::with_capacity(ncomp);
        let mut label = 0i64;
        for (ci, p) in passages.iter().enumerate() {
            let p = p.as_ref().ok_or_else(|| Error::Malformed(format!("component {ci} has no cup")))?;
            let n = p.len();
            let mut arcs = Vec::new();
            if n == 0 {
                label += 1;
                arcs.push(label);
            }
            for i in 0..n {
                label += 1;
                let (x, g) = p[i];
                slot_edge[x][(g + 2) % 4] = label;
                let (y, h) = p[(i + 1) % n];
                slot_edge[y][h] = label;
                in_slots[x].push(g);
                arcs.push(label);
            }
            let m = &self.components[ci];
            components.push(Component { arcs, orientation: 1, framing: m.framing.clone(), color: m.color, role: m.role });
        }
        let mut crossings = Vec::with_capacity(nx);
        for x in 0..nx {
            let under_odd = over_left[x];
            let u = *in_slots[x].iter().find(|&&g| (g % 2 == 1) == under_odd).ok_or_else(|| Error::Malformed("crossing".into()))?;
            let o = *in_slots[x].iter().find(|&&g| (g % 2 == 1) != under_odd).ok_or_else(|| Error::Malformed("crossing".into()))?;
            let arcs = [0, 1, 2, 3].map(|i| slot_edge[x][(u + i) % 4]);
            let sign = if (o + 4 - u) % 4 == 3 { 1 } else { -1 };
            crossings.push(Crossing { arcs, sign });
        }
        Ok(FramedLink { components, crossings })
    }

    /// Sweep of a PD diagram. Several starting crossings are tried and the
    /// narrowest sweep that reproduces the diagram is kept.
    pub fn from_link(link: &FramedLink) -> Result<MorseLink> {
        let t = link.trace()?;
        let target = link.canonical_encoding();
        let nx = link.crossings.len();
        let attempts = if nx == 0 { 1 } else { (4 * nx).min(64) };
        let mut best: Option<MorseLink> = None;
        for a in 0..attempts {
            let first = if nx == 0 { 0 } else { a % nx };
            let slot = (a / nx.max(1)) % 4;
            let Some(m) = sweep(link, &t, first, slot) else { continue };
            match m.to_link() {
                Ok(l) if l.canonical_encoding() == target => {}
                _ => continue,
            }
            if best.as_ref().map_or(true, |b| m.width() < b.width()) {
                best = Some(m);
            }
        }
        best.ok_or_else(|| Error::Invalid("no planar sweep found for diagram".into()))
    }

    /// Component `i` replaced by `counts[i]` parallel copies with the same
    /// framing; full twists are inserted so copies link `framing` times.
    pub fn cable(&self, counts: &[usize]) -> Result<MorseLink> {
        let link = self.to_link()?;
        let writhe = link.writhes()?;
        let mut base = Vec::with_capacity(counts.len());
        let mut components = Vec::new();
        for (i, &c) in counts.iter().enumerate() {
            base.push(components.len());
            for _ in 0..c {
                components.push(self.components[i].clone());
            }
        }
        let mut twists = Vec::with_capacity(counts.len());
        for (i, m) in self.components.iter().enumerate() {
            if counts[i] < 2 {
                twists.push(0i64);
                continue;
            }
            if !m.framing.is_integer() {
                return Err(Error::Invalid(format!("cannot cable component {i} with fractional framing")));
            }
            let a = m.framing.to_integer().to_i64().ok_or_else(|| Error::Invalid("framing too large".into()))?;
            twists.push(a - writhe[i]);
        }
        let mut fr: Vec<usize> = Vec::new();
        let offset = |fr: &[usize], pos: usize| -> usize { fr[..pos].iter().map(|&c| counts[c]).sum() };
        let mut twisted = vec![false; counts.len()];
        let mut events = Vec::new();
        for e in &self.events {
            match *e {
                MorseEvent::Cup { pos, comp, left_up } => {
                    let p = offset(&fr, pos);
                    let c = counts[comp];
                    for k in 0..c {
                        let copy = if left_up { k } else { c - 1 - k };
                        events.push(MorseEvent::Cup { pos: p + k, comp: base[comp] + copy, left_up });
                    }
                    fr.insert(pos, comp);
                    fr.insert(pos, comp);
                    if !twisted[comp] {
                        twisted[comp] = true;
                        let n = twists[comp];
                        for _ in 0..n.unsigned_abs() * c as u64 {
                            for j in 0..c.saturating_sub(1) {
                                events.push(MorseEvent::Cross { pos: p + j, over_left: n > 0 });
                            }
                        }
                    }
                }
                MorseEvent::Cap { pos } => {
                    let p = offset(&fr, pos);
                    let c = counts[fr[pos]];
                    for k in (0..c).rev() {
                        events.push(MorseEvent::Cap { pos: p + k });
                    }
                    fr.drain(pos..pos + 2);
                }
                MorseEvent::Cross { pos, over_left } => {
                    let p = offset(&fr, pos);
                    let (a, b) = (counts[fr[pos]], counts[fr[pos + 1]]);
                    for i in (0..a).rev() {
                        for j in 0..b {
                            events.push(MorseEvent::Cross { pos: p + i + j, over_left });
                        }
                    }
                    fr.swap(pos, pos + 1);
                }
            }
        }
        Ok(MorseLink { events, components })
    }
}

/// One greedy sweep attempt.
fn sweep(link: &FramedLink, t: &super::Trace, first: usize, first_slot: usize) -> Option<MorseLink> {
    let nx = link.crossings.len();
    let mut comp_of: HashMap<i64, usize> = HashMap::new();
    for (ci, c) in link.components.iter().enumerate() {
        for a in &c.arcs {
            comp_of.insert(*a, ci);
        }
    }
    let mut ends: HashMap<i64, Vec<(usize, usize)>> = HashMap::new();
    for (x, c) in link.crossings.iter().enumerate() {
        for (s, a) in c.arcs.iter().enumerate() {
            ends.entry(*a).or_default().push((x, s));
        }
    }
    let mut heads: HashSet<(usize, usize)> = HashSet::new();
    for v in &t.visits {
        for &(x, s) in v {
            heads.insert((x, s as usize));
        }
    }
    let arc_at = |x: usize, s: usize| link.crossings[x].arcs[s % 4];

    let mut fr: Vec<i64> = Vec::new();
    let mut attached: HashSet<(usize, usize)> = HashSet::new();
    let mut done = vec![false; nx];
    let mut events = Vec::new();

    let target = |fr: &[i64], attached: &HashSet<(usize, usize)>, i: usize| -> Option<(usize, usize)> {
        let a = fr[i];
        if fr.iter().filter(|&&b| b == a).count() != 1 {
            return None;
        }
        ends[&a].iter().copied().find(|e| !attached.contains(e))
    };

    for step in 0..nx {
        // best run of frontier strands entering one crossing in ccw order
        let mut pick: Option<(usize, usize, usize, usize)> = None; // (m, pos, x, k)
        for p in 0..fr.len() {
            let Some((x, k)) = target(&fr, &attached, p) else { continue };
            let mut m = 1;
            while m < 4 && p + m < fr.len() && target(&fr, &attached, p + m) == Some((x, (k + m) % 4)) {
                m += 1;
            }
            if pick.map_or(true, |(bm, ..)| m > bm) {
                pick = Some((m, p, x, k));
            }
        }
        let (m, p, x, k) = match pick {
            Some(v) => v,
            None => {
                let x = if step == 0 { first } else { (0..nx).find(|&y| !done[y])? };
                let k = if step == 0 { first_slot } else { 0 };
                (0, fr.len(), x, k)
            }
        };
        let (c, s) = match m {
            0 => {
                let a = arc_at(x, k);
                let b = arc_at(x, k + 1);
                events.push(MorseEvent::Cup { pos: p, comp: comp_of[&a], left_up: !heads.contains(&(x, k)) });
                fr.insert(p, a);
                fr.insert(p, a);
                events.push(MorseEvent::Cup { pos: p + 2, comp: comp_of[&b], left_up: heads.contains(&(x, (k + 1) % 4)) });
                fr.insert(p + 2, b);
                fr.insert(p + 2, b);
                (p + 1, k)
            }
            1 => {
                let b = arc_at(x, k + 1);
                events.push(MorseEvent::Cup { pos: p + 1, comp: comp_of[&b], left_up: heads.contains(&(x, (k + 1) % 4)) });
                fr.insert(p + 1, b);
                fr.insert(p + 1, b);
                (p, k)
            }
            2 => (p, k),
            _ => (p + 1, (k + 1) % 4),
        };
        events.push(MorseEvent::Cross { pos: c, over_left: s % 2 == 1 });
        fr[c] = arc_at(x, s + 3);
        fr[c + 1] = arc_at(x, s + 2);
        for j in 0..4 {
            attached.insert((x, j));
        }
        done[x] = true;
        cap_pairs(&mut fr, &mut events);
    }
    if !fr.is_empty() {
        return None;
    }
    for (ci, comp) in link.components.iter().enumerate() {
        if t.visits[ci].is_empty() {
            debug_assert_eq!(comp.arcs.len(), 1);
            events.push(MorseEvent::Cup { pos: 0, comp: ci, left_up: true });
            events.push(MorseEvent::Cap { pos: 0 });
        }
    }
    let components = link
        .components
        .iter()
        .map(|c| MorseComponent { framing: c.framing.clone(), color: c.color, role: c.role })
        .collect();
    Some(MorseLink { events, components })
}

fn cap_pairs(fr: &mut Vec<i64>, events: &mut Vec<MorseEvent>) {
    let mut i = 0;
    while i + 1 < fr.len() {
        if fr[i] == fr[i + 1] {
            events.push(MorseEvent::Cap { pos: i });
            fr.drain(i..i + 2);
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
}
