//! Relation vectors among admissible graphs of one degree.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Signed;

use super::{enumerate_graphs, AdmissibleGraph, WHITE};
use crate::error::{Error, Result};
use crate::exact_algebra::{Canonical, FormalSum, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    /// Reversing a vertex with an internal edge negates.
    AS,
    /// Reversing the trivalent end of an external white edge is harmless.
    S1,
    /// Reversing every vertex meeting one color is harmless.
    S2,
    IHX,
    /// An isolated white edge kills the graph.
    I,
    /// Twice a Y-shaped component is its doubled theta.
    Y,
}

impl RelationKind {
    pub fn name(&self) -> &'static str {
        match self {
            RelationKind::AS => "AS",
            RelationKind::S1 => "S1",
            RelationKind::S2 => "S2",
            RelationKind::IHX => "IHX",
            RelationKind::I => "I",
            RelationKind::Y => "Y",
        }
    }
}

fn single(g: AdmissibleGraph) -> FormalSum<AdmissibleGraph> {
    FormalSum::single(g)
}

/// `Γ + flip_v Γ`, if `v` is trivalent with an internal incident edge.
pub fn antisymmetry(g: &AdmissibleGraph, v: usize) -> Option<FormalSum<AdmissibleGraph>> {
    if g.valence(v) != 3 || !g.rotation[v].iter().any(|&d| g.is_internal(d / 2)) {
        return None;
    }
    Some(single(g.clone()).plus(&single(g.flip(v))))
}

/// `Γ − flip_v Γ` for the trivalent end `v` of a white edge `e` with one univalent end.
pub fn symmetry_leg(g: &AdmissibleGraph, e: usize) -> Option<FormalSum<AdmissibleGraph>> {
    let edge = g.edges[e];
    if edge.color != WHITE {
        return None;
    }
    let tri: Vec<usize> = edge.ends.iter().copied().filter(|&v| g.valence(v) == 3).collect();
    match tri[..] {
        [v] => Some(single(g.clone()).minus(&single(g.flip(v)))),
        _ => None,
    }
}

/// `Γ − Γ'` where `Γ'` reverses every trivalent vertex meeting color `c`.
pub fn symmetry_color(g: &AdmissibleGraph, c: u8) -> Option<FormalSum<AdmissibleGraph>> {
    let vs: Vec<usize> = g.trivalent_vertices().into_iter().filter(|&v| g.rotation[v].iter().any(|&d| g.color_of(d) == c)).collect();
    if vs.is_empty() {
        return None;
    }
    Some(single(g.clone()).minus(&single(g.flip_all(&vs))))
}

/// Sets the darts at `u` and `v` (moving edge ends along).
fn place(g: &AdmissibleGraph, u: usize, du: [usize; 3], v: usize, dv: [usize; 3]) -> AdmissibleGraph {
    let mut h = g.clone();
    for (w, ds) in [(u, du), (v, dv)] {
        h.rotation[w] = ds.to_vec();
        for d in ds {
            h.edges[d / 2].ends[d % 2] = w;
        }
    }
    h
}

/// `I − H + X` around the internal white edge `e`, if its four neighbouring
/// edges are distinct and no two share a color. Reading the picture with
/// clockwise vertex orientations and legs `A, B, C, D` at top left, top right,
/// bottom right, bottom left: `I` has vertices `(A, B, e)` and `(D, e, C)`,
/// `H` has `(A, e, D)` and `(B, C, e)`, `X` has `(D, B, e)` and `(A, C, e)`.
pub fn ihx(g: &AdmissibleGraph, e: usize) -> Option<FormalSum<AdmissibleGraph>> {
    if g.edges[e].color != WHITE || !g.is_internal(e) {
        return None;
    }
    let [u, v] = g.edges[e].ends;
    let (eu, ev) = (2 * e, 2 * e + 1);
    let after = |w: usize, d: usize| {
        let r = &g.rotation[w];
        let k = r.iter().position(|&x| x == d).expect("dart at vertex");
        (r[(k + 1) % 3], r[(k + 2) % 3])
    };
    let (a, b) = after(u, eu);
    let (c, d) = after(v, ev);
    let legs = [a, b, c, d];
    let es: BTreeSet<usize> = legs.iter().map(|x| x / 2).collect();
    if es.len() != 4 {
        return None;
    }
    let colors: Vec<u8> = legs.iter().map(|&x| g.color_of(x)).filter(|&c| c != WHITE).collect();
    if colors.iter().collect::<BTreeSet<_>>().len() != colors.len() {
        return None;
    }
    let i = place(g, u, [a, b, eu], v, [c, d, ev]);
    let h = place(g, u, [a, eu, d], v, [b, c, ev]);
    let x = place(g, u, [d, b, eu], v, [a, c, ev]);
    Some(single(i).minus(&single(h)).plus(&single(x)))
}

/// `Γ` itself, if it has an isolated white edge.
pub fn isolated_white(g: &AdmissibleGraph) -> Option<FormalSum<AdmissibleGraph>> {
    (0..g.edges.len()).any(|e| g.edges[e].color == WHITE && g.is_isolated(e)).then(|| single(g.clone()))
}

/// `2Γ − Γ'` for a trivalent `v` whose three neighbours are univalent. `Γ'`
/// doubles the Y: white legs become edges between two new vertices, colored
/// legs reappear at both, and the copies carry opposite orientations.
pub fn y_relation(g: &AdmissibleGraph, v: usize) -> Option<FormalSum<AdmissibleGraph>> {
    if g.valence(v) != 3 || g.rotation[v].iter().any(|&d| g.valence(g.vertex_of(d ^ 1)) != 1) {
        return None;
    }
    let darts = g.rotation[v].clone();
    let rest = g.remove_edges(&darts.iter().map(|d| d / 2).collect::<Vec<_>>());
    let mut edges: Vec<(usize, usize, u8)> = Vec::new();
    let mut n = 2;
    let mut slot = [[0usize; 3]; 2];
    for (k, &d) in darts.iter().enumerate() {
        let c = g.color_of(d);
        if c == WHITE {
            slot[0][k] = 2 * edges.len();
            slot[1][k] = 2 * edges.len() + 1;
            edges.push((0, 1, WHITE));
        } else {
            for (s, w) in slot.iter_mut().zip([0, 1]) {
                s[k] = 2 * edges.len();
                edges.push((w, n, c));
                n += 1;
            }
        }
    }
    let mut theta = AdmissibleGraph::from_edges(n, &edges);
    theta.rotation[0] = slot[0].to_vec();
    theta.rotation[1] = vec![slot[1][0], slot[1][2], slot[1][1]];
    let doubled = rest.disjoint_union(&theta).prune_isolated_colored();
    Some(single(g.clone()).scale(&2.into()).minus(&single(doubled)))
}

/// Every relation vector attached to `g`.
pub fn relations_of(g: &AdmissibleGraph, closed_only: bool) -> Vec<(RelationKind, FormalSum<AdmissibleGraph>)> {
    let mut out = Vec::new();
    for v in g.trivalent_vertices() {
        if let Some(r) = antisymmetry(g, v) {
            out.push((RelationKind::AS, r));
        }
    }
    for c in 1..=g.num_colors() {
        if let Some(r) = symmetry_color(g, c) {
            out.push((RelationKind::S2, r));
        }
    }
    for e in 0..g.edges.len() {
        if let Some(r) = ihx(g, e) {
            out.push((RelationKind::IHX, r));
        }
    }
    if closed_only {
        return out;
    }
    for e in 0..g.edges.len() {
        if let Some(r) = symmetry_leg(g, e) {
            out.push((RelationKind::S1, r));
        }
    }
    if let Some(r) = isolated_white(g) {
        out.push((RelationKind::I, r));
    }
    for v in g.trivalent_vertices() {
        if let Some(r) = y_relation(g, v) {
            out.push((RelationKind::Y, r));
        }
    }
    out
}

/// Graph basis of one degree with its relations, duplicates and zero vectors removed.
#[derive(Clone, Debug)]
pub struct RelationSet {
    pub m: u8,
    pub degree: usize,
    pub closed_only: bool,
    pub basis: Vec<AdmissibleGraph>,
    pub relations: Vec<(RelationKind, FormalSum<AdmissibleGraph>)>,
    index: HashMap<Vec<u8>, usize>,
}

impl RelationSet {
    pub fn index_of(&self, g: &AdmissibleGraph) -> Option<usize> {
        self.index.get(&g.encode()).copied()
    }

    /// Coordinates of `x` in the graph basis.
    pub fn coordinates(&self, x: &FormalSum<AdmissibleGraph>) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::from(0); self.basis.len()];
        for (c, g) in x.iter() {
            let i = self.index_of(g).ok_or_else(|| Error::Invalid("graph outside the basis".into()))?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn count(&self, kind: RelationKind) -> usize {
        self.relations.iter().filter(|(k, _)| *k == kind).count()
    }

    /// Relations as rows over the graph basis.
    pub fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relations.len(), self.basis.len());
        for (i, (_, r)) in self.relations.iter().enumerate() {
            for (c, g) in r.iter() {
                let j = self.index_of(g).expect("relation terms lie in the basis");
                m.set(i, j, m.get(i, j) + c);
            }
        }
        m
    }
}

/// Enumerates the basis and all its relations.
pub fn build_relations(m: u8, degree: usize, closed_only: bool) -> Result<RelationSet> {
    let basis = enumerate_graphs(m, degree, closed_only)?;
    let index: HashMap<Vec<u8>, usize> = basis.iter().enumerate().map(|(i, g)| (g.encode(), i)).collect();
    let mut seen: BTreeSet<Vec<(usize, BigInt)>> = BTreeSet::new();
    let mut relations = Vec::new();
    for g in &basis {
        for (kind, r) in relations_of(g, closed_only) {
            let mut key: Vec<(usize, BigInt)> = Vec::new();
            for (c, h) in r.iter() {
                let j = *index.get(&h.encode()).ok_or_else(|| {
                    Error::TheoremViolation(format!("{} relation leaves the basis", kind.name()))
                })?;
                key.push((j, c.clone()));
            }
            if key.is_empty() {
                continue;
            }
            key.sort();
            if key[0].1.is_negative() {
                for t in &mut key {
                    t.1 = -t.1.clone();
                }
            }
            if seen.insert(key) {
                relations.push((kind, r));
            }
        }
    }
    Ok(RelationSet { m, degree, closed_only, basis, relations, index })
}
