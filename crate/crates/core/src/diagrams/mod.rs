//! Admissible trivalent graphs with colored legs, the deframing involution,
//! the relations among them and the integral structure of the quotients.
//!
//! A graph is stored as a rotation system. Dart `2e + k` is end `k` of edge
//! `e`; each vertex lists its darts in cyclic order (one dart for a univalent
//! vertex, three for a trivalent one). Color 0 is white.

mod enumerate;
mod quotient;
mod relations;

pub use enumerate::{enumerate_graphs, MAX_DEGREE};
pub use quotient::{
    closed_index_exponent, parity_split, quotient_structure, theta_union_independence, theta_unions, ParitySplit, Quotient,
    QuotientStructure,
};
pub use relations::{
    antisymmetry, build_relations, ihx, isolated_white, relations_of, symmetry_color, symmetry_leg, y_relation, RelationKind,
    RelationSet,
};

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_algebra::{Canonical, FormalSum};

pub const WHITE: u8 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub ends: [usize; 2],
    pub color: u8,
}

#[derive(Clone, Debug)]
pub struct AdmissibleGraph {
    pub edges: Vec<Edge>,
    pub rotation: Vec<Vec<usize>>,
}

impl PartialEq for AdmissibleGraph {
    fn eq(&self, o: &Self) -> bool {
        self.canonical_code() == o.canonical_code()
    }
}

impl Eq for AdmissibleGraph {}

impl Canonical for AdmissibleGraph {
    fn encode(&self) -> Vec<u8> {
        self.canonical_code().iter().flat_map(|x| x.to_le_bytes()).collect()
    }
}

impl AdmissibleGraph {
    /// Graph on `n` vertices; each vertex lists its darts in increasing order.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u8)]) -> Self {
        let mut rotation = vec![Vec::new(); n];
        let edges: Vec<Edge> = edges.iter().map(|&(a, b, color)| Edge { ends: [a, b], color }).collect();
        for (e, edge) in edges.iter().enumerate() {
            rotation[edge.ends[0]].push(2 * e);
            rotation[edge.ends[1]].push(2 * e + 1);
        }
        for r in &mut rotation {
            r.sort();
        }
        AdmissibleGraph { edges, rotation }
    }

    /// Like [`from_edges`](Self::from_edges), then checks admissibility.
    pub fn new(n: usize, edges: &[(usize, usize, u8)]) -> Result<Self> {
        let g = Self::from_edges(n, edges);
        g.validate()?;
        Ok(g)
    }

    pub fn empty() -> Self {
        AdmissibleGraph { edges: vec![], rotation: vec![] }
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn vertex_of(&self, dart: usize) -> usize {
        self.edges[dart / 2].ends[dart % 2]
    }

    pub fn color_of(&self, dart: usize) -> u8 {
        self.edges[dart / 2].color
    }

    pub fn valence(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn trivalent_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.valence(v) == 3).collect()
    }

    pub fn num_trivalent(&self) -> usize {
        self.rotation.iter().filter(|r| r.len() == 3).count()
    }

    /// Number of white edges.
    pub fn degree(&self) -> usize {
        self.edges.iter().filter(|e| e.color == WHITE).count()
    }

    /// Largest color present.
    pub fn num_colors(&self) -> u8 {
        self.edges.iter().map(|e| e.color).max().unwrap_or(0)
    }

    /// Both ends univalent.
    pub fn is_isolated(&self, e: usize) -> bool {
        self.edges[e].ends.iter().all(|&v| self.valence(v) == 1)
    }

    /// Both ends trivalent.
    pub fn is_internal(&self, e: usize) -> bool {
        self.edges[e].ends.iter().all(|&v| self.valence(v) == 3)
    }

    /// No white edge has a univalent end.
    pub fn is_closed(&self) -> bool {
        (0..self.edges.len()).all(|e| self.edges[e].color != WHITE || self.is_internal(e))
    }

    /// Count of colored legs at trivalent vertices.
    pub fn colored_legs(&self) -> usize {
        (0..self.edges.len()).filter(|&e| self.edges[e].color != WHITE && !self.is_isolated(e)).count()
    }

    /// Non-isolated edges of each color `1..=m` all come in even numbers.
    pub fn is_even(&self) -> bool {
        (1..=self.num_colors()).all(|c| {
            (0..self.edges.len()).filter(|&e| self.edges[e].color == c && !self.is_isolated(e)).count() % 2 == 0
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Invalid(s));
        let nd = 2 * self.edges.len();
        let mut seen = vec![false; nd];
        for (v, r) in self.rotation.iter().enumerate() {
            if r.len() != 1 && r.len() != 3 {
                return bad(format!("vertex {v} has valence {}", r.len()));
            }
            for &d in r {
                if d >= nd || seen[d] || self.vertex_of(d) != v {
                    return bad(format!("dart {d} misplaced at vertex {v}"));
                }
                seen[d] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("dart missing from rotation".into());
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.ends[0] == edge.ends[1] {
                return bad(format!("edge {e} is a loop"));
            }
            if edge.color != WHITE && self.is_internal(e) {
                return bad(format!("colored edge {e} has no univalent end"));
            }
        }
        for (v, r) in self.rotation.iter().enumerate() {
            if r.len() == 3 {
                let cs: Vec<u8> = r.iter().map(|&d| self.color_of(d)).collect();
                if !cs.contains(&WHITE) {
                    return bad(format!("vertex {v} meets no white edge"));
                }
                for c in 1..=self.num_colors() {
                    if cs.iter().filter(|&&x| x == c).count() > 1 {
                        return bad(format!("vertex {v} meets color {c} twice"));
                    }
                }
            }
        }
        for c in 1..=self.num_colors() {
            let es: Vec<usize> = (0..self.edges.len()).filter(|&e| self.edges[e].color == c).collect();
            if es.is_empty() {
                return bad(format!("color {c} is empty"));
            }
            if es.len() > 1 && es.iter().any(|&e| self.is_isolated(e)) {
                return bad(format!("isolated edge of color {c} is not alone"));
            }
        }
        Ok(())
    }

    /// Reverses the cyclic order at `v`.
    pub fn flip(&self, v: usize) -> Self {
        self.flip_all(&[v])
    }

    pub fn flip_all(&self, vs: &[usize]) -> Self {
        let mut g = self.clone();
        for &v in vs {
            g.rotation[v].reverse();
        }
        g
    }

    /// Sets the cyclic order at `v`; `darts` must be a permutation of the current one.
    pub fn with_rotation(&self, v: usize, darts: &[usize]) -> Self {
        let mut g = self.clone();
        g.rotation[v] = darts.to_vec();
        g
    }

    pub fn disjoint_union(&self, o: &Self) -> Self {
        let (nv, ne) = (self.num_vertices(), self.edges.len());
        let mut g = self.clone();
        g.edges.extend(o.edges.iter().map(|e| Edge { ends: [e.ends[0] + nv, e.ends[1] + nv], color: e.color }));
        g.rotation.extend(o.rotation.iter().map(|r| r.iter().map(|d| d + 2 * ne).collect()));
        g
    }

    /// Replaces each trivalent vertex in `vs` by three univalent ones.
    pub fn split(&self, vs: &[usize]) -> Self {
        let mut g = self.clone();
        for &v in vs {
            let darts = std::mem::take(&mut g.rotation[v]);
            for (k, d) in darts.into_iter().enumerate() {
                let w = if k == 0 { v } else { g.rotation.len() };
                if k == 0 {
                    g.rotation[v] = vec![d];
                } else {
                    g.rotation.push(vec![d]);
                }
                g.edges[d / 2].ends[d % 2] = w;
            }
        }
        g
    }

    /// Drops edges, then vertices left without darts.
    pub fn remove_edges(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.edges.len()).filter(|e| !drop.contains(e)).collect();
        let mut new_e = vec![usize::MAX; self.edges.len()];
        for (k, &e) in keep.iter().enumerate() {
            new_e[e] = k;
        }
        let dart = |d: usize| 2 * new_e[d / 2] + d % 2;
        let mut new_v = vec![usize::MAX; self.num_vertices()];
        let mut rotation = Vec::new();
        for (v, r) in self.rotation.iter().enumerate() {
            let r: Vec<usize> = r.iter().filter(|&&d| new_e[d / 2] != usize::MAX).map(|&d| dart(d)).collect();
            if !r.is_empty() {
                new_v[v] = rotation.len();
                rotation.push(r);
            }
        }
        let edges = keep
            .iter()
            .map(|&e| {
                let x = self.edges[e];
                Edge { ends: [new_v[x.ends[0]], new_v[x.ends[1]]], color: x.color }
            })
            .collect();
        AdmissibleGraph { edges, rotation }
    }

    /// Per color: drop isolated edges if the color has other edges, else keep one.
    pub fn prune_isolated_colored(&self) -> Self {
        let mut drop = Vec::new();
        for c in 1..=self.num_colors() {
            let es: Vec<usize> = (0..self.edges.len()).filter(|&e| self.edges[e].color == c).collect();
            let iso: Vec<usize> = es.iter().copied().filter(|&e| self.is_isolated(e)).collect();
            if iso.len() == es.len() {
                drop.extend(iso.into_iter().skip(1));
            } else {
                drop.extend(iso);
            }
        }
        if drop.is_empty() {
            self.clone()
        } else {
            self.remove_edges(&drop)
        }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let k = out.len();
            let mut vs = vec![s];
            comp[s] = k;
            let mut i = 0;
            while i < vs.len() {
                let v = vs[i];
                i += 1;
                for &d in &self.rotation[v] {
                    let w = self.vertex_of(d ^ 1);
                    if comp[w] == usize::MAX {
                        comp[w] = k;
                        vs.push(w);
                    }
                }
            }
            out.push(vs);
        }
        out
    }

    /// Breadth-first traversal from dart `s` following the rotations: vertex
    /// order and each vertex's darts starting from its entry dart.
    fn traverse(&self, s: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.num_vertices();
        let mut idx = vec![usize::MAX; n];
        let mut order = Vec::new();
        let mut lists: Vec<Vec<usize>> = Vec::new();
        let rotated = |v: usize, d: usize| {
            let r = &self.rotation[v];
            let k = r.iter().position(|&x| x == d).expect("dart at vertex");
            (0..r.len()).map(|i| r[(k + i) % r.len()]).collect::<Vec<_>>()
        };
        let v0 = self.vertex_of(s);
        idx[v0] = 0;
        order.push(v0);
        lists.push(rotated(v0, s));
        let mut q = VecDeque::from([0usize]);
        while let Some(i) = q.pop_front() {
            for k in 0..lists[i].len() {
                let d = lists[i][k];
                let w = self.vertex_of(d ^ 1);
                if idx[w] == usize::MAX {
                    idx[w] = order.len();
                    order.push(w);
                    lists.push(rotated(w, d ^ 1));
                    q.push_back(idx[w]);
                }
            }
        }
        (order, lists)
    }

    fn traversal_code(&self, order: &[usize], lists: &[Vec<usize>]) -> Vec<u16> {
        let mut idx = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in order.iter().enumerate() {
            idx[v] = i;
        }
        let mut code = Vec::with_capacity(order.len() * 10);
        for l in lists {
            code.push(l.len() as u16);
            for &d in l {
                let w = idx[self.vertex_of(d ^ 1)];
                let pos = lists[w].iter().position(|&x| x == d ^ 1).expect("opposite dart");
                code.extend([self.color_of(d) as u16, w as u16, pos as u16]);
            }
        }
        code
    }

    /// Per component, the least traversal code over all starting darts.
    fn best_traversals(&self) -> Vec<(Vec<u16>, Vec<usize>, Vec<Vec<usize>>)> {
        let mut out: Vec<(Vec<u16>, Vec<usize>, Vec<Vec<usize>>)> = self
            .components()
            .into_iter()
            .map(|vs| {
                let mut best: Option<(Vec<u16>, Vec<usize>, Vec<Vec<usize>>)> = None;
                for &v in &vs {
                    for &s in &self.rotation[v] {
                        let (order, lists) = self.traverse(s);
                        let code = self.traversal_code(&order, &lists);
                        if best.as_ref().map_or(true, |b| code < b.0) {
                            best = Some((code, order, lists));
                        }
                    }
                }
                best.expect("component has a dart")
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Isomorphism invariant code (orientation-preserving isomorphisms).
    pub fn canonical_code(&self) -> Vec<u16> {
        let mut code = Vec::new();
        for (c, _, _) in self.best_traversals() {
            code.push(c.len() as u16);
            code.extend(c);
        }
        code
    }

    /// The isomorphic graph labelled in canonical traversal order.
    pub fn canonical(&self) -> Self {
        let mut new_v = vec![usize::MAX; self.num_vertices()];
        let mut new_e = vec![usize::MAX; self.edges.len()];
        let mut first_end = vec![0usize; self.edges.len()];
        let mut edges = Vec::new();
        let mut lists_all = Vec::new();
        for (_, order, lists) in self.best_traversals() {
            for (&v, l) in order.iter().zip(lists) {
                new_v[v] = lists_all.len();
                for &d in &l {
                    if new_e[d / 2] == usize::MAX {
                        new_e[d / 2] = edges.len();
                        first_end[d / 2] = d % 2;
                        edges.push(self.edges[d / 2]);
                    }
                }
                lists_all.push(l);
            }
        }
        let dart = |d: usize| 2 * new_e[d / 2] + (d % 2 != first_end[d / 2]) as usize;
        let rotation = lists_all.iter().map(|l| l.iter().map(|&d| dart(d)).collect()).collect();
        for (e, x) in self.edges.iter().enumerate() {
            let k = first_end[e];
            edges[new_e[e]] = Edge { ends: [new_v[x.ends[k]], new_v[x.ends[1 - k]]], color: x.color };
        }
        AdmissibleGraph { edges, rotation }
    }

    /// Graph with vertices and edges relabelled by the given permutations and
    /// each trivalent rotation started at `shift[v]`; isomorphic to `self`.
    pub fn relabel(&self, vperm: &[usize], eperm: &[usize], swap_ends: &[bool], shift: &[usize]) -> Self {
        let dart = |d: usize| 2 * eperm[d / 2] + ((d % 2 == 1) != swap_ends[d / 2]) as usize;
        let mut edges = vec![self.edges[0]; self.edges.len()];
        for (e, x) in self.edges.iter().enumerate() {
            let ends = if swap_ends[e] { [x.ends[1], x.ends[0]] } else { x.ends };
            edges[eperm[e]] = Edge { ends: [vperm[ends[0]], vperm[ends[1]]], color: x.color };
        }
        let mut rotation = vec![Vec::new(); self.num_vertices()];
        for (v, r) in self.rotation.iter().enumerate() {
            let k = shift[v] % r.len();
            rotation[vperm[v]] = (0..r.len()).map(|i| dart(r[(k + i) % r.len()])).collect();
        }
        AdmissibleGraph { edges, rotation }
    }
}

/// An edge of the given color with two univalent ends.
pub fn isolated_edge(color: u8) -> AdmissibleGraph {
    AdmissibleGraph::from_edges(2, &[(0, 1, color)])
}

/// Two trivalent vertices joined by three white edges.
pub fn white_theta() -> AdmissibleGraph {
    AdmissibleGraph::from_edges(2, &[(0, 1, WHITE), (0, 1, WHITE), (0, 1, WHITE)])
}

/// Two trivalent vertices joined by two white edges, each with an `i`-colored leg.
pub fn w_graph(i: u8) -> AdmissibleGraph {
    AdmissibleGraph::from_edges(4, &[(0, 1, WHITE), (0, 1, WHITE), (0, 2, i), (1, 3, i)])
}

/// Two trivalent vertices joined by one white edge, each with an `i`- and a `j`-colored leg.
/// The two vertices carry opposite orientations relative to the legs.
pub fn h_graph(i: u8, j: u8) -> AdmissibleGraph {
    let g = AdmissibleGraph::from_edges(6, &[(0, 1, WHITE), (0, 2, i), (0, 3, j), (1, 4, i), (1, 5, j)]);
    // vertex 0: (white, i, j); vertex 1: (white, j, i)
    g.with_rotation(1, &[1, 8, 6])
}

/// Closed white cycle of length `n` with an `i`-colored leg at every vertex.
pub fn legged_cycle(n: usize, i: u8) -> AdmissibleGraph {
    let mut es: Vec<(usize, usize, u8)> = (0..n).map(|k| (k, (k + 1) % n, WHITE)).collect();
    es.extend((0..n).map(|k| (k, n + k, i)));
    AdmissibleGraph::from_edges(2 * n, &es)
}

/// `(-1)^{t(Γ)} Σ_S (-1)^{|S|} Γ_S` over subsets `S` of trivalent vertices,
/// where `Γ_S` splits every vertex of `S` and then prunes isolated colored
/// edges. The global sign makes this an involution; it is the identity on
/// graphs without trivalent vertices.
pub fn deframe(g: &AdmissibleGraph) -> FormalSum<AdmissibleGraph> {
    let out = deframe_unsigned(g);
    if g.num_trivalent() % 2 == 0 {
        out
    } else {
        out.negate()
    }
}

/// `Σ_S (-1)^{|S|} Γ_S` without the global sign.
pub fn deframe_unsigned(g: &AdmissibleGraph) -> FormalSum<AdmissibleGraph> {
    let tv = g.trivalent_vertices();
    let mut out = FormalSum::zero();
    for mask in 0u32..(1 << tv.len()) {
        let s: Vec<usize> = tv.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect();
        let sign = if s.len() % 2 == 0 { 1 } else { -1 };
        out.add_term(sign.into(), g.split(&s).prune_isolated_colored());
    }
    out
}

/// [`deframe`] extended linearly.
pub fn deframe_sum(x: &FormalSum<AdmissibleGraph>) -> FormalSum<AdmissibleGraph> {
    x.flat_map(deframe)
}

/// Sparse matrix of [`deframe`] over a graph basis: row `i` lists the
/// coefficients of `deframe(basis[i])` by basis index.
pub fn deframe_matrix(basis: &[AdmissibleGraph]) -> Result<Vec<BTreeMap<usize, BigInt>>> {
    let index: HashMap<Vec<u8>, usize> = basis.iter().enumerate().map(|(i, g)| (g.encode(), i)).collect();
    basis
        .par_iter()
        .map(|g| {
            let mut row = BTreeMap::new();
            for (c, h) in deframe(g).iter() {
                let j = index.get(&h.encode()).ok_or_else(|| Error::TheoremViolation("deframing leaves the basis".into()))?;
                row.insert(*j, c.clone());
            }
            Ok(row)
        })
        .collect()
}

/// Graphs of the given size on which deframing twice is not the identity.
pub fn deframe_involution_failures(m: u8, degree: usize) -> Result<Vec<AdmissibleGraph>> {
    let basis = enumerate_graphs(m, degree, false)?;
    let d = deframe_matrix(&basis)?;
    let bad = (0..basis.len())
        .into_par_iter()
        .filter(|&i| {
            let mut sq: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (j, a) in &d[i] {
                for (k, b) in &d[*j] {
                    *sq.entry(*k).or_insert_with(BigInt::zero) += a * b;
                }
            }
            sq.retain(|_, v| !v.is_zero());
            !(sq.len() == 1 && sq.get(&i).is_some_and(|v| v.is_one()))
        })
        .collect::<Vec<usize>>();
    Ok(bad.into_iter().map(|i| basis[i].clone()).collect())
}

#[cfg(test)]
mod tests;
