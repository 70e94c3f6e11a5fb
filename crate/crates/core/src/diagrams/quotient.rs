//! Integral structure of graph spaces modulo relations, via Smith normal form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{build_relations, h_graph, isolated_edge, w_graph, white_theta, AdmissibleGraph, RelationSet};
use crate::error::Result;
use crate::exact_algebra::{smith_decompose, smith_normal_form, FormalSum, IntMatrix, SmithForm};

/// Free rank and the nontrivial invariant factors of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

fn is_power_of_two(x: &BigInt) -> bool {
    x.is_positive() && (x & (x - BigInt::one())).is_zero()
}

impl QuotientStructure {
    fn from_smith(cols: usize, factors: &[BigInt], rank: usize) -> Self {
        let torsion = factors.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        QuotientStructure { rank: cols - rank, torsion }
    }

    /// Torsion factors that are not powers of two.
    pub fn odd_torsion(&self) -> Vec<BigInt> {
        self.torsion.iter().filter(|d| !is_power_of_two(d)).cloned().collect()
    }

    /// Every element has order at most two.
    pub fn is_two_torsion(&self) -> bool {
        self.rank == 0 && self.torsion.iter().all(|d| *d == BigInt::from(2))
    }

    /// `Z^r ⊕ Z_a ⊕ ...`, or `0`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// A graph space modulo its relations (and optionally extra vectors).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub relations: RelationSet,
    smith: SmithForm,
}

impl Quotient {
    pub fn new(m: u8, degree: usize, closed_only: bool) -> Result<Self> {
        Ok(Self::from_relations(build_relations(m, degree, closed_only)?, &[]))
    }

    /// Quotient by the relations and also by `extra`.
    pub fn from_relations(relations: RelationSet, extra: &[FormalSum<AdmissibleGraph>]) -> Self {
        let mut m = relations.matrix();
        if !extra.is_empty() {
            let mut rows = m.to_rows();
            for x in extra {
                rows.push(relations.coordinates(x).expect("extra vectors lie in the basis"));
            }
            m = IntMatrix::from_rows(&rows);
        }
        if m.rows() == 0 {
            m = IntMatrix::zeros(1, relations.basis.len());
        }
        let smith = smith_decompose(&m, true);
        Quotient { relations, smith }
    }

    pub fn structure(&self) -> QuotientStructure {
        QuotientStructure::from_smith(self.relations.basis.len(), &self.smith.factors, self.smith.rank)
    }

    /// `x · V` in the Smith coordinates.
    fn smith_coordinates(&self, x: &FormalSum<AdmissibleGraph>) -> Result<Vec<BigInt>> {
        let x = self.relations.coordinates(x)?;
        let n = x.len();
        Ok((0..n).map(|j| (0..n).filter(|&i| !x[i].is_zero()).map(|i| &x[i] * self.smith.v.get(i, j)).sum()).collect())
    }

    /// Order of the class of `x`; `None` when infinite.
    pub fn order_of(&self, x: &FormalSum<AdmissibleGraph>) -> Result<Option<BigInt>> {
        let y = self.smith_coordinates(x)?;
        let r = self.smith.rank;
        if y[r..].iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        let mut order = BigInt::one();
        for (d, c) in self.smith.factors[..r].iter().zip(&y) {
            order = order.lcm(&(d / d.gcd(c)));
        }
        Ok(Some(order))
    }

    /// Image of `x` in the free part `Z^rank`.
    pub fn free_part(&self, x: &FormalSum<AdmissibleGraph>) -> Result<Vec<BigInt>> {
        Ok(self.smith_coordinates(x)?[self.smith.rank..].to_vec())
    }

    /// Rank of the subgroup generated by the classes of `xs`.
    pub fn rank_of(&self, xs: &[FormalSum<AdmissibleGraph>]) -> Result<usize> {
        if xs.is_empty() || self.structure().rank == 0 {
            return Ok(0);
        }
        let rows: Vec<Vec<BigInt>> = xs.iter().map(|x| self.free_part(x)).collect::<Result<_>>()?;
        Ok(smith_normal_form(&IntMatrix::from_rows(&rows)).1)
    }

    /// The classes of `xs` are Z-linearly independent.
    pub fn independent(&self, xs: &[FormalSum<AdmissibleGraph>]) -> Result<bool> {
        Ok(self.rank_of(xs)? == xs.len())
    }
}

/// Rank and torsion of the degree-`degree` graph space modulo relations.
pub fn quotient_structure(m: u8, degree: usize, closed_only: bool) -> Result<QuotientStructure> {
    Ok(Quotient::new(m, degree, closed_only)?.structure())
}

/// Disjoint unions of closed theta-shaped graphs (the doubled Y's) of total
/// degree `degree ≥ 1`, with an isolated edge for every color they miss.
pub fn theta_unions(m: u8, degree: usize) -> Vec<AdmissibleGraph> {
    let mut pieces: Vec<(usize, AdmissibleGraph)> = vec![(3, white_theta())];
    for i in 1..=m {
        pieces.push((2, w_graph(i)));
        for j in i + 1..=m {
            pieces.push((1, h_graph(i, j)));
        }
    }
    fn go(pieces: &[(usize, AdmissibleGraph)], from: usize, left: usize, cur: AdmissibleGraph, out: &mut Vec<AdmissibleGraph>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for k in from..pieces.len() {
            if pieces[k].0 <= left {
                go(pieces, k, left - pieces[k].0, cur.disjoint_union(&pieces[k].1), out);
            }
        }
    }
    let mut raw = Vec::new();
    if degree > 0 {
        go(&pieces, 0, degree, AdmissibleGraph::empty(), &mut raw);
    }
    let mut out: BTreeMap<Vec<u16>, AdmissibleGraph> = BTreeMap::new();
    for mut g in raw {
        for c in 1..=m {
            if !g.edges.iter().any(|e| e.color == c) {
                g = g.disjoint_union(&isolated_edge(c));
            }
        }
        let g = g.canonical();
        out.insert(g.canonical_code(), g);
    }
    out.into_values().collect()
}

/// The theta unions of degree `degree` are linearly independent among closed graphs.
pub fn theta_union_independence(m: u8, degree: usize) -> Result<bool> {
    let ts: Vec<FormalSum<AdmissibleGraph>> = theta_unions(m, degree).into_iter().map(FormalSum::single).collect();
    if ts.is_empty() {
        return Ok(true);
    }
    Quotient::new(m, degree, true)?.independent(&ts)
}

/// The closed graph space split by parity of colored legs.
#[derive(Clone, Debug)]
pub struct ParitySplit {
    /// No relation mixes graphs with even and odd colored-leg counts.
    pub block_diagonal: bool,
    pub even: QuotientStructure,
    pub odd: QuotientStructure,
    pub whole: QuotientStructure,
}

fn sub_structure(rs: &RelationSet, keep: &[usize]) -> QuotientStructure {
    let mut col = vec![usize::MAX; rs.basis.len()];
    for (k, &i) in keep.iter().enumerate() {
        col[i] = k;
    }
    let mut rows = Vec::new();
    for (_, r) in &rs.relations {
        let mut row = vec![BigInt::zero(); keep.len()];
        let mut inside = true;
        for (c, g) in r.iter() {
            let j = rs.index_of(g).expect("relation terms lie in the basis");
            if col[j] == usize::MAX {
                inside = false;
                break;
            }
            row[col[j]] += c;
        }
        if inside {
            rows.push(row);
        }
    }
    if keep.is_empty() {
        return QuotientStructure { rank: 0, torsion: vec![] };
    }
    if rows.is_empty() {
        return QuotientStructure { rank: keep.len(), torsion: vec![] };
    }
    let (f, r) = smith_normal_form(&IntMatrix::from_rows(&rows));
    QuotientStructure::from_smith(keep.len(), &f, r)
}

/// Splits the closed quotient into graphs with an even number of non-isolated
/// edges of every color and the rest.
pub fn parity_split(m: u8, degree: usize) -> Result<ParitySplit> {
    let rs = build_relations(m, degree, true)?;
    let even: Vec<bool> = rs.basis.iter().map(|g| g.is_even()).collect();
    let block_diagonal = rs.relations.iter().all(|(_, r)| {
        let ps: Vec<bool> = r.iter().map(|(_, g)| even[rs.index_of(g).expect("in basis")]).collect();
        ps.windows(2).all(|w| w[0] == w[1])
    });
    let e: Vec<usize> = (0..rs.basis.len()).filter(|&i| even[i]).collect();
    let o: Vec<usize> = (0..rs.basis.len()).filter(|&i| !even[i]).collect();
    let all: Vec<usize> = (0..rs.basis.len()).collect();
    Ok(ParitySplit { block_diagonal, even: sub_structure(&rs, &e), odd: sub_structure(&rs, &o), whole: sub_structure(&rs, &all) })
}

/// Least `k` with `k·Γ` in the closed subgroup for every graph `Γ` of the
/// full quotient (the exponent of the cokernel of closed ⊂ all).
pub fn closed_index_exponent(m: u8, degree: usize) -> Result<Option<BigInt>> {
    let rs = build_relations(m, degree, false)?;
    let closed: Vec<FormalSum<AdmissibleGraph>> =
        rs.basis.iter().filter(|g| g.is_closed()).map(|g| FormalSum::single(g.clone())).collect();
    let basis = rs.basis.clone();
    let q = Quotient::from_relations(rs, &closed);
    let mut exp = BigInt::one();
    for g in basis {
        match q.order_of(&FormalSum::single(g))? {
            None => return Ok(None),
            Some(o) => exp = exp.lcm(&o),
        }
    }
    Ok(Some(exp))
}
