//! Framed, oriented link diagrams as PD codes, and the link-level operations
//! used by surgery brackets.
//!
//! A crossing lists its four arcs counter-clockwise starting from the incoming
//! under-strand. It is positive when the over-strand runs from the fourth slot
//! to the second.

mod morse;
mod special;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::{Canonical, FormalSum, IntMatrix};

pub use morse::{MorseComponent, MorseEvent, MorseLink};
pub use special::{plumbing_link, random_replacements, special_link, Replacement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Base,
    Surgery,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Arc cycle as listed; traversal follows it when `orientation` is +1.
    pub arcs: Vec<i64>,
    pub orientation: i8,
    pub framing: BigRational,
    pub color: Option<i64>,
    pub role: Role,
}

impl Component {
    /// Arcs in traversal order.
    pub fn oriented_arcs(&self) -> Vec<i64> {
        let mut a = self.arcs.clone();
        if self.orientation < 0 {
            a.reverse();
        }
        a
    }

    pub fn integral_framing(&self) -> Option<BigInt> {
        self.framing.is_integer().then(|| self.framing.to_integer())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [i64; 4],
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLink {
    pub components: Vec<Component>,
    pub crossings: Vec<Crossing>,
}

/// Bitmask over the components of a link.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SublinkSelector(pub Vec<bool>);

impl SublinkSelector {
    pub fn none(n: usize) -> Self {
        SublinkSelector(vec![false; n])
    }

    pub fn all(n: usize) -> Self {
        SublinkSelector(vec![true; n])
    }

    pub fn from_indices(n: usize, idx: &[usize]) -> Self {
        let mut s = Self::none(n);
        for &i in idx {
            s.0[i] = true;
        }
        s
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        SublinkSelector((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i]).collect()
    }

    pub fn complement(&self) -> Self {
        SublinkSelector(self.0.iter().map(|b| !b).collect())
    }

    /// All sub-selectors, in increasing bitmask order over the selected indices.
    pub fn subsets(&self) -> Vec<SublinkSelector> {
        let idx = self.indices();
        (0..1u64 << idx.len())
            .map(|mask| {
                let chosen: Vec<usize> =
                    idx.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
                Self::from_indices(self.len(), &chosen)
            })
            .collect()
    }
}

/// How each crossing is traversed, derived from the component cycles.
#[derive(Clone, Debug)]
pub struct Trace {
    /// Component owning the under-strand of each crossing.
    pub under_comp: Vec<usize>,
    /// Component owning the over-strand of each crossing.
    pub over_comp: Vec<usize>,
    /// Slot (1 or 3) where the over-strand enters.
    pub over_in: Vec<u8>,
    /// Sign implied by the orientations.
    pub sign: Vec<i8>,
    /// Per component: visited (crossing, entry slot) in traversal order.
    pub visits: Vec<Vec<(usize, u8)>>,
}

impl FramedLink {
    pub fn empty() -> Self {
        FramedLink { components: vec![], crossings: vec![] }
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Crossing-free unknot with the given framing and role.
    pub fn unknot(framing: i64, role: Role) -> Self {
        FramedLink {
            components: vec![Component {
                arcs: vec![1],
                orientation: 1,
                framing: BigRational::from_integer(framing.into()),
                color: None,
                role,
            }],
            crossings: vec![],
        }
    }

    /// Checks well-formedness and derives the traversal data.
    pub fn trace(&self) -> Result<Trace> {
        let nx = self.crossings.len();
        let mut occ: HashMap<i64, Vec<(usize, u8)>> = HashMap::new();
        for (x, c) in self.crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::Malformed(format!("crossing {x} has sign {}", c.sign)));
            }
            for (s, a) in c.arcs.iter().enumerate() {
                occ.entry(*a).or_default().push((x, s as u8));
            }
        }
        let mut owner: HashMap<i64, usize> = HashMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if comp.arcs.is_empty() {
                return Err(Error::Malformed(format!("component {ci} has no arcs")));
            }
            if comp.orientation != 1 && comp.orientation != -1 {
                return Err(Error::Malformed(format!("component {ci} orientation {}", comp.orientation)));
            }
            if comp.denominator_zero() {
                return Err(Error::Malformed(format!("component {ci} framing")));
            }
            for a in &comp.arcs {
                if owner.insert(*a, ci).is_some() {
                    return Err(Error::Malformed(format!("arc {a} listed twice")));
                }
            }
        }
        for (a, v) in &occ {
            if v.len() != 2 {
                return Err(Error::Malformed(format!("arc {a} used {} times in crossings", v.len())));
            }
            if !owner.contains_key(a) {
                return Err(Error::Malformed(format!("arc {a} belongs to no component")));
            }
        }
        // passages: (component, index in traversal) -> candidates (crossing, entry slot)
        let mut passages: Vec<(usize, Vec<(usize, u8)>)> = Vec::new();
        for (ci, comp) in self.components.iter().enumerate() {
            let arcs = comp.oriented_arcs();
            if arcs.len() == 1 && !occ.contains_key(&arcs[0]) {
                continue;
            }
            for (i, a) in arcs.iter().enumerate() {
                let b = arcs[(i + 1) % arcs.len()];
                let cands: Vec<(usize, u8)> = occ
                    .get(a)
                    .map(|v| {
                        v.iter()
                            .filter(|(x, s)| self.crossings[*x].arcs[((*s + 2) % 4) as usize] == b)
                            .filter(|(x, s)| match s {
                                0 => true,
                                1 => self.crossings[*x].sign == -1,
                                3 => self.crossings[*x].sign == 1,
                                _ => false,
                            })
                            .copied()
                            .collect()
                    })
                    .unwrap_or_default();
                if cands.is_empty() {
                    return Err(Error::Malformed(format!("component {ci}: no crossing joins arc {a} to arc {b}")));
                }
                passages.push((ci, cands));
            }
        }
        if passages.len() != 2 * nx {
            return Err(Error::Malformed(format!("{} strand passages for {nx} crossings", passages.len())));
        }
        let mut used = vec![[false; 2]; nx];
        let mut choice = vec![0usize; passages.len()];
        if !assign(&passages, 0, &mut used, &mut choice) {
            return Err(Error::Malformed("component cycles inconsistent with crossings".into()));
        }
        let mut under_comp = vec![0; nx];
        let mut over_comp = vec![0; nx];
        let mut over_in = vec![0u8; nx];
        let mut visits = vec![Vec::new(); self.components.len()];
        for (k, (ci, cands)) in passages.iter().enumerate() {
            let (x, s) = cands[choice[k]];
            if s % 2 == 0 {
                under_comp[x] = *ci;
            } else {
                over_comp[x] = *ci;
                over_in[x] = s;
            }
            visits[*ci].push((x, s));
        }
        let sign: Vec<i8> = over_in.iter().map(|&s| if s == 3 { 1 } else { -1 }).collect();
        for x in 0..nx {
            if sign[x] != self.crossings[x].sign {
                return Err(Error::Malformed(format!("crossing {x} sign disagrees with orientations")));
            }
        }
        Ok(Trace { under_comp, over_comp, over_in, sign, visits })
    }

    pub fn validate(&self) -> Result<()> {
        self.trace().map(|_| ())
    }

    /// Sum of crossing signs between components `i` and `j` (self-writhe when equal).
    fn sign_sums(&self, t: &Trace) -> Vec<Vec<i64>> {
        let n = self.components.len();
        let mut m = vec![vec![0i64; n]; n];
        for x in 0..self.crossings.len() {
            let (a, b) = (t.under_comp[x], t.over_comp[x]);
            let s = t.sign[x] as i64;
            if a == b {
                m[a][a] += s;
            } else {
                m[a][b] += s;
                m[b][a] += s;
            }
        }
        m
    }

    /// Writhe of each component (self-crossings only).
    pub fn writhes(&self) -> Result<Vec<i64>> {
        let t = self.trace()?;
        let m = self.sign_sums(&t);
        Ok((0..m.len()).map(|i| m[i][i]).collect())
    }

    /// Linking numbers off the diagonal, framings on it.
    pub fn linking_matrix(&self) -> Result<Vec<Vec<BigRational>>> {
        let t = self.trace()?;
        let m = self.sign_sums(&t);
        let n = m.len();
        Ok((0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            self.components[i].framing.clone()
                        } else {
                            BigRational::new(m[i][j].into(), 2.into())
                        }
                    })
                    .collect()
            })
            .collect())
    }

    /// Linking matrix as an integer matrix; fails on non-integral framings.
    pub fn integer_linking_matrix(&self) -> Result<IntMatrix> {
        let lm = self.linking_matrix()?;
        let n = lm.len();
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if !lm[i][j].is_integer() {
                    return Err(Error::Invalid(format!("non-integral entry at ({i},{j})")));
                }
                out.set(i, j, lm[i][j].to_integer());
            }
        }
        Ok(out)
    }

    /// Pairwise linking number of two distinct components.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        let t = self.trace()?;
        Ok(self.sign_sums(&t)[i][j] / 2)
    }

    /// Sublink on the selected components, keeping their order.
    pub fn sublink(&self, sel: &SublinkSelector) -> Result<FramedLink> {
        assert_eq!(sel.len(), self.components.len(), "selector length");
        let t = self.trace()?;
        // arcs merged across deleted crossings
        let mut parent: HashMap<i64, i64> = HashMap::new();
        fn find(p: &mut HashMap<i64, i64>, a: i64) -> i64 {
            let mut r = a;
            while let Some(&q) = p.get(&r) {
                if q == r {
                    break;
                }
                r = q;
            }
            r
        }
        let mut keep_x = Vec::new();
        for (x, c) in self.crossings.iter().enumerate() {
            let (u, o) = (t.under_comp[x], t.over_comp[x]);
            match (sel.contains(u), sel.contains(o)) {
                (true, true) => keep_x.push(x),
                (false, false) => {}
                (true, false) => {
                    let (a, b) = (find(&mut parent, c.arcs[0]), find(&mut parent, c.arcs[2]));
                    if a != b {
                        parent.insert(b, a);
                    }
                }
                (false, true) => {
                    let (a, b) = (find(&mut parent, c.arcs[1]), find(&mut parent, c.arcs[3]));
                    if a != b {
                        parent.insert(b, a);
                    }
                }
            }
        }
        let crossings = keep_x
            .iter()
            .map(|&x| {
                let c = self.crossings[x];
                Crossing { arcs: c.arcs.map(|a| find(&mut parent, a)), sign: c.sign }
            })
            .collect();
        let mut components = Vec::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if !sel.contains(ci) {
                continue;
            }
            let mut arcs: Vec<i64> = Vec::new();
            for a in &comp.arcs {
                let r = find(&mut parent, *a);
                if arcs.last() != Some(&r) {
                    arcs.push(r);
                }
            }
            while arcs.len() > 1 && arcs.first() == arcs.last() {
                arcs.pop();
            }
            components.push(Component { arcs, ..comp.clone() });
        }
        Ok(FramedLink { components, crossings }.relabeled())
    }

    /// Arcs renumbered 1.. in order of first appearance in the component lists.
    pub fn relabeled(&self) -> FramedLink {
        let mut map: HashMap<i64, i64> = HashMap::new();
        for comp in &self.components {
            for a in &comp.arcs {
                let next = map.len() as i64 + 1;
                map.entry(*a).or_insert(next);
            }
        }
        FramedLink {
            components: self
                .components
                .iter()
                .map(|c| Component { arcs: c.arcs.iter().map(|a| map[a]).collect(), ..c.clone() })
                .collect(),
            crossings: self.crossings.iter().map(|c| Crossing { arcs: c.arcs.map(|a| map[&a]), sign: c.sign }).collect(),
        }
    }

    /// `sum_{S <= L} (-1)^{|S|} S` over all sublinks.
    pub fn delta(&self) -> Result<FormalSum<FramedLink>> {
        let mut out = FormalSum::zero();
        for s in SublinkSelector::all(self.num_components()).subsets() {
            let sign = if s.count() % 2 == 0 { 1 } else { -1 };
            out.add_term(BigInt::from(sign), self.sublink(&s)?);
        }
        Ok(out)
    }

    /// Unit framings, zero pairwise linking, zero linking with the rest.
    pub fn is_admissible(&self, sel: &SublinkSelector) -> Result<bool> {
        let t = self.trace()?;
        let m = self.sign_sums(&t);
        for i in sel.indices() {
            let f = &self.components[i].framing;
            if !(f.is_integer() && f.abs().is_one()) {
                return Ok(false);
            }
            for j in 0..self.num_components() {
                if j != i && m[i][j] != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn disjoint_union(&self, other: &FramedLink) -> FramedLink {
        let shift = self.max_arc();
        let mut out = self.clone();
        out.components.extend(
            other.components.iter().map(|c| Component { arcs: c.arcs.iter().map(|a| a + shift).collect(), ..c.clone() }),
        );
        out.crossings.extend(other.crossings.iter().map(|c| Crossing { arcs: c.arcs.map(|a| a + shift), sign: c.sign }));
        out
    }

    fn max_arc(&self) -> i64 {
        self.components.iter().flat_map(|c| c.arcs.iter()).copied().max().unwrap_or(0)
    }

    /// Same diagram with component `i` traversed the other way.
    pub fn reversed(&self, i: usize) -> Result<FramedLink> {
        let t = self.trace()?;
        let mut out = self.clone();
        out.components[i].orientation = -out.components[i].orientation;
        for (x, c) in out.crossings.iter_mut().enumerate() {
            let (u, o) = (t.under_comp[x], t.over_comp[x]);
            if u == i {
                c.arcs = [c.arcs[2], c.arcs[3], c.arcs[0], c.arcs[1]];
            }
            if (u == i) != (o == i) {
                c.sign = -c.sign;
            }
        }
        out.validate()?;
        Ok(out)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Result<FramedLink> {
        let t = self.trace()?;
        let mut out = self.clone();
        for (x, c) in out.crossings.iter_mut().enumerate() {
            // the over-strand becomes the under-strand, entering at slot over_in
            let s = t.over_in[x] as usize;
            c.arcs = [c.arcs[s], c.arcs[(s + 1) % 4], c.arcs[(s + 2) % 4], c.arcs[(s + 3) % 4]];
            c.sign = -c.sign;
        }
        for comp in &mut out.components {
            comp.framing = -comp.framing.clone();
        }
        out.validate()?;
        Ok(out)
    }

    pub fn with_framings(&self, f: &[i64]) -> FramedLink {
        let mut out = self.clone();
        for (c, x) in out.components.iter_mut().zip(f) {
            c.framing = BigRational::from_integer((*x).into());
        }
        out
    }

    pub fn with_roles(&self, r: &[Role]) -> FramedLink {
        let mut out = self.clone();
        for (c, x) in out.components.iter_mut().zip(r) {
            c.role = *x;
        }
        out
    }

    pub fn with_colors(&self, colors: &[Option<i64>]) -> FramedLink {
        let mut out = self.clone();
        for (c, x) in out.components.iter_mut().zip(colors) {
            c.color = *x;
        }
        out
    }

    /// Components reordered: output component `k` is input component `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> FramedLink {
        let mut out = self.clone();
        out.components = perm.iter().map(|&i| self.components[i].clone()).collect();
        out
    }

    /// Each component replaced by `c[i]` parallel copies (push-offs along its framing).
    pub fn cable(&self, c: &[i64]) -> Result<FramedLink> {
        if c.len() != self.num_components() {
            return Err(Error::Invalid("cable multi-index length".into()));
        }
        if c.iter().any(|&x| x < 0) {
            return Err(Error::Invalid("negative cable index".into()));
        }
        let counts: Vec<usize> = c.iter().map(|&x| x as usize).collect();
        let morse = MorseLink::from_link(self)?;
        morse.cable(&counts)?.to_link()
    }

    pub fn is_integral(&self) -> bool {
        self.components.iter().all(|c| c.framing.is_integer())
    }

    /// Canonical byte encoding, independent of arc labels and of the order of
    /// split pieces.
    pub fn canonical_encoding(&self) -> Vec<u8> {
        let t = match self.trace() {
            Ok(t) => t,
            Err(_) => return format!("malformed:{self:?}").into_bytes(),
        };
        let pieces = self.pieces(&t);
        let mut encs: Vec<String> = pieces.iter().map(|p| self.encode_piece(&t, p)).collect();
        encs.sort();
        encs.join("|").into_bytes()
    }

    /// Components grouped into diagram-connected pieces.
    fn pieces(&self, t: &Trace) -> Vec<Vec<usize>> {
        let n = self.num_components();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for x in 0..self.crossings.len() {
            let (a, b) = (root(&mut parent, t.under_comp[x]), root(&mut parent, t.over_comp[x]));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = root(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    fn component_tag(&self, ci: usize) -> String {
        let c = &self.components[ci];
        let role = match c.role {
            Role::Base => "b",
            Role::Surgery => "s",
        };
        let color = c.color.map_or("-".to_string(), |x| x.to_string());
        format!("{}/{}:{role}:{color}", c.framing.numer(), c.framing.denom())
    }

    fn encode_piece(&self, t: &Trace, piece: &[usize]) -> String {
        if piece.len() == 1 && t.visits[piece[0]].is_empty() {
            return format!("O[{}]", self.component_tag(piece[0]));
        }
        let mut best: Option<String> = None;
        for &start in piece {
            for k in 0..t.visits[start].len() {
                let e = self.encode_from(t, piece, start, k);
                if best.as_ref().map_or(true, |b| e < *b) {
                    best = Some(e);
                }
            }
        }
        best.unwrap()
    }

    /// Encoding from a traversal that starts at visit `k` of component `start`.
    fn encode_from(&self, t: &Trace, piece: &[usize], start: usize, k: usize) -> String {
        let mut xlabel: HashMap<usize, usize> = HashMap::new();
        let mut xorder: Vec<usize> = Vec::new();
        // per crossing: label of the strand passage entering each slot
        let mut slot_seq: HashMap<(usize, u8), (usize, usize)> = HashMap::new();
        let mut comp_enc = Vec::new();
        let mut done: Vec<usize> = Vec::new();
        let mut next = Some((start, k));
        while let Some((ci, k0)) = next {
            done.push(ci);
            let v = &t.visits[ci];
            let ord = done.len() - 1;
            for step in 0..v.len() {
                let (x, s) = v[(k0 + step) % v.len()];
                if !xlabel.contains_key(&x) {
                    xlabel.insert(x, xorder.len());
                    xorder.push(x);
                }
                slot_seq.insert((x, s), (ord, step));
            }
            comp_enc.push(format!("{}#{}", self.component_tag(ci), v.len()));
            // next component: first labelled crossing touching an unvisited one
            next = None;
            'search: for &x in &xorder {
                for c in [t.under_comp[x], t.over_comp[x]] {
                    if !done.contains(&c) {
                        let pos = t.visits[c].iter().position(|&(y, _)| y == x).unwrap();
                        next = Some((c, pos));
                        break 'search;
                    }
                }
            }
        }
        debug_assert_eq!(done.len(), piece.len());
        let mut s = comp_enc.join(",");
        s.push(';');
        for &x in &xorder {
            let under = slot_seq[&(x, 0)];
            let over = slot_seq[&(x, t.over_in[x])];
            let _ = write!(s, "({},{};{},{};{})", under.0, under.1, over.0, over.1, self.crossings[x].sign);
        }
        s
    }
}

impl Component {
    fn denominator_zero(&self) -> bool {
        self.framing.denom().is_zero()
    }
}

impl Canonical for FramedLink {
    fn encode(&self) -> Vec<u8> {
        self.canonical_encoding()
    }
}

fn assign(passages: &[(usize, Vec<(usize, u8)>)], k: usize, used: &mut [[bool; 2]], choice: &mut [usize]) -> bool {
    if k == passages.len() {
        return true;
    }
    for (ci, &(x, s)) in passages[k].1.iter().enumerate() {
        let strand = (s % 2) as usize;
        if used[x][strand] {
            continue;
        }
        used[x][strand] = true;
        choice[k] = ci;
        if assign(passages, k + 1, used, choice) {
            return true;
        }
        used[x][strand] = false;
    }
    false
}

// ---------------------------------------------------------------- JSON

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    arcs: Vec<i64>,
    framing: serde_json::Value,
    #[serde(default)]
    color: Option<i64>,
    role: Role,
    #[serde(default = "one_i8")]
    orientation: i8,
}

fn one_i8() -> i8 {
    1
}

#[derive(Serialize, Deserialize)]
struct LinkJson {
    components: Vec<ComponentJson>,
    crossings: Vec<(i64, i64, i64, i64, serde_json::Value)>,
}

pub fn parse_rational(v: &serde_json::Value) -> Result<BigRational> {
    let s = match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) => n.to_string(),
        other => return Err(Error::Invalid(format!("framing {other}"))),
    };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Invalid(format!("framing {s}")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Invalid(format!("framing {s}")))?;
    if d.is_zero() {
        return Err(Error::Invalid(format!("framing {s}")));
    }
    Ok(BigRational::new(n, d))
}

fn parse_sign(v: &serde_json::Value) -> Result<i8> {
    let s = match v {
        serde_json::Value::String(s) => s.trim().to_string(),
        serde_json::Value::Number(n) => n.to_string(),
        other => return Err(Error::Invalid(format!("sign {other}"))),
    };
    match s.as_str() {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(Error::Invalid(format!("sign {s}"))),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FramedLink {
    pub fn from_json_value(v: &serde_json::Value) -> Result<FramedLink> {
        let j: LinkJson = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        let mut components = Vec::new();
        for c in j.components {
            components.push(Component {
                arcs: c.arcs,
                orientation: c.orientation,
                framing: parse_rational(&c.framing)?,
                color: c.color,
                role: c.role,
            });
        }
        let mut crossings = Vec::new();
        for (a, b, c, d, s) in j.crossings {
            crossings.push(Crossing { arcs: [a, b, c, d], sign: parse_sign(&s)? });
        }
        let l = FramedLink { components, crossings };
        l.validate()?;
        Ok(l)
    }

    pub fn from_json(s: &str) -> Result<FramedLink> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let j = LinkJson {
            components: self
                .components
                .iter()
                .map(|c| ComponentJson {
                    arcs: c.arcs.clone(),
                    framing: serde_json::Value::String(format_rational(&c.framing)),
                    color: c.color,
                    role: c.role,
                    orientation: c.orientation,
                })
                .collect(),
            crossings: self
                .crossings
                .iter()
                .map(|c| {
                    let s = if c.sign > 0 { "+" } else { "-" };
                    (c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3], serde_json::Value::String(s.into()))
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }
}

/// Integer framing as `i64`, if it is one.
pub fn framing_i64(c: &Component) -> Option<i64> {
    c.integral_framing().and_then(|x| x.to_i64())
}

#[cfg(test)]
mod tests;
