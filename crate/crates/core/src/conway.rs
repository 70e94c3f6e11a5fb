//! Conway polynomials: the skein engine for links in S³, the Seifert-matrix
//! route for knots under unit surgeries, and the order of the Alexander
//! module for surgery diagrams with first Betti number one.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::{integer_kernel, smith_normal_form, IntMatrix, ZPoly};
use crate::link_diagrams::{Component, Crossing, FramedLink, Role, SublinkSelector};
use crate::manifolds::{Invariant, Value, ValueRing};

// ---------------------------------------------------------------- Laurent polynomials

/// Element of Q[t, 1/t]: `sum c[i] t^(lo + i)`, no zero at either end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Laurent {
    lo: i64,
    c: Vec<BigRational>,
}

impl Laurent {
    fn zero() -> Self {
        Laurent { lo: 0, c: vec![] }
    }

    fn monomial(e: i64, k: BigRational) -> Self {
        Laurent { lo: e, c: vec![k] }.trimmed()
    }

    fn t_pow(e: i64) -> Self {
        Self::monomial(e, BigRational::one())
    }

    fn constant(k: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(k.into()))
    }

    fn trimmed(mut self) -> Self {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn span(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn hi(&self) -> i64 {
        self.lo + self.c.len() as i64 - 1
    }

    fn add(&self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        let mut c = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] += x;
        }
        for (i, x) in o.c.iter().enumerate() {
            c[(o.lo - lo) as usize + i] += x;
        }
        Laurent { lo, c }.trimmed()
    }

    fn neg(&self) -> Laurent {
        Laurent { lo: self.lo, c: self.c.iter().map(|x| -x).collect() }
    }

    fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Laurent { lo: self.lo + o.lo, c }.trimmed()
    }

    /// `self = q * d + r` with `span(r) < span(d)`.
    fn divrem(&self, d: &Laurent) -> (Laurent, Laurent) {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return (Laurent::zero(), Laurent::zero());
        }
        let mut r = self.c.clone();
        let dn = d.c.len();
        if r.len() < dn {
            return (Laurent::zero(), self.clone());
        }
        let lead = d.c[dn - 1].clone();
        let mut q = vec![BigRational::zero(); r.len() - dn + 1];
        for k in (0..q.len()).rev() {
            let f = &r[k + dn - 1] / &lead;
            if f.is_zero() {
                continue;
            }
            for (j, y) in d.c.iter().enumerate() {
                r[k + j] -= &f * y;
            }
            q[k] = f;
        }
        let q = Laurent { lo: self.lo - d.lo, c: q }.trimmed();
        let r = Laurent { lo: self.lo, c: r }.trimmed();
        (q, r)
    }

    fn eval_one(&self) -> BigRational {
        self.c.iter().fold(BigRational::zero(), |a, x| a + x)
    }

    /// Symmetric Laurent polynomial rewritten in `z = t^(1/2) - t^(-1/2)`.
    fn symmetric_to_z(&self) -> Result<ZPoly> {
        if self.is_zero() {
            return Ok(ZPoly::zero());
        }
        if self.lo != -self.hi() || (0..self.c.len()).any(|i| self.c[i] != self.c[self.c.len() - 1 - i]) {
            return Err(Error::Invalid("Alexander polynomial is not symmetric".into()));
        }
        let m = self.hi() as usize;
        let u = &ZPoly::from_ints(&[2, 0, 1]);
        // t^k + t^-k as a polynomial in u = t + 1/t
        let mut cheb = vec![ZPoly::from_ints(&[2]), u.clone()];
        for k in 2..=m {
            let next = &(u * &cheb[k - 1]) - &cheb[k - 2];
            cheb.push(next);
        }
        let mut out = ZPoly::monomial(0, self.c[m].clone());
        for k in 1..=m {
            out = &out + &cheb[k].scale(&self.c[m + k]);
        }
        Ok(out)
    }
}

/// Alexander polynomial normalized to be symmetric with value 1 at t = 1.
fn normalize_alexander(d: &Laurent) -> Result<Laurent> {
    if d.is_zero() {
        return Err(Error::Invalid("Alexander module has positive rank".into()));
    }
    let s = d.lo + d.hi();
    if s % 2 != 0 {
        return Err(Error::Invalid("Alexander polynomial has odd span".into()));
    }
    let centered = d.mul(&Laurent::t_pow(-s / 2));
    let v = centered.eval_one();
    if v.is_zero() {
        return Err(Error::Invalid("Alexander polynomial vanishes at 1".into()));
    }
    Ok(centered.mul(&Laurent::monomial(0, v.recip())))
}

// ---------------------------------------------------------------- skein engine

/// Conway polynomial of an oriented link in S³; framings, roles and colors
/// are ignored.
pub fn conway_link(l: &FramedLink) -> Result<ZPoly> {
    l.validate()?;
    let mut memo = HashMap::new();
    skein(&strip(l), &mut memo)
}

fn strip(l: &FramedLink) -> FramedLink {
    let mut out = l.clone();
    for c in &mut out.components {
        c.framing = BigRational::zero();
        c.color = None;
        c.role = Role::Base;
    }
    out
}

fn skein(l: &FramedLink, memo: &mut HashMap<Vec<u8>, ZPoly>) -> Result<ZPoly> {
    let n = l.num_components();
    if n == 0 {
        return Err(Error::Invalid("Conway polynomial of the empty link".into()));
    }
    if l.crossings.is_empty() {
        return Ok(if n == 1 { ZPoly::one() } else { ZPoly::zero() });
    }
    let key = l.canonical_encoding();
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let t = l.trace()?;
    let free_loop = t.visits.iter().any(|v| v.is_empty());
    let value = if free_loop && n > 1 {
        ZPoly::zero()
    } else {
        // first crossing met from below while walking the components in order
        let mut seen = vec![false; l.crossings.len()];
        let mut bad = None;
        'walk: for v in &t.visits {
            for &(x, s) in v {
                if !seen[x] {
                    seen[x] = true;
                    if s == 0 {
                        bad = Some(x);
                        break 'walk;
                    }
                }
            }
        }
        match bad {
            None => {
                if n == 1 {
                    ZPoly::one()
                } else {
                    ZPoly::zero()
                }
            }
            Some(x) => {
                let sign = l.crossings[x].sign;
                let switched = skein(&switch_crossing(l, x), memo)?;
                let smoothed = skein(&smooth_crossing(l, x)?, memo)?;
                let zs = &ZPoly::z() * &smoothed;
                if sign > 0 {
                    &switched + &zs
                } else {
                    &switched - &zs
                }
            }
        }
    };
    memo.insert(key, value.clone());
    Ok(value)
}

/// Same diagram with crossing `x` changed; component arc lists are kept so
/// base points do not move.
pub fn switch_crossing(l: &FramedLink, x: usize) -> FramedLink {
    let mut out = l.clone();
    let c = out.crossings[x];
    let [a, b, cc, d] = c.arcs;
    out.crossings[x] =
        if c.sign > 0 { Crossing { arcs: [d, a, b, cc], sign: -1 } } else { Crossing { arcs: [b, cc, d, a], sign: 1 } };
    out
}

/// Oriented smoothing of crossing `x`.
pub fn smooth_crossing(l: &FramedLink, x: usize) -> Result<FramedLink> {
    let c = l.crossings[x];
    let [a, b, cc, d] = c.arcs;
    let joins = if c.sign > 0 { [(a, b), (d, cc)] } else { [(a, d), (b, cc)] };
    let mut parent: HashMap<i64, i64> = HashMap::new();
    fn find(p: &HashMap<i64, i64>, mut a: i64) -> i64 {
        while let Some(&q) = p.get(&a) {
            a = q;
        }
        a
    }
    for (u, v) in joins {
        let (ru, rv) = (find(&parent, u), find(&parent, v));
        if ru != rv {
            parent.insert(rv, ru);
        }
    }
    let crossings: Vec<Crossing> = l
        .crossings
        .iter()
        .enumerate()
        .filter(|(y, _)| *y != x)
        .map(|(_, c)| Crossing { arcs: c.arcs.map(|a| find(&parent, a)), sign: c.sign })
        .collect();
    components_from_crossings(l, crossings, |a| find(&parent, a))
}

/// Rebuilds component cycles after arcs were merged or crossings removed.
fn components_from_crossings(
    l: &FramedLink,
    crossings: Vec<Crossing>,
    root: impl Fn(i64) -> i64,
) -> Result<FramedLink> {
    let mut next: HashMap<i64, i64> = HashMap::new();
    for c in &crossings {
        next.insert(c.arcs[0], c.arcs[2]);
        if c.sign > 0 {
            next.insert(c.arcs[3], c.arcs[1]);
        } else {
            next.insert(c.arcs[1], c.arcs[3]);
        }
    }
    let mut roots: Vec<i64> = l.components.iter().flat_map(|c| c.arcs.iter().map(|&a| root(a))).collect();
    roots.sort();
    roots.dedup();
    let mut used: HashMap<i64, bool> = HashMap::new();
    let mut components = Vec::new();
    for r in roots {
        if used.contains_key(&r) {
            continue;
        }
        let mut arcs = vec![r];
        used.insert(r, true);
        let mut cur = r;
        while let Some(&nx) = next.get(&cur) {
            if nx == r {
                break;
            }
            if used.contains_key(&nx) {
                return Err(Error::Malformed("smoothing produced a branched strand".into()));
            }
            used.insert(nx, true);
            arcs.push(nx);
            cur = nx;
        }
        components.push(Component { arcs, orientation: 1, framing: BigRational::zero(), color: None, role: Role::Base });
    }
    Ok(FramedLink { components, crossings })
}

// ---------------------------------------------------------------- Seifert route

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertSurgery {
    pub eps: i8,
    pub lambda: Vec<BigInt>,
}

/// A knot in S³ given by a Seifert matrix, with unit-framed surgery curves in
/// the complement of its Seifert surface described by their linking vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertPresentation {
    pub v: IntMatrix,
    pub surgeries: Vec<SeifertSurgery>,
}

#[derive(Serialize, Deserialize)]
struct SurgeryJson {
    eps: i64,
    lambda: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct SeifertJson {
    #[serde(rename = "V")]
    v: Vec<Vec<i64>>,
    #[serde(default)]
    surgeries: Vec<SurgeryJson>,
}

impl SeifertPresentation {
    pub fn new(v: IntMatrix, surgeries: Vec<(i8, Vec<i64>)>) -> Result<Self> {
        let p = SeifertPresentation {
            v,
            surgeries: surgeries
                .into_iter()
                .map(|(eps, l)| SeifertSurgery { eps, lambda: l.into_iter().map(BigInt::from).collect() })
                .collect(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn genus(&self) -> usize {
        self.v.rows() / 2
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.v.rows();
        if n != self.v.cols() || n % 2 != 0 {
            return Err(Error::Invalid("Seifert matrix must be square of even size".into()));
        }
        let mut skew = self.v.clone();
        let vt = self.v.transpose();
        for i in 0..n {
            for j in 0..n {
                skew.set(i, j, self.v.get(i, j) - vt.get(i, j));
            }
        }
        if !skew.determinant().abs().is_one() {
            return Err(Error::Invalid("V - V^T is not unimodular".into()));
        }
        for s in &self.surgeries {
            if s.eps != 1 && s.eps != -1 {
                return Err(Error::Invalid(format!("surgery sign {}", s.eps)));
            }
            if s.lambda.len() != n {
                return Err(Error::Invalid("linking vector length".into()));
            }
        }
        Ok(())
    }

    /// Seifert matrix after surgery on the selected curves.
    pub fn updated_matrix(&self, sel: &SublinkSelector) -> IntMatrix {
        let n = self.v.rows();
        let mut v = self.v.clone();
        for j in sel.indices() {
            let s = &self.surgeries[j];
            for a in 0..n {
                for b in 0..n {
                    let upd = v.get(a, b) - BigInt::from(s.eps) * &s.lambda[a] * &s.lambda[b];
                    v.set(a, b, upd);
                }
            }
        }
        v
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: SeifertJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        let v = IntMatrix::from_rows(&j.v);
        let surgeries = j.surgeries.into_iter().map(|s| (s.eps as i8, s.lambda)).collect();
        Self::new(v, surgeries)
    }

    pub fn to_json(&self) -> String {
        let j = SeifertJson {
            v: self.v.to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap_or(0)).collect()).collect(),
            surgeries: self
                .surgeries
                .iter()
                .map(|s| SurgeryJson { eps: s.eps as i64, lambda: s.lambda.iter().map(|x| x.to_i64().unwrap_or(0)).collect() })
                .collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }
}

/// Random presentation of genus `genus` with `l` surgery curves: the standard
/// symplectic form plus a random symmetric matrix, and random linking vectors,
/// entries in `-bound..=bound`.
pub fn random_seifert<R: Rng>(rng: &mut R, genus: usize, l: usize, bound: i64) -> SeifertPresentation {
    let n = 2 * genus;
    let mut v = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-bound..=bound);
            v.set(i, j, x.into());
            v.set(j, i, x.into());
        }
    }
    for g in 0..genus {
        let x = v.get(2 * g, 2 * g + 1) + 1;
        v.set(2 * g, 2 * g + 1, x);
    }
    let surgeries = (0..l)
        .map(|_| (if rng.gen_bool(0.5) { 1 } else { -1 }, (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()))
        .collect();
    SeifertPresentation::new(v, surgeries).expect("V - V^T is the standard symplectic form")
}

/// Conway polynomial of a knot from a Seifert matrix.
pub fn seifert_matrix_conway(v: &IntMatrix) -> Result<ZPoly> {
    let n = v.rows();
    if n == 0 {
        return Ok(ZPoly::one());
    }
    // det(tV - V^T) sampled at t = 0..n and interpolated
    let vt = v.transpose();
    let pts: Vec<(BigRational, BigRational)> = (0..=n as i64)
        .map(|t| {
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, v.get(i, j) * BigInt::from(t) - vt.get(i, j));
                }
            }
            (BigRational::from_integer(t.into()), BigRational::from_integer(m.determinant()))
        })
        .collect();
    let coeffs = interpolate(&pts);
    let d = Laurent { lo: -((n / 2) as i64), c: coeffs }.trimmed();
    d.symmetric_to_z()
}

/// Coefficients of the polynomial through the given points, low degree first.
fn interpolate(pts: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let n = pts.len();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &pts[j].0;
            }
            basis = next;
            denom *= &pts[i].0 - &pts[j].0;
        }
        let f = &pts[i].1 / denom;
        for (k, b) in basis.iter().enumerate() {
            out[k] += b * &f;
        }
    }
    out
}

/// Conway polynomial of the knot after surgery on the selected curves.
pub fn seifert_conway(p: &SeifertPresentation, sel: &SublinkSelector) -> Result<ZPoly> {
    if sel.len() != p.surgeries.len() {
        return Err(Error::Invalid("selector length".into()));
    }
    seifert_matrix_conway(&p.updated_matrix(sel))
}

/// `sum_S (-1)^|S| conway(S)`; checks divisibility by `z^l`.
pub fn conway_alternating(p: &SeifertPresentation) -> Result<ZPoly> {
    let l = p.surgeries.len();
    let mut acc = ZPoly::zero();
    for s in SublinkSelector::all(l).subsets() {
        let v = seifert_conway(p, &s)?;
        acc = if s.count() % 2 == 0 { &acc + &v } else { &acc - &v };
    }
    if !acc.divisible_by_z_pow(l as u32) {
        return Err(Error::TheoremViolation(format!("alternating sum {acc} is not divisible by z^{l}")));
    }
    Ok(acc)
}

/// Coefficient of `z^(2n)` in the Conway polynomial after all surgeries.
pub fn c2n(p: &SeifertPresentation, n: u32) -> Result<BigRational> {
    Ok(seifert_conway(p, &SublinkSelector::all(p.surgeries.len()))?.coeff(2 * n))
}

/// Coefficient of `z^(2n)` in the Conway polynomial of a knot diagram.
pub fn c2n_diagram(k: &FramedLink, n: u32) -> Result<BigRational> {
    if k.num_components() != 1 {
        return Err(Error::Precondition("expected a knot".into()));
    }
    Ok(conway_link(k)?.coeff(2 * n))
}

// ---------------------------------------------------------------- surgery diagrams with b1 = 1

/// Conway polynomial of the 3-manifold obtained by integral surgery on the
/// whole link, which must have first Betti number one. Computed as the order
/// of the rational Alexander module, normalized to be symmetric with constant
/// term one.
pub fn manifold_conway(l: &FramedLink) -> Result<ZPoly> {
    let lm = l.integer_linking_matrix()?;
    let ker = integer_kernel(&lm);
    if ker.len() != 1 {
        return Err(Error::Precondition(format!("first Betti number is {}, not 1", ker.len())));
    }
    let w: Vec<i64> = ker[0].iter().map(|x| x.to_i64().expect("small weight")).collect();
    let fox = fox_matrix(l, &w)?;
    let order = module_order(fox)?;
    normalize_alexander(&order)?.symmetric_to_z()
}

/// Fox derivatives of the surgered link group, abelianized to Z = <t>.
/// Rows are sparse maps from generator (arc) index to entry.
fn fox_matrix(l: &FramedLink, w: &[i64]) -> Result<(Vec<BTreeMap<usize, Laurent>>, usize)> {
    let t = l.trace()?;
    let mut gen: HashMap<i64, usize> = HashMap::new();
    let mut comp_of = Vec::new();
    for (ci, c) in l.components.iter().enumerate() {
        for a in &c.arcs {
            gen.insert(*a, gen.len());
            comp_of.push(ci);
        }
    }
    let ng = gen.len();
    let tw = |g: usize| w[comp_of[g]];
    let mut rows: Vec<BTreeMap<usize, Laurent>> = Vec::new();
    let add = |row: &mut BTreeMap<usize, Laurent>, g: usize, v: Laurent| {
        let e = row.entry(g).or_insert_with(Laurent::zero);
        *e = e.add(&v);
        if e.is_zero() {
            row.remove(&g);
        }
    };
    for (x, c) in l.crossings.iter().enumerate() {
        let ui = gen[&c.arcs[0]];
        let uo = gen[&c.arcs[2]];
        let o = t.over_in[x] as usize;
        let oi = gen[&c.arcs[o]];
        let oo = gen[&c.arcs[(o + 2) % 4]];
        let mut eq = BTreeMap::new();
        add(&mut eq, oi, Laurent::constant(1));
        add(&mut eq, oo, Laurent::constant(-1));
        rows.push(eq);
        // x_uo = x_o^e x_ui x_o^-e
        let e = c.sign as i64;
        let to = tw(oi);
        let tui = tw(ui);
        let mut r = BTreeMap::new();
        if e > 0 {
            add(&mut r, ui, Laurent::t_pow(to));
            add(&mut r, oi, Laurent::constant(1).sub(&Laurent::t_pow(tui)));
        } else {
            add(&mut r, ui, Laurent::t_pow(-to));
            add(&mut r, oi, Laurent::t_pow(-to).mul(&Laurent::t_pow(tui).sub(&Laurent::constant(1))));
        }
        add(&mut r, uo, Laurent::constant(-1));
        rows.push(r);
    }
    let writhes = l.writhes()?;
    for (ci, comp) in l.components.iter().enumerate() {
        let a = comp
            .integral_framing()
            .and_then(|f| f.to_i64())
            .ok_or_else(|| Error::Invalid("non-integral framing".into()))?;
        let unders: Vec<usize> = t.visits[ci].iter().filter(|(_, s)| *s == 0).map(|(x, _)| *x).collect();
        let start = match unders.first() {
            Some(&x) => gen[&l.crossings[x].arcs[0]],
            None => gen[&comp.arcs[0]],
        };
        // word: x_start^(a - w) * prod over under-passages (last first) of x_over^sign
        let mut word: Vec<(usize, i64)> = vec![(start, a - writhes[ci])];
        for &x in unders.iter().rev() {
            let c = &l.crossings[x];
            let o = t.over_in[x] as usize;
            word.push((gen[&c.arcs[o]], c.sign as i64));
        }
        let mut row = BTreeMap::new();
        let mut prefix = 0i64;
        for (g, e) in word {
            let tg = tw(g);
            if e >= 0 {
                for _ in 0..e {
                    add(&mut row, g, Laurent::t_pow(prefix));
                    prefix += tg;
                }
            } else {
                for _ in 0..-e {
                    prefix -= tg;
                    add(&mut row, g, Laurent::t_pow(prefix).neg());
                }
            }
        }
        rows.push(row);
    }
    Ok((rows, ng))
}

/// Product of the nonzero elementary divisors of the module presented by the
/// rows, checking that exactly one generator stays free.
fn module_order((mut rows, ng): (Vec<BTreeMap<usize, Laurent>>, usize)) -> Result<Laurent> {
    let mut product = Laurent::constant(1);
    let mut col_alive = vec![true; ng];
    let mut row_alive = vec![true; rows.len()];
    let mut rank = 0usize;
    loop {
        // pivot of least span, preferring sparse rows
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if !row_alive[r] {
                continue;
            }
            for (&c, v) in row {
                let key = (v.span(), row.len());
                if best.map_or(true, |(s, l, _, _)| key < (s, l)) {
                    best = Some((key.0, key.1, r, c));
                }
            }
        }
        let Some((_, _, pr, pc)) = best else { break };
        let piv = rows[pr][&pc].clone();
        // reduce the column below the pivot
        let mut reduced_all = true;
        let others: Vec<usize> = (0..rows.len()).filter(|&r| r != pr && row_alive[r] && rows[r].contains_key(&pc)).collect();
        for r in others {
            let (q, rem) = rows[r][&pc].divrem(&piv);
            if !rem.is_zero() {
                reduced_all = false;
            }
            let prow = rows[pr].clone();
            for (c, v) in prow {
                let e = rows[r].entry(c).or_insert_with(Laurent::zero);
                *e = e.sub(&q.mul(&v));
                if e.is_zero() {
                    rows[r].remove(&c);
                }
            }
        }
        if !reduced_all {
            continue;
        }
        // reduce the row (column operations)
        let row_cols: Vec<usize> = rows[pr].keys().copied().filter(|&c| c != pc).collect();
        let mut row_clear = true;
        for c in row_cols {
            let (q, rem) = rows[pr][&c].divrem(&piv);
            if !rem.is_zero() {
                row_clear = false;
            }
            // column c -= q * column pc; column pc has a single entry (the pivot) now
            let e = rows[pr].get(&c).cloned().unwrap_or_else(Laurent::zero).sub(&q.mul(&piv));
            if e.is_zero() {
                rows[pr].remove(&c);
            } else {
                rows[pr].insert(c, e);
            }
        }
        if !row_clear {
            continue;
        }
        product = product.mul(&piv);
        rank += 1;
        row_alive[pr] = false;
        col_alive[pc] = false;
    }
    let free = col_alive.iter().filter(|&&a| a).count();
    debug_assert_eq!(free, ng - rank);
    if free != 1 {
        return Err(Error::Invalid(format!("Alexander module has {} free generators", free.saturating_sub(1) + 1)));
    }
    Ok(product)
}

/// Lescop invariant `C_2(M) - |Tor H_1(M)| / 12` for surgery with b1 = 1.
pub fn lescop_b1_1(l: &FramedLink) -> Result<BigRational> {
    let c2 = manifold_conway(l)?.coeff(2);
    let (factors, _) = smith_normal_form(&l.integer_linking_matrix()?);
    let tor: BigInt = factors.iter().filter(|f| !f.is_zero()).fold(BigInt::one(), |a, f| a * f);
    Ok(c2 - BigRational::new(tor, 12.into()))
}

/// `C_{2n}` as an invariant of presented manifolds with b1 = 1.
pub fn c2n_invariant(n: u32) -> Invariant {
    Invariant::new(format!("C{}", 2 * n), ValueRing::Rationals, Some(2 * n as usize), move |m| {
        Ok(Value::Rational(manifold_conway(&m.surgered_link()?)?.coeff(2 * n)))
    })
}

/// The Lescop invariant as an invariant of presented manifolds with b1 = 1.
pub fn lescop_invariant() -> Invariant {
    Invariant::new("lescop", ValueRing::Rationals, None, |m| Ok(Value::Rational(lescop_b1_1(&m.surgered_link()?)?)))
}
