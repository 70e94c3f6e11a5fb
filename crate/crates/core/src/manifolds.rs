//! Surgery presentations, their homology, the surgery bracket and the
//! machinery for evaluating invariants on formal sums of manifolds.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::exact_algebra::{rank_mod_p, smith_normal_form, Canonical, FormalSum};
use crate::link_diagrams::{FramedLink, Role, SublinkSelector};

/// A framed link in S³. The manifold it presents is surgery on the `base`
/// components; `surgery` components are carried along as candidate sublinks
/// for brackets and do not change the manifold.
#[derive(Clone, Debug, PartialEq)]
pub struct SurgeryPresentation {
    pub link: FramedLink,
}

impl SurgeryPresentation {
    pub fn new(link: FramedLink) -> Self {
        SurgeryPresentation { link }
    }

    /// S³, the empty presentation.
    pub fn sphere() -> Self {
        Self::new(FramedLink::empty())
    }

    pub fn base_selector(&self) -> SublinkSelector {
        SublinkSelector(self.link.components.iter().map(|c| c.role == Role::Base).collect())
    }

    pub fn surgery_selector(&self) -> SublinkSelector {
        self.base_selector().complement()
    }

    /// The link actually surgered: base components only, colors cleared.
    pub fn surgered_link(&self) -> Result<FramedLink> {
        let sel = self.base_selector();
        let sub = if sel.count() == self.link.num_components() { self.link.clone() } else { self.link.sublink(&sel)? };
        let n = sub.num_components();
        Ok(sub.with_colors(&vec![None; n]))
    }

    /// The same manifold without the carried surgery components.
    pub fn manifold(&self) -> Result<SurgeryPresentation> {
        Ok(Self::new(self.surgered_link()?))
    }

    /// Promotes the selected components to base.
    pub fn promote(&self, sel: &SublinkSelector) -> SurgeryPresentation {
        let mut link = self.link.clone();
        for i in sel.indices() {
            link.components[i].role = Role::Base;
        }
        Self::new(link)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(Self::new(FramedLink::from_json(s)?))
    }
}

impl Canonical for SurgeryPresentation {
    fn encode(&self) -> Vec<u8> {
        match self.surgered_link() {
            Ok(l) => l.canonical_encoding(),
            Err(_) => self.link.canonical_encoding(),
        }
    }
}

/// First homology of a presented manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1 {
    pub b1: usize,
    pub torsion: Vec<BigInt>,
    pub order: BigInt,
}

pub fn h1_invariants(m: &SurgeryPresentation) -> Result<H1> {
    let link = m.surgered_link()?;
    if !link.is_integral() {
        return Err(Error::Precondition("non-integral framing".into()));
    }
    let lm = link.integer_linking_matrix()?;
    let n = lm.rows();
    let (factors, rank) = smith_normal_form(&lm);
    let torsion: Vec<BigInt> = factors.iter().filter(|d| !d.is_zero() && !d.is_one()).map(|d| d.abs()).collect();
    let order = torsion.iter().fold(BigInt::one(), |a, d| a * d);
    Ok(H1 { b1: n - rank, torsion, order })
}

/// Dimension of `H₁(M; Z_p)`.
pub fn bp(m: &SurgeryPresentation, p: u64) -> Result<usize> {
    let link = m.surgered_link()?;
    if !link.is_integral() {
        return Err(Error::Precondition("non-integral framing".into()));
    }
    let lm = link.integer_linking_matrix()?;
    Ok(lm.rows() - rank_mod_p(&lm, p)?)
}

/// Minimum of `bp` over the terms; `None` for the zero sum.
pub fn bp_sum(x: &FormalSum<SurgeryPresentation>, p: u64) -> Result<Option<usize>> {
    let mut best: Option<usize> = None;
    for (_, m) in x.iter() {
        let b = bp(m, p)?;
        best = Some(best.map_or(b, |x: usize| x.min(b)));
    }
    Ok(best)
}

/// `Σ_{S<L} (-1)^|S| M_S` without any admissibility check. Terms keep the
/// remaining surgery components, so they can be bracketed again.
pub fn alternating_sum(m: &SurgeryPresentation, sel: &SublinkSelector) -> FormalSum<SurgeryPresentation> {
    let mut out = FormalSum::zero();
    for s in sel.subsets() {
        let sign = if s.count() % 2 == 0 { 1 } else { -1 };
        out.add_term(BigInt::from(sign), m.promote(&s));
    }
    out
}

fn check_selector(m: &SurgeryPresentation, sel: &SublinkSelector) -> Result<()> {
    if sel.len() != m.link.num_components() {
        return Err(Error::Precondition(format!("selector has {} entries, link has {} components", sel.len(), m.link.num_components())));
    }
    for i in sel.indices() {
        if m.link.components[i].role != Role::Surgery {
            return Err(Error::Precondition(format!("component {i} is a base component")));
        }
    }
    Ok(())
}

/// The surgery bracket `[M, L]` of an admissible sublink of surgery components.
pub fn bracket(m: &SurgeryPresentation, sel: &SublinkSelector) -> Result<FormalSum<SurgeryPresentation>> {
    check_selector(m, sel)?;
    if !m.link.is_admissible(sel)? {
        return Err(Error::Precondition("selected sublink is not admissible".into()));
    }
    Ok(alternating_sum(m, sel))
}

pub fn connected_sum(a: &SurgeryPresentation, b: &SurgeryPresentation) -> SurgeryPresentation {
    SurgeryPresentation::new(a.link.disjoint_union(&b.link))
}

pub fn connected_sum_formal(
    x: &FormalSum<SurgeryPresentation>,
    y: &FormalSum<SurgeryPresentation>,
) -> FormalSum<SurgeryPresentation> {
    x.flat_map(|a| y.map(|b| connected_sum(a, b)))
}

/// Both sides of `[S³_J, L] = Σ_{S<J} (-1)^|S| [S³, L ∪ S]`, as formal sums of
/// sublinks of `J ∪ L`.
pub fn lemma_10_3_expand(
    link: &FramedLink,
    j: &SublinkSelector,
    l: &SublinkSelector,
) -> Result<(FormalSum<SurgeryPresentation>, FormalSum<SurgeryPresentation>)> {
    let n = link.num_components();
    if j.len() != n || l.len() != n {
        return Err(Error::Precondition("selector length".into()));
    }
    if (0..n).any(|i| j.contains(i) && l.contains(i)) {
        return Err(Error::Precondition("J and L overlap".into()));
    }
    let jl = SublinkSelector((0..n).map(|i| j.contains(i) || l.contains(i)).collect());
    let idx = jl.indices();
    for (a, &x) in idx.iter().enumerate() {
        for &y in &idx[a + 1..] {
            if link.linking_number(x, y)? != 0 {
                return Err(Error::Precondition(format!("components {x} and {y} link")));
            }
        }
    }
    if !link.is_admissible(l)? {
        return Err(Error::Precondition("L is not admissible".into()));
    }
    let sub = link.sublink(&jl)?;
    let jj = SublinkSelector(idx.iter().map(|&i| j.contains(i)).collect());
    let ll = SublinkSelector(idx.iter().map(|&i| l.contains(i)).collect());
    let roles: Vec<Role> = (0..idx.len()).map(|i| if jj.contains(i) { Role::Base } else { Role::Surgery }).collect();
    let lhs = bracket(&SurgeryPresentation::new(sub.with_roles(&roles)), &ll)?;
    let mut rhs = FormalSum::zero();
    let all_surgery = sub.with_roles(&vec![Role::Surgery; idx.len()]);
    for s in jj.subsets() {
        let sign = if s.count() % 2 == 0 { 1 } else { -1 };
        let ls = SublinkSelector((0..idx.len()).map(|i| ll.contains(i) || s.contains(i)).collect());
        let term = alternating_sum(&SurgeryPresentation::new(all_surgery.clone()), &ls);
        rhs.add_assign(&term.scale(&BigInt::from(sign)));
    }
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------- values

/// Where an invariant takes its values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueRing {
    Rationals,
    Lambda(u32),
    /// Integers modulo the given number (`Z_{p^k}`).
    Residues(BigInt),
    Z16,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(BigRational),
    Lambda(CyclotomicInt),
    Residue { value: BigInt, modulus: BigInt },
}

impl ValueRing {
    pub fn zero(&self) -> Value {
        match self {
            ValueRing::Rationals => Value::Rational(BigRational::zero()),
            ValueRing::Lambda(p) => Value::Lambda(CyclotomicInt::zero(*p)),
            ValueRing::Residues(m) => Value::Residue { value: BigInt::zero(), modulus: m.clone() },
            ValueRing::Z16 => Value::Residue { value: BigInt::zero(), modulus: 16.into() },
        }
    }

    pub fn one(&self) -> Value {
        match self {
            ValueRing::Rationals => Value::Rational(BigRational::one()),
            ValueRing::Lambda(p) => Value::Lambda(CyclotomicInt::one(*p)),
            ValueRing::Residues(m) => Value::residue(BigInt::one(), m.clone()),
            ValueRing::Z16 => Value::residue(BigInt::one(), 16.into()),
        }
    }
}

impl Value {
    pub fn residue(v: BigInt, m: BigInt) -> Value {
        Value::Residue { value: v.mod_floor(&m), modulus: m }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rational(r) => r.is_zero(),
            Value::Lambda(a) => a.is_zero(),
            Value::Residue { value, .. } => value.is_zero(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Value {
        match self {
            Value::Rational(r) => Value::Rational(r * BigRational::from_integer(k.clone())),
            Value::Lambda(a) => Value::Lambda(a.scale(k)),
            Value::Residue { value, modulus } => Value::residue(value * k, modulus.clone()),
        }
    }

    pub fn add(&self, o: &Value) -> Result<Value> {
        match (self, o) {
            (Value::Rational(a), Value::Rational(b)) => Ok(Value::Rational(a + b)),
            (Value::Lambda(a), Value::Lambda(b)) if a.p() == b.p() => Ok(Value::Lambda(a + b)),
            (Value::Residue { value: a, modulus: m }, Value::Residue { value: b, modulus: n }) if m == n => {
                Ok(Value::residue(a + b, m.clone()))
            }
            _ => Err(Error::Invalid(format!("cannot add {self} and {o}"))),
        }
    }

    pub fn mul(&self, o: &Value) -> Result<Value> {
        match (self, o) {
            (Value::Rational(a), Value::Rational(b)) => Ok(Value::Rational(a * b)),
            (Value::Lambda(a), Value::Lambda(b)) if a.p() == b.p() => Ok(Value::Lambda(a * b)),
            (Value::Residue { value: a, modulus: m }, Value::Residue { value: b, modulus: n }) if m == n => {
                Ok(Value::residue(a * b, m.clone()))
            }
            _ => Err(Error::Invalid(format!("cannot multiply {self} and {o}"))),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Value::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            Value::Rational(r) => serde_json::json!({ "ring": "Q", "value": crate::link_diagrams::format_rational(r) }),
            Value::Lambda(a) => serde_json::json!({
                "ring": format!("Lambda_{}", a.p()),
                "h_coeffs": a.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }),
            Value::Residue { value, modulus } => {
                serde_json::json!({ "ring": format!("Z_{modulus}"), "value": value.to_string() })
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => write!(f, "{r}"),
            Value::Lambda(a) => write!(f, "{a}"),
            Value::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

// ---------------------------------------------------------------- invariants

pub type Evaluator = Arc<dyn Fn(&SurgeryPresentation) -> Result<Value> + Send + Sync>;

/// A named invariant of presented manifolds.
#[derive(Clone)]
pub struct Invariant {
    pub name: String,
    pub ring: ValueRing,
    pub evaluator: Evaluator,
    pub claimed_degree: Option<usize>,
}

impl fmt::Debug for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Invariant")
            .field("name", &self.name)
            .field("ring", &self.ring)
            .field("claimed_degree", &self.claimed_degree)
            .finish()
    }
}

impl Invariant {
    pub fn new(
        name: impl Into<String>,
        ring: ValueRing,
        claimed_degree: Option<usize>,
        f: impl Fn(&SurgeryPresentation) -> Result<Value> + Send + Sync + 'static,
    ) -> Self {
        Invariant { name: name.into(), ring, evaluator: Arc::new(f), claimed_degree }
    }

    /// The invariant that is 1 on every manifold (degree 0).
    pub fn constant_one(ring: ValueRing) -> Self {
        let one = ring.one();
        Invariant::new("1", ring, Some(0), move |_| Ok(one.clone()))
    }

    /// Value on a single presentation (surgery components are dropped first).
    pub fn eval(&self, m: &SurgeryPresentation) -> Result<Value> {
        let man = m.manifold()?;
        (self.evaluator)(&man).map_err(|e| Error::Term {
            term: String::from_utf8_lossy(&man.encode()).into_owned(),
            source: Box::new(e),
        })
    }
}

/// Linear extension of an invariant to formal sums; terms are evaluated in
/// parallel and summed in canonical order.
pub fn evaluate(phi: &Invariant, x: &FormalSum<SurgeryPresentation>) -> Result<Value> {
    let terms: Vec<(&BigInt, &SurgeryPresentation)> = x.iter().collect();
    let vals: Vec<Result<Value>> = terms.par_iter().map(|(_, m)| phi.eval(m)).collect();
    let mut acc = phi.ring.zero();
    for ((c, _), v) in terms.iter().zip(vals) {
        acc = acc.add(&v?.scale(c))?;
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct DegreeCase {
    pub components: usize,
    pub value: Value,
}

#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub invariant: String,
    pub cases: Vec<DegreeCase>,
    pub pass: bool,
}

/// Evaluates `φ([M, L])` on each case; passes iff every value vanishes.
pub fn degree_vanishing_test(phi: &Invariant, cases: &[(SurgeryPresentation, SublinkSelector)]) -> Result<DegreeReport> {
    let mut out = Vec::new();
    for (m, l) in cases {
        if let Some(d) = phi.claimed_degree {
            if l.count() <= d {
                return Err(Error::Precondition(format!("{} components do not exceed degree {d}", l.count())));
            }
        }
        let value = evaluate(phi, &bracket(m, l)?)?;
        out.push(DegreeCase { components: l.count(), value });
    }
    let pass = out.iter().all(|c| c.value.is_zero());
    Ok(DegreeReport { invariant: phi.name.clone(), cases: out, pass })
}

/// Pointwise product of two rational-valued invariants.
pub fn product_invariant(a: &Invariant, b: &Invariant) -> Result<Invariant> {
    if a.ring != ValueRing::Rationals || b.ring != ValueRing::Rationals {
        return Err(Error::Precondition(format!("product needs rational values: {:?}, {:?}", a.ring, b.ring)));
    }
    let (fa, fb) = (a.evaluator.clone(), b.evaluator.clone());
    let degree = match (a.claimed_degree, b.claimed_degree) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    };
    Ok(Invariant::new(format!("{}*{}", a.name, b.name), ValueRing::Rationals, degree, move |m| fa(m)?.mul(&fb(m)?)))
}

/// Both sides of `λλ'([M,L]) = Σ_{S<L} λ([M,S]) λ'([M_S, L−S])`.
pub fn product_formula_sides(
    a: &Invariant,
    b: &Invariant,
    m: &SurgeryPresentation,
    l: &SublinkSelector,
) -> Result<(Value, Value)> {
    let ab = product_invariant(a, b)?;
    let lhs = evaluate(&ab, &bracket(m, l)?)?;
    let mut rhs = ValueRing::Rationals.zero();
    for s in l.subsets() {
        let rest = SublinkSelector((0..l.len()).map(|i| l.contains(i) && !s.contains(i)).collect());
        let x = evaluate(a, &bracket(m, &s)?)?;
        let y = evaluate(b, &bracket(&m.promote(&s), &rest)?)?;
        rhs = rhs.add(&x.mul(&y)?)?;
    }
    Ok((lhs, rhs))
}
