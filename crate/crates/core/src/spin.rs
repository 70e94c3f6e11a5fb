//! Spin structures as characteristic sublinks, the Arf invariant from Conway
//! coefficients and the Rochlin invariant of spin surgery presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::conway::conway_link;
use crate::error::{Error, Result};
use crate::exact_algebra::{signature_nullity, Canonical, FormalSum, IntMatrix};
use crate::link_diagrams::{FramedLink, Role, SublinkSelector};
use crate::manifolds::{SurgeryPresentation, Value};

/// A surgery presentation with a spin structure given by a characteristic
/// sublink of its base components.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinPresentation {
    pub presentation: SurgeryPresentation,
    pub char: SublinkSelector,
}

fn linking_mod2(l: &FramedLink) -> Result<IntMatrix> {
    if !l.is_integral() {
        return Err(Error::Precondition("spin structures need integral framings".into()));
    }
    l.integer_linking_matrix()
}

fn is_characteristic(m: &IntMatrix, base: &[usize], char: &[usize]) -> bool {
    base.iter().all(|&i| {
        let s: BigInt = char.iter().map(|&j| m.get(i, j).clone()).sum();
        (m.get(i, i) - s).is_even()
    })
}

impl SpinPresentation {
    pub fn new(presentation: SurgeryPresentation, char: SublinkSelector) -> Result<Self> {
        let s = SpinPresentation { presentation, char };
        s.validate()?;
        Ok(s)
    }

    /// Checks that `char` is a characteristic sublink of the base components.
    pub fn validate(&self) -> Result<()> {
        let l = &self.presentation.link;
        if self.char.len() != l.num_components() {
            return Err(Error::Invalid("characteristic selector length".into()));
        }
        let base = self.presentation.base_selector();
        if self.char.indices().iter().any(|&i| !base.contains(i)) {
            return Err(Error::Precondition("characteristic sublink meets a surgery candidate".into()));
        }
        let m = linking_mod2(l)?;
        if !is_characteristic(&m, &base.indices(), &self.char.indices()) {
            return Err(Error::Precondition("sublink is not characteristic".into()));
        }
        Ok(())
    }

    /// Base sublink with the characteristic components colored 1.
    pub fn surgered_link(&self) -> Result<FramedLink> {
        let base = self.presentation.base_selector();
        let colors: Vec<Option<i64>> =
            (0..self.char.len()).map(|i| if self.char.contains(i) { Some(1) } else { None }).collect();
        let marked = self.presentation.link.with_colors(&colors);
        if base.count() == marked.num_components() {
            Ok(marked)
        } else {
            marked.sublink(&base)
        }
    }

    /// Link JSON with an extra `"char"` array of component indices.
    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        let link = FramedLink::from_json_value(&v)?;
        let idx: Vec<usize> = match v.get("char") {
            None => vec![],
            Some(c) => serde_json::from_value(c.clone()).map_err(|e| Error::Invalid(format!("char: {e}")))?,
        };
        let n = link.num_components();
        if idx.iter().any(|&i| i >= n) {
            return Err(Error::Invalid("char index out of range".into()));
        }
        Self::new(SurgeryPresentation::new(link), SublinkSelector::from_indices(n, &idx))
    }

    pub fn to_json(&self) -> String {
        let mut v = self.presentation.link.to_json_value();
        v["char"] = serde_json::json!(self.char.indices());
        serde_json::to_string(&v).expect("serializable")
    }
}

impl Canonical for SpinPresentation {
    fn encode(&self) -> Vec<u8> {
        match self.surgered_link() {
            Ok(l) => l.canonical_encoding(),
            Err(_) => format!("{self:?}").into_bytes(),
        }
    }
}

/// All characteristic sublinks of the base components, as selectors on the
/// whole link.
pub fn characteristic_sublinks(m: &SurgeryPresentation) -> Result<Vec<SublinkSelector>> {
    let l = &m.link;
    let lk = linking_mod2(l)?;
    let base = m.base_selector();
    let bi = base.indices();
    if bi.len() > 24 {
        return Err(Error::Cap(format!("{} base components", bi.len())));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << bi.len()) {
        let char: Vec<usize> = bi.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
        if is_characteristic(&lk, &bi, &char) {
            out.push(SublinkSelector::from_indices(l.num_components(), &char));
        }
    }
    Ok(out)
}

/// Arf invariant of a link whose components have even linking with each
/// other: the Möbius inversion of `Σ_S (-1)^s Arf(S) ≡ c_{t+1}(L)`, i.e.
/// `Arf(L) ≡ Σ_{S ≠ ∅} c_{|S|+1}(S) (mod 2)`.
pub fn arf_proper(l: &FramedLink) -> Result<u8> {
    let n = l.num_components();
    let lk = l.linking_matrix()?;
    for i in 0..n {
        for j in i + 1..n {
            if !lk[i][j].is_integer() || lk[i][j].to_integer().is_odd() {
                return Err(Error::Precondition(format!("components {i} and {j} link oddly")));
            }
        }
    }
    if n > 16 {
        return Err(Error::Cap(format!("{n} components")));
    }
    let all = SublinkSelector::all(n);
    let subs: Vec<SublinkSelector> = all.subsets().into_iter().filter(|s| s.count() > 0).collect();
    let parts: Vec<Result<BigInt>> = subs
        .par_iter()
        .map(|s| {
            let sub = if s.count() == n { l.clone() } else { l.sublink(s)? };
            let c = conway_link(&sub)?.coeff(s.count() as u32 + 1);
            if !c.is_integer() {
                return Err(Error::Invalid("non-integral Conway coefficient".into()));
            }
            Ok(c.to_integer())
        })
        .collect();
    let mut total = BigInt::zero();
    for p in parts {
        total += p?;
    }
    Ok(if total.is_even() { 0 } else { 1 })
}

/// Surgered link and the positions of the characteristic components in it.
fn local_char(s: &SpinPresentation) -> Result<(FramedLink, Vec<usize>)> {
    let link = s.presentation.surgered_link()?;
    let base = s.presentation.base_selector().indices();
    let c = base.iter().enumerate().filter(|(_, &i)| s.char.contains(i)).map(|(k, _)| k).collect();
    Ok((link, c))
}

/// `σ − C·C`: signature of the full linking matrix minus the total linking
/// of the characteristic sublink with itself.
pub fn signature_defect(s: &SpinPresentation) -> Result<i64> {
    let (link, c) = local_char(s)?;
    let lk = link.integer_linking_matrix()?;
    let (pos, neg, _) = signature_nullity(&lk)?;
    let cc: BigInt = c.iter().flat_map(|&i| c.iter().map(move |&j| (i, j))).map(|(i, j)| lk.get(i, j).clone()).sum();
    let cc = cc.to_i64().ok_or_else(|| Error::Invalid("linking too large".into()))?;
    Ok(pos as i64 - neg as i64 - cc)
}

/// Rochlin invariant mod 16: `σ − C·C + 8 Arf(C)`.
pub fn rochlin(s: &SpinPresentation) -> Result<u8> {
    s.validate()?;
    let (link, c) = local_char(s)?;
    let arf = if c.is_empty() {
        0
    } else {
        let n = link.num_components();
        let sub = if c.len() == n { link } else { link.sublink(&SublinkSelector::from_indices(n, &c))? };
        arf_proper(&sub)?
    };
    let v = (signature_defect(s)? + 8 * arf as i64).rem_euclid(16);
    Ok(v as u8)
}

pub fn rochlin_value(s: &SpinPresentation) -> Result<Value> {
    Ok(Value::residue(rochlin(s)?.into(), 16.into()))
}

/// `Σ_S (-1)^{|S|} M_S` over subsets `S` of the selected surgery candidates;
/// each term's spin structure has characteristic sublink `char ∪ S`.
pub fn spin_bracket(m: &SpinPresentation, sel: &SublinkSelector) -> Result<FormalSum<SpinPresentation>> {
    m.validate()?;
    let l = &m.presentation.link;
    for i in sel.indices() {
        if l.components[i].role != Role::Surgery {
            return Err(Error::Precondition(format!("component {i} is not a surgery candidate")));
        }
    }
    if !l.is_admissible(sel)? {
        return Err(Error::Precondition("selected sublink is not admissible".into()));
    }
    let mut out = FormalSum::zero();
    for s in sel.subsets() {
        let mut char = m.char.clone();
        for i in s.indices() {
            char.0[i] = true;
        }
        let term = SpinPresentation::new(m.presentation.promote(&s), char)?;
        let sign = if s.count() % 2 == 0 { 1 } else { -1 };
        out.add_term(sign.into(), term);
    }
    Ok(out)
}

/// Rochlin invariant extended linearly, mod 16.
pub fn rochlin_sum(x: &FormalSum<SpinPresentation>) -> Result<u8> {
    let terms: Vec<(&BigInt, &SpinPresentation)> = x.iter().collect();
    let vals: Vec<Result<BigInt>> = terms.par_iter().map(|(c, s)| Ok(*c * BigInt::from(rochlin(s)?))).collect();
    let mut total = BigInt::zero();
    for v in vals {
        total += v?;
    }
    Ok(total.mod_floor(&BigInt::from(16)).to_u8().expect("residue mod 16"))
}

/// Disjoint union of spin presentations (connected sum of spin manifolds).
pub fn spin_connected_sum(a: &SpinPresentation, b: &SpinPresentation) -> Result<SpinPresentation> {
    let link = a.presentation.link.disjoint_union(&b.presentation.link);
    let mut char = a.char.0.clone();
    char.extend(b.char.0.iter().copied());
    SpinPresentation::new(SurgeryPresentation::new(link), SublinkSelector(char))
}

#[cfg(test)]
mod tests;
