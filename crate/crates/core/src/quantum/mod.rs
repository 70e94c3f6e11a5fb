//! The quantum SO(3) invariant `τ_p` at a primitive `p`-th root of unity and
//! its truncations, p-order and p-depth.
//!
//! Kauffman bracket conventions: `A = q^a` with `4a ≡ 1 (mod p)`, loop value
//! `δ = -A² - A⁻²`, `[k] = (A^{2k} - A^{-2k}) / (A² - A⁻²)`. A component
//! colored `n` carries the Jones–Wenzl idempotent on `n` strands; SO(3)
//! colors are the even `n` in `0..=p-3` (dimension `k = n + 1` odd).

mod fusion;
mod state_sum;
mod tables;
mod tl;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cyclotomic::{check_prime, CyclotomicInt};
use crate::error::{Error, Result};
use crate::exact_algebra::{signature_nullity, FormalSum};
use crate::link_diagrams::{FramedLink, MorseLink};
use crate::manifolds::{bp, bp_sum, Invariant, SurgeryPresentation, Value, ValueRing};

pub use state_sum::{evaluate_at, kauffman_bracket_state_sum};
pub use tables::QTables;
pub use tl::TLVector;

/// Strand cap shared by the engines: cabled width for the Temperley–Lieb
/// engine, uncabled width for the fusion engine.
pub const DEFAULT_WIDTH_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Sweep in a basis of fusion trees of colored strands.
    Fusion,
    /// Sweep of Temperley–Lieb matchings over Chebyshev-expanded cables.
    Cabled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantumConfig {
    pub engine: Engine,
    pub width_cap: usize,
}

impl Default for QuantumConfig {
    fn default() -> Self {
        QuantumConfig { engine: Engine::Fusion, width_cap: DEFAULT_WIDTH_CAP }
    }
}

/// `n = (p - 3) / 2`.
pub fn half_rank(p: u32) -> u32 {
    (p - 3) / 2
}

/// SO(3) colors `0, 2, ..., p - 3`.
pub fn so3_colors(p: u32) -> Vec<u32> {
    (0..=p - 3).step_by(2).collect()
}

struct Prepared {
    morse: MorseLink,
    /// framing minus blackboard writhe, per component
    twist: Vec<i64>,
}

fn prepare(l: &FramedLink) -> Result<Prepared> {
    if !l.is_integral() {
        return Err(Error::Precondition("quantum invariants need integral framings".into()));
    }
    let morse = MorseLink::from_link(l)?;
    let d = morse.to_link()?;
    let w = d.writhes()?;
    let twist = l
        .components
        .iter()
        .zip(&w)
        .map(|(c, &w)| {
            c.framing.to_integer().to_i64().map(|a| a - w).ok_or_else(|| Error::Invalid("framing too large".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Prepared { morse, twist })
}

/// Bracket of the link with component `i` colored by the idempotent on
/// `colors[i]` strands, framings respected.
fn colored_bracket(t: &QTables, pr: &Prepared, colors: &[u32], cfg: &QuantumConfig) -> Result<CyclotomicInt> {
    let mut v = match cfg.engine {
        Engine::Fusion => fusion::evaluate(t, &pr.morse, colors, cfg.width_cap)?,
        Engine::Cabled => tl::colored_evaluate(t, &pr.morse, colors, cfg.width_cap)?,
    };
    for (i, &n) in colors.iter().enumerate() {
        v = &v * &t.twist_power(n, pr.twist[i]);
    }
    Ok(v)
}

/// Colored Jones evaluation `J_{L,k}` in `Λ_p`; `k[i]` is the dimension
/// label (idempotent on `k[i] - 1` strands). The `k`-colored 0-framed unknot
/// gives `(-1)^(k-1) [k]`.
pub fn colored_jones(l: &FramedLink, k: &[u32], p: u32) -> Result<CyclotomicInt> {
    colored_jones_with(l, k, p, &QuantumConfig::default())
}

pub fn colored_jones_with(l: &FramedLink, k: &[u32], p: u32, cfg: &QuantumConfig) -> Result<CyclotomicInt> {
    check_prime(p)?;
    if k.len() != l.num_components() || k.iter().any(|&x| x == 0 || x > p - 1) {
        return Err(Error::Invalid(format!("colors {k:?} outside 1..={}", p - 1)));
    }
    let t = QTables::new(p);
    let pr = prepare(l)?;
    let colors: Vec<u32> = k.iter().map(|&x| x - 1).collect();
    colored_bracket(&t, &pr, &colors, cfg)
}

/// `⟨L⟩`: every component colored by `Σ_n Δ_n e_n` over SO(3) colors.
pub fn p_bracket(l: &FramedLink, p: u32) -> Result<CyclotomicInt> {
    p_bracket_with(l, p, &QuantumConfig::default())
}

pub fn p_bracket_with(l: &FramedLink, p: u32, cfg: &QuantumConfig) -> Result<CyclotomicInt> {
    check_prime(p)?;
    let t = QTables::new(p);
    let pr = prepare(l)?;
    let cols = so3_colors(p);
    let nc = l.num_components();
    let total = cols.len().pow(nc as u32);
    let terms: Vec<Result<CyclotomicInt>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut colors = Vec::with_capacity(nc);
            for _ in 0..nc {
                colors.push(cols[idx % cols.len()]);
                idx /= cols.len();
            }
            let mut w = colored_bracket(&t, &pr, &colors, cfg)?;
            for &n in &colors {
                w = &w * t.delta(n);
            }
            Ok(w)
        })
        .collect();
    let mut acc = CyclotomicInt::zero(p);
    for x in terms {
        acc = &acc + &x?;
    }
    Ok(acc)
}

/// `b_a`, the p-bracket of the `a`-framed unknot.
pub fn b(a: i64, p: u32) -> Result<CyclotomicInt> {
    check_prime(p)?;
    let t = QTables::new(p);
    Ok(so3_colors(p).iter().fold(CyclotomicInt::zero(p), |acc, &n| {
        let d = t.delta(n);
        &acc + &(&(d * d) * &t.twist_power(n, a))
    }))
}

/// `|L| = b_{+1}^{ℓ₊} b_{-1}^{ℓ₋} b_0^{ℓ₀} / h^{n ℓ₀}`.
pub fn p_norm(l: &FramedLink, p: u32) -> Result<CyclotomicInt> {
    check_prime(p)?;
    let (pos, neg, nul) = signature_nullity(&l.integer_linking_matrix()?)?;
    let mut v = b(1, p)?.pow(pos as u64);
    v = &v * &b(-1, p)?.pow(neg as u64);
    v = &v * &b(0, p)?.pow(nul as u64);
    for _ in 0..half_rank(p) as usize * nul {
        v = v.div_h().ok_or_else(|| Error::InexactDivision("b_0 is not divisible by h^n".into()))?;
    }
    Ok(v)
}

/// Everything computed for one surgery link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumResult {
    pub p: u32,
    pub bracket: CyclotomicInt,
    pub norm: CyclotomicInt,
    pub tau: CyclotomicInt,
    /// `(ℓ₊, ℓ₋, ℓ₀)` of the linking matrix
    pub signature: (usize, usize, usize),
}

pub fn quantum_result(m: &SurgeryPresentation, p: u32, cfg: &QuantumConfig) -> Result<QuantumResult> {
    check_prime(p)?;
    let l = m.surgered_link()?;
    let bracket = p_bracket_with(&l, p, cfg)?;
    let norm = p_norm(&l, p)?;
    let tau = bracket.div_exact(&norm)?;
    let signature = signature_nullity(&l.integer_linking_matrix()?)?;
    Ok(QuantumResult { p, bracket, norm, tau, signature })
}

/// `τ_p(M) = ⟨L⟩ / |L|`.
pub fn tau_p(m: &SurgeryPresentation, p: u32) -> Result<CyclotomicInt> {
    Ok(quantum_result(m, p, &QuantumConfig::default())?.tau)
}

pub fn tau_p_with(m: &SurgeryPresentation, p: u32, cfg: &QuantumConfig) -> Result<CyclotomicInt> {
    Ok(quantum_result(m, p, cfg)?.tau)
}

/// Linear extension of `τ_p`.
pub fn tau_p_sum(x: &FormalSum<SurgeryPresentation>, p: u32) -> Result<CyclotomicInt> {
    match crate::manifolds::evaluate(&tau_invariant(p), x)? {
        Value::Lambda(v) => Ok(v),
        other => Err(Error::Invalid(format!("unexpected value {other}"))),
    }
}

/// `τ_p^d = π^d ∘ τ_p`, as `(residue, modulus)`.
pub fn tau_p_d(x: &FormalSum<SurgeryPresentation>, p: u32, d: u32) -> Result<(BigInt, BigInt)> {
    Ok(tau_p_sum(x, p)?.pi_d(d))
}

/// `o_p(x) = v_h(τ_p(x))`; `None` when `τ_p(x) = 0`.
pub fn p_order(x: &FormalSum<SurgeryPresentation>, p: u32) -> Result<Option<u32>> {
    Ok(tau_p_sum(x, p)?.v_h())
}

/// `d_p(x) = 3 o_p(x) - n b_p(x)`; `None` when `τ_p(x) = 0`.
pub fn p_depth(x: &FormalSum<SurgeryPresentation>, p: u32) -> Result<Option<i64>> {
    let o = match p_order(x, p)? {
        Some(o) => o as i64,
        None => return Ok(None),
    };
    let b = bp_sum(x, p as u64)?.unwrap_or(0) as i64;
    Ok(Some(3 * o - half_rank(p) as i64 * b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthEntry {
    pub p: u32,
    pub order: Option<u32>,
    pub bp: usize,
    pub depth: Option<i64>,
    /// depth equals the supplied lower bound
    pub attains_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustReport {
    pub lower_bound: i64,
    pub entries: Vec<DepthEntry>,
    pub robust: bool,
}

/// `d_p` across the given primes against a known lower bound for the depth.
pub fn robust_check(x: &FormalSum<SurgeryPresentation>, primes: &[u32], lower_bound: i64) -> Result<RobustReport> {
    let mut entries = Vec::new();
    for &p in primes {
        let order = p_order(x, p)?;
        let bpv = bp_sum(x, p as u64)?.unwrap_or(0);
        let depth = order.map(|o| 3 * o as i64 - half_rank(p) as i64 * bpv as i64);
        entries.push(DepthEntry { p, order, bp: bpv, depth, attains_bound: depth == Some(lower_bound) });
    }
    let robust = entries.iter().all(|e| e.attains_bound);
    Ok(RobustReport { lower_bound, entries, robust })
}

/// `τ_p` as an invariant with values in `Λ_p`.
pub fn tau_invariant(p: u32) -> Invariant {
    Invariant::new(format!("tau_{p}"), ValueRing::Lambda(p), None, move |m| Ok(Value::Lambda(tau_p(m, p)?)))
}

/// `τ_p^d` as an invariant with values in `Z_{p^k}`; finite type of degree
/// at most `3d` on manifolds with `b_p = 0`.
pub fn tau_d_invariant(p: u32, d: u32) -> Invariant {
    let k = d / (p - 1) + 1;
    let modulus = BigInt::from(p).pow(k);
    Invariant::new(format!("tau_{p}^{d}"), ValueRing::Residues(modulus.clone()), Some(3 * d as usize), move |m| {
        let (v, md) = tau_p(m, p)?.pi_d(d);
        Ok(Value::residue(v, md))
    })
}

/// Degree bound `3d - n b_p(M)` for `τ_p^d` on brackets inside `M`.
pub fn tau_d_degree_bound(m: &SurgeryPresentation, p: u32, d: u32) -> Result<i64> {
    Ok(3 * d as i64 - half_rank(p) as i64 * bp(m, p as u64)? as i64)
}

#[cfg(test)]
mod tests;
