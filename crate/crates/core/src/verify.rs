//! Named property suites over the fixtures, shared by `ftinv verify` and the
//! acceptance tests. Randomized checks draw from a seeded ChaCha stream.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::conway::{c2n_invariant, conway_alternating, lescop_invariant, random_seifert};
use crate::cyclotomic::CyclotomicInt;
use crate::diagrams::{deframe_involution_failures, enumerate_graphs};
use crate::error::{Error, Result};
use crate::exact_algebra::FormalSum;
use crate::fixtures;
use crate::link_diagrams::{random_replacements, special_link, FramedLink, SublinkSelector};
use crate::manifolds::{
    alternating_sum, bp, bp_sum, bracket, connected_sum, evaluate, lemma_10_3_expand, product_formula_sides,
    SurgeryPresentation,
};
use crate::quantum::{half_rank, tau_p, tau_p_sum};
use crate::spin::{characteristic_sublinks, rochlin, rochlin_sum, spin_bracket};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Involutions,
    Divisibility,
    Degree,
    Product,
    QuantumAnchors,
    Spin,
    Lemma10_3,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Involutions,
        Suite::Divisibility,
        Suite::Degree,
        Suite::Product,
        Suite::QuantumAnchors,
        Suite::Spin,
        Suite::Lemma10_3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Involutions => "involutions",
            Suite::Divisibility => "divisibility",
            Suite::Degree => "degree",
            Suite::Product => "product",
            Suite::QuantumAnchors => "quantum-anchors",
            Suite::Spin => "spin",
            Suite::Lemma10_3 => "lemma10-3",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|x| x.name() == s)
    }
}

/// One assertion of a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

struct Checks {
    suite: &'static str,
    out: Vec<Check>,
}

impl Checks {
    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.out.push(Check { suite: self.suite, name: name.into(), pass, detail: detail.into() });
    }
}

pub fn run(suite: Suite, seed: u64) -> Result<Vec<Check>> {
    let mut c = Checks { suite: suite.name(), out: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::Involutions => involutions(&mut c)?,
        Suite::Divisibility => divisibility(&mut c, &mut rng)?,
        Suite::Degree => degree(&mut c, &mut rng)?,
        Suite::Product => product(&mut c, &mut rng)?,
        Suite::QuantumAnchors => quantum_anchors(&mut c)?,
        Suite::Spin => spin(&mut c)?,
        Suite::Lemma10_3 => lemma_10_3(&mut c, &mut rng)?,
    }
    Ok(c.out)
}

fn presentation(name: &str) -> Result<SurgeryPresentation> {
    fixtures::load_presentation(name)
}

// ---------------------------------------------------------------- suites

const INVOLUTION_LINKS: [&str; 8] =
    ["unknot", "hopf", "trefoil_R", "borromean", "borromean_surgery", "lambda_4", "lambda_hat_4", "e8"];

fn delta_twice(l: &FramedLink) -> Result<FormalSum<FramedLink>> {
    let mut out = FormalSum::zero();
    for (c, s) in l.delta()?.iter() {
        out.add_assign(&s.delta()?.scale(c));
    }
    Ok(out)
}

fn involutions(c: &mut Checks) -> Result<()> {
    for name in INVOLUTION_LINKS {
        let l = fixtures::load_link(name)?;
        let dd = delta_twice(&l)?;
        c.push(format!("delta twice on {name}"), dd == FormalSum::single(l), format!("{} terms", dd.len()));
    }
    for m in 1..=2u8 {
        for degree in 0..=4 {
            let total = enumerate_graphs(m, degree, false)?.len();
            let bad = deframe_involution_failures(m, degree)?.len();
            c.push(format!("deframing twice, m={m} degree {degree}"), bad == 0, format!("{total} graphs, {bad} failures"));
        }
    }
    Ok(())
}

fn divisibility<R: Rng>(c: &mut Checks, rng: &mut R) -> Result<()> {
    let (mut ok, mut failures) = (0, Vec::new());
    for trial in 0..100 {
        let genus = rng.gen_range(1..=3);
        let l = rng.gen_range(1..=4);
        let p = random_seifert(rng, genus, l, 2);
        match conway_alternating(&p) {
            Ok(_) => ok += 1,
            Err(Error::TheoremViolation(e)) => failures.push(format!("trial {trial}: {e}")),
            Err(e) => return Err(e),
        }
    }
    c.push("z^l divides the alternating Conway sum, 100 random presentations", failures.is_empty(), {
        if failures.is_empty() {
            format!("{ok} passed")
        } else {
            failures.join("; ")
        }
    });
    for name in ["seifert_borromean", "seifert_lambda_4", "seifert_lambda_6", "seifert_lambda_hat_4"] {
        let p = fixtures::load_seifert(name)?;
        let r = conway_alternating(&p);
        c.push(format!("divisibility on {name}"), r.is_ok(), match r {
            Ok(v) => v.to_string(),
            Err(e) => e.to_string(),
        });
    }
    Ok(())
}

/// Random special link: `m` 0-framed base unknots, `l` surgery components.
fn random_special<R: Rng>(rng: &mut R, m: usize, l: usize, count: usize) -> Result<SurgeryPresentation> {
    let reps = random_replacements(rng, m, l, count);
    Ok(SurgeryPresentation::new(special_link(m, l, &reps)?))
}

/// Brackets on which the quantum degree checks run, with the primes to use.
pub const QUANTUM_BRACKETS: [(&str, &[u32]); 4] =
    [("borromean_surgery", &[5, 7]), ("lambda_2", &[5, 7]), ("lambda_4", &[5, 7]), ("lambda_hat_4", &[5])];

fn degree<R: Rng>(c: &mut Checks, rng: &mut R) -> Result<()> {
    let c2 = c2n_invariant(1);
    for k in 0..3 {
        let m = random_special(rng, 1, 3, 3)?;
        let v = evaluate(&c2, &bracket(&m, &m.surgery_selector())?)?;
        c.push(format!("C2 on a random 3-component bracket #{k}"), v.is_zero(), v.to_string());
    }
    let m = random_special(rng, 1, 5, 4)?;
    let v = evaluate(&c2n_invariant(2), &bracket(&m, &m.surgery_selector())?)?;
    c.push("C4 on a random 5-component bracket", v.is_zero(), v.to_string());
    for (name, primes) in QUANTUM_BRACKETS {
        let m = presentation(name)?;
        let sel = m.surgery_selector();
        let l = sel.count() as i64;
        let x = bracket(&m, &sel)?;
        for &p in primes {
            let tau = tau_p_sum(&x, p)?;
            let n = half_rank(p) as i64;
            let b = bp_sum(&x, p as u64)?.unwrap_or(0) as i64;
            let o = tau.v_h();
            let bound = n * b + l;
            c.push(
                format!("3 o_p >= n b_p + l on {name}, p={p}"),
                o.map_or(true, |o| 3 * o as i64 >= bound),
                format!("o_p={o:?} b_p={b} l={l}"),
            );
            // l > 3d - n b  <=>  3d < l + n b
            let ds: Vec<u32> = (0..).take_while(|&d| (3 * d as i64) < l + n * b).collect();
            let nonzero: Vec<u32> = ds.iter().copied().filter(|&d| !tau.pi_d(d).0.is_zero()).collect();
            c.push(
                format!("tau_{p}^d vanishes on {name} for d in {ds:?}"),
                nonzero.is_empty(),
                format!("nonzero at {nonzero:?}"),
            );
        }
    }
    Ok(())
}

fn product<R: Rng>(c: &mut Checks, rng: &mut R) -> Result<()> {
    let c2 = c2n_invariant(1);
    let c4 = c2n_invariant(2);
    let lescop = lescop_invariant();
    let mut cases = vec![
        ("C2*C2 on lambda_4".to_string(), &c2, &c2, presentation("lambda_4")?),
        ("C2*C4 on lambda_2".to_string(), &c2, &c4, presentation("lambda_2")?),
        ("lescop*C2 on lambda_2".to_string(), &lescop, &c2, presentation("lambda_2")?),
    ];
    for k in 0..2 {
        cases.push((format!("C2*C2 on a random 4-component bracket #{k}"), &c2, &c2, random_special(rng, 1, 4, 4)?));
    }
    for (name, a, b, m) in cases {
        let (lhs, rhs) = product_formula_sides(a, b, &m, &m.surgery_selector())?;
        c.push(name, lhs == rhs, format!("{lhs} vs {rhs}"));
    }
    Ok(())
}

const TAU3_FIXTURES: [&str; 5] = ["s3_plus", "lens_2", "poincare", "trefoil_R", "figure_eight"];
const PRODUCT_PAIRS: [(&str, &str); 5] =
    [("trefoil_R", "lens_3"), ("poincare", "lens_2"), ("figure_eight", "s3_plus"), ("trefoil_L", "trefoil_R"), ("hopf", "lens_3")];

fn quantum_anchors(c: &mut Checks) -> Result<()> {
    for p in [5u32, 7, 11] {
        let s3 = tau_p(&SurgeryPresentation::sphere(), p)?;
        c.push(format!("tau_{p}(S3) = 1"), s3.is_one(), s3.to_string());
        let t = tau_p(&presentation("s1xs2")?, p)?;
        c.push(format!("tau_{p}(S1xS2) = h^{}", half_rank(p)), t == CyclotomicInt::h_pow(p, half_rank(p)), t.to_string());
    }
    for name in TAU3_FIXTURES {
        let t = tau_p(&presentation(name)?, 3)?;
        c.push(format!("tau_3({name}) = 1"), t.is_one(), t.to_string());
    }
    for (a, b) in PRODUCT_PAIRS {
        let (ma, mb) = (presentation(a)?, presentation(b)?);
        let s = tau_p(&connected_sum(&ma, &mb), 5)?;
        let prod = &tau_p(&ma, 5)? * &tau_p(&mb, 5)?;
        c.push(format!("tau_5 multiplicative on {a} # {b}"), s == prod, s.to_string());
    }
    for p in [5u32, 7] {
        let t1 = tau_p(&presentation("handle_slide_1")?, p)?;
        let t2 = tau_p(&presentation("handle_slide_2")?, p)?;
        c.push(format!("tau_{p} agrees on the handle-slide pair"), t1 == t2, t1.to_string());
    }
    Ok(())
}

const SPIN_COUNT_FIXTURES: [&str; 8] = ["unknot", "s3_plus", "lens_2", "hopf", "torus3", "poincare", "e8", "lambda_4"];

fn spin(c: &mut Checks) -> Result<()> {
    for name in SPIN_COUNT_FIXTURES {
        let m = presentation(name)?;
        let count = characteristic_sublinks(&m)?.len();
        let expect = 1usize << bp(&m, 2)?;
        c.push(format!("spin structures on {name}"), count == expect, format!("{count} characteristic sublinks, expected {expect}"));
    }
    let e8 = rochlin(&fixtures::load_spin("e8_spin")?)?;
    c.push("mu(E8) = 8", e8 == 8, e8.to_string());
    let poincare = rochlin(&fixtures::load_spin("poincare_spin")?)?;
    c.push("mu(Poincare sphere) = 8", poincare == 8, poincare.to_string());
    for name in ["lambda_4_spin", "lambda_4_spin_k", "lambda_hat_4_spin"] {
        let s = fixtures::load_spin(name)?;
        let mu = rochlin_sum(&spin_bracket(&s, &s.presentation.surgery_selector())?)?;
        c.push(format!("mu vanishes on the 4-component bracket of {name}"), mu == 0, mu.to_string());
    }
    let s = fixtures::load_spin("borromean_spin")?;
    let mu = rochlin_sum(&spin_bracket(&s, &s.presentation.surgery_selector())?)?;
    c.push("mu of the Borromean 3-component bracket is 8", mu == 8, mu.to_string());
    Ok(())
}

/// `[M, L ∪ K] = [M, L] − [M_K, L]` and `[M_K, L] = [M, L ∪ δK]` for every
/// surgery component `K`.
fn lemma_1_4(m: &SurgeryPresentation) -> Result<bool> {
    let sur = m.surgery_selector().indices();
    let n = m.link.num_components();
    for &k in &sur {
        let ksel = SublinkSelector::from_indices(n, &[k]);
        let rest: Vec<usize> = sur.iter().copied().filter(|&i| i != k).collect();
        let l = SublinkSelector::from_indices(n, &rest);
        let lk = m.surgery_selector();
        let mk = m.promote(&ksel);
        let with_k = bracket(m, &lk)?;
        let without = bracket(m, &l)?;
        let after = bracket(&mk, &l)?;
        if with_k != without.minus(&after) {
            return Ok(false);
        }
        let delta = alternating_sum(m, &lk).minus(&alternating_sum(m, &l)).negate();
        if after != delta {
            return Ok(false);
        }
    }
    Ok(true)
}

fn lemma_10_3<R: Rng>(c: &mut Checks, rng: &mut R) -> Result<()> {
    let mut cases = vec![("lambda_2".to_string(), presentation("lambda_2")?), ("lambda_4".to_string(), presentation("lambda_4")?)];
    for k in 0..4 {
        let m = rng.gen_range(1..=2);
        let l = rng.gen_range(2..=3);
        cases.push((format!("random special link #{k} ({m} base, {l} surgery)"), random_special(rng, m, l, 3)?));
    }
    for (name, m) in &cases {
        c.push(format!("bracket recursion on {name}"), lemma_1_4(m)?, "");
        let j = m.base_selector();
        let (lhs, rhs) = lemma_10_3_expand(&m.link, &j, &m.surgery_selector())?;
        c.push(format!("expansion through the base link on {name}"), lhs == rhs, format!("{} terms", lhs.len()));
    }
    Ok(())
}

/// Count of failing checks.
pub fn failures(checks: &[Check]) -> usize {
    checks.iter().filter(|c| !c.pass).count()
}
