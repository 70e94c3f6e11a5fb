//! `ftinv`: invariants of surgery presentations, diagram group tables and
//! property suites from the command line.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value as Json};

use ftinv::conway::{c2n, conway_alternating, conway_link, lescop_b1_1, manifold_conway, seifert_conway, SeifertPresentation};
use ftinv::diagrams::quotient_structure;
use ftinv::fixtures;
use ftinv::manifolds::{bp, bp_sum, bracket};
use ftinv::quantum::{half_rank, quantum_result, tau_p_sum, QuantumConfig};
use ftinv::spin::{arf_proper, rochlin, SpinPresentation};
use ftinv::verify::{self, Suite, DEFAULT_SEED};
use ftinv::{CyclotomicInt, Error, FormalSum, FramedLink, SublinkSelector, SurgeryPresentation};

#[derive(Parser)]
#[command(name = "ftinv", version, about = "Finite type invariants of 3-manifolds from framed surgery links")]
struct Cli {
    /// Machine-readable output for `table` and `verify`
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an invariant on a link, Seifert or spin presentation file
    Invariant {
        kind: Kind,
        /// Path, or fixture name resolved against FTINV_FIXTURES
        file: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        /// Coefficient index for c2n (coefficient of z^2n)
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Evaluate on the bracket of all surgery components instead
        #[arg(long)]
        bracket: bool,
    },
    /// Rank and torsion of the graph groups, one CSV row per degree
    Table {
        #[arg(long, default_value_t = 1)]
        m: u8,
        #[arg(long)]
        lmax: usize,
        /// Drop torsion factors that are powers of two
        #[arg(long = "mod-2-torsion")]
        mod_2_torsion: bool,
        /// Use all graphs, not only closed ones
        #[arg(long)]
        all_graphs: bool,
    },
    /// Run a property suite over the fixtures
    Verify {
        suite: SuiteArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Conway,
    C2n,
    Lescop,
    Tau,
    #[value(name = "tau_d")]
    TauD,
    #[value(name = "o_p")]
    OP,
    #[value(name = "d_p")]
    DP,
    Rochlin,
    Arf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Involutions,
    Divisibility,
    Degree,
    Product,
    QuantumAnchors,
    Spin,
    #[value(name = "lemma10-3")]
    Lemma10_3,
    All,
}

/// Exit statuses.
const VERIFY_FAILED: u8 = 1;
const INVALID: u8 = 2;
const CAP: u8 = 3;

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_cap() { CAP } else { INVALID })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Invariant { kind, file, p, d, n, bracket } => invariant(kind, &file, p, d, n, bracket).map(|v| {
            println!("{v}");
            0
        }),
        Command::Table { m, lmax, mod_2_torsion, all_graphs } => table(m, lmax, mod_2_torsion, !all_graphs, cli.json),
        Command::Verify { suite, seed } => run_verify(suite, seed, cli.json),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(&e),
    }
}

// ---------------------------------------------------------------- invariant

fn need(v: Option<u32>, flag: &str) -> ftinv::Result<u32> {
    v.ok_or_else(|| Error::Invalid(format!("--{flag} is required")))
}

fn int_json(x: &BigInt) -> Json {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn coeffs_json(a: &CyclotomicInt) -> Json {
    Json::Array(a.coeffs().iter().map(int_json).collect())
}

fn is_seifert(text: &str) -> ftinv::Result<bool> {
    let v: Json = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(v.get("V").is_some())
}

/// The manifold, or the bracket of all its surgery components.
fn manifold_sum(text: &str, use_bracket: bool) -> ftinv::Result<FormalSum<SurgeryPresentation>> {
    let m = SurgeryPresentation::from_json(text)?;
    if use_bracket {
        bracket(&m, &m.surgery_selector())
    } else {
        Ok(FormalSum::single(m))
    }
}

fn invariant(kind: Kind, file: &str, p: Option<u32>, d: Option<u32>, n: u32, use_bracket: bool) -> ftinv::Result<Json> {
    let text = fixtures::read(file)?;
    Ok(match kind {
        Kind::Conway => {
            if is_seifert(&text)? {
                let s = SeifertPresentation::from_json(&text)?;
                let all = SublinkSelector::all(s.surgeries.len());
                json!({ "poly": seifert_conway(&s, &all)?.to_string(), "bracket": conway_alternating(&s)?.to_string() })
            } else {
                json!({ "poly": conway_link(&FramedLink::from_json(&text)?)?.to_string() })
            }
        }
        Kind::C2n => {
            let v = if is_seifert(&text)? {
                c2n(&SeifertPresentation::from_json(&text)?, n)?
            } else {
                let m = SurgeryPresentation::from_json(&text)?;
                manifold_conway(&m.surgered_link()?)?.coeff(2 * n)
            };
            json!({ "n": n, "value": v.to_string() })
        }
        Kind::Lescop => {
            let m = SurgeryPresentation::from_json(&text)?;
            json!({ "value": lescop_b1_1(&m.surgered_link()?)?.to_string() })
        }
        Kind::Tau => {
            let p = need(p, "p")?;
            if use_bracket {
                let x = manifold_sum(&text, true)?;
                let tau = tau_p_sum(&x, p)?;
                json!({ "p": p, "tau": coeffs_json(&tau) })
            } else {
                let m = SurgeryPresentation::from_json(&text)?;
                let r = quantum_result(&m, p, &QuantumConfig::default())?;
                let b = bp(&m, p as u64)?;
                let o = r.tau.v_h();
                let dp = o.map(|o| 3 * o as i64 - half_rank(p) as i64 * b as i64);
                json!({
                    "p": p,
                    "bracket": coeffs_json(&r.bracket),
                    "norm": coeffs_json(&r.norm),
                    "tau": coeffs_json(&r.tau),
                    "o_p": o,
                    "b_p": b,
                    "d_p": dp,
                })
            }
        }
        Kind::TauD => {
            let (p, d) = (need(p, "p")?, need(d, "d")?);
            let (v, modulus) = tau_p_sum(&manifold_sum(&text, use_bracket)?, p)?.pi_d(d);
            json!({ "p": p, "d": d, "value": int_json(&v), "modulus": int_json(&modulus) })
        }
        Kind::OP => {
            let p = need(p, "p")?;
            json!({ "p": p, "o_p": tau_p_sum(&manifold_sum(&text, use_bracket)?, p)?.v_h() })
        }
        Kind::DP => {
            let p = need(p, "p")?;
            let x = manifold_sum(&text, use_bracket)?;
            let o = tau_p_sum(&x, p)?.v_h();
            let b = bp_sum(&x, p as u64)?.unwrap_or(0);
            let dp = o.map(|o| 3 * o as i64 - half_rank(p) as i64 * b as i64);
            json!({ "p": p, "o_p": o, "b_p": b, "d_p": dp })
        }
        Kind::Rochlin => json!({ "mu": rochlin(&SpinPresentation::from_json(&text)?)? }),
        Kind::Arf => json!({ "arf": arf_proper(&FramedLink::from_json(&text)?)? }),
    })
}

// ---------------------------------------------------------------- table

fn table(m: u8, lmax: usize, mod_2_torsion: bool, closed: bool, as_json: bool) -> ftinv::Result<u8> {
    let mut rows = Vec::new();
    for l in 0..=lmax {
        let s = quotient_structure(m, l, closed)?;
        let torsion = if mod_2_torsion { s.odd_torsion() } else { s.torsion.clone() };
        rows.push((l, s.rank, torsion));
    }
    if as_json {
        let v: Vec<Json> = rows
            .iter()
            .map(|(l, r, t)| json!({ "l": l, "rank": r, "torsion": t.iter().map(int_json).collect::<Vec<_>>() }))
            .collect();
        println!("{}", Json::Array(v));
    } else {
        println!("l,rank,torsion");
        for (l, r, t) in rows {
            let t: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            println!("{l},{r},{}", t.join(" "));
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------- verify

fn run_verify(suite: SuiteArg, seed: u64, as_json: bool) -> ftinv::Result<u8> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Involutions => vec![Suite::Involutions],
        SuiteArg::Divisibility => vec![Suite::Divisibility],
        SuiteArg::Degree => vec![Suite::Degree],
        SuiteArg::Product => vec![Suite::Product],
        SuiteArg::QuantumAnchors => vec![Suite::QuantumAnchors],
        SuiteArg::Spin => vec![Suite::Spin],
        SuiteArg::Lemma10_3 => vec![Suite::Lemma10_3],
    };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(verify::run(s, seed)?);
    }
    let failed = verify::failures(&checks);
    if as_json {
        let report = json!({ "seed": seed, "checks": checks, "failed": failed, "pass": failed == 0 });
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        for c in &checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                println!("{mark} {}: {}", c.suite, c.name);
            } else {
                println!("{mark} {}: {} ({})", c.suite, c.name, c.detail);
            }
        }
        println!("{} checks, {failed} failed, seed {seed}", checks.len());
    }
    Ok(if failed == 0 { 0 } else { VERIFY_FAILED })
}
