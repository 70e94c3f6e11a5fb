//! Named links and presentations shared by the tests, the command line tool
//! and the benchmarks, plus access to the on-disk fixture directory.

use std::path::{Path, PathBuf};

use crate::conway::SeifertPresentation;
use crate::error::{Error, Result};
use crate::exact_algebra::IntMatrix;
use crate::link_diagrams::{plumbing_link, special_link, FramedLink, MorseLink, Replacement, Role};
use crate::link_diagrams::SublinkSelector;
use crate::manifolds::SurgeryPresentation;
use crate::spin::SpinPresentation;

/// Fixture directory: `FTINV_FIXTURES` if set, else `fixtures/` in the repository.
pub fn fixture_root() -> PathBuf {
    match std::env::var_os("FTINV_FIXTURES") {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}

/// Resolves `name` against the fixture root unless it is an existing path.
pub fn resolve(name: &str) -> PathBuf {
    let direct = PathBuf::from(name);
    if direct.exists() {
        return direct;
    }
    let file = if name.ends_with(".json") { name.to_string() } else { format!("{name}.json") };
    let stripped = file.strip_prefix("fixtures/").unwrap_or(&file);
    fixture_root().join(stripped)
}

pub fn read(name: &str) -> Result<String> {
    let path = resolve(name);
    std::fs::read_to_string(&path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

pub fn load_link(name: &str) -> Result<FramedLink> {
    FramedLink::from_json(&read(name)?)
}

pub fn load_presentation(name: &str) -> Result<SurgeryPresentation> {
    SurgeryPresentation::from_json(&read(name)?)
}

pub fn load_seifert(name: &str) -> Result<SeifertPresentation> {
    SeifertPresentation::from_json(&read(name)?)
}

pub fn load_spin(name: &str) -> Result<SpinPresentation> {
    SpinPresentation::from_json(&read(name)?)
}

pub fn closure(n: usize, word: &[i32]) -> FramedLink {
    MorseLink::braid_closure(n, word).and_then(|m| m.to_link()).expect("valid braid word")
}

pub fn unknot(framing: i64) -> FramedLink {
    FramedLink::unknot(framing, Role::Base)
}

pub fn trefoil(right: bool, framing: i64) -> FramedLink {
    let s = if right { 1 } else { -1 };
    closure(2, &[s, s, s]).with_framings(&[framing])
}

pub fn figure_eight(framing: i64) -> FramedLink {
    closure(3, &[1, -2, 1, -2]).with_framings(&[framing])
}

pub fn hopf(f1: i64, f2: i64) -> FramedLink {
    closure(2, &[1, 1]).with_framings(&[f1, f2])
}

pub fn borromean(framings: [i64; 3]) -> FramedLink {
    closure(3, &[1, -2, 1, -2, 1, -2]).with_framings(&framings)
}

/// Connected sum of `j` right-handed trefoils with the given framing.
pub fn trefoil_sum(j: usize, framing: i64) -> FramedLink {
    if j == 0 {
        return unknot(framing);
    }
    let word: Vec<i32> = (1..=j as i32).flat_map(|g| [g, g, g]).collect();
    closure(j + 1, &word).with_framings(&[framing])
}

/// Lens space L(q, 1) as q-surgery on the unknot.
pub fn lens(q: i64) -> FramedLink {
    unknot(q)
}

/// T³: 0-surgery on the Borromean rings.
pub fn torus3() -> FramedLink {
    borromean([0, 0, 0])
}

/// The 0-framed unknot `K` (last component) with `n` Borromean pairs of +1
/// surgery components around it.
pub fn lambda_2n(n: usize) -> FramedLink {
    let reps: Vec<Replacement> = (0..n).map(|j| Replacement::new(2 * j + 1, 2 * j + 2, 2 * n + 1, 1)).collect();
    special_link(1, 2 * n, &reps).expect("valid replacements")
}

/// Four +1 components in a circular chain around the 0-framed `K`: consecutive
/// components form a Borromean pair with `K`.
pub fn lambda_hat_4() -> FramedLink {
    let reps = [
        Replacement::new(1, 2, 5, 1),
        Replacement::new(2, 3, 5, 1),
        Replacement::new(3, 4, 5, 1),
        // the pair (4, 1) is listed out of circular order, so its insertion is mirrored
        Replacement::new(1, 4, 5, -1),
    ];
    special_link(1, 4, &reps).expect("valid replacements")
}

/// Handle-slide pair. The first link is a split +1 unknot next to the
/// Borromean rings framed (0, 1, 1); the second is the Borromean rings framed
/// (0, 1, 1) with one more +1 circle around the middle of the last
/// component, so that (A, B, C) is a second Borromean triple. All
/// components are surgered.
pub fn handle_slide_pair() -> (FramedLink, FramedLink) {
    let l1 = unknot(1).disjoint_union(&borromean([0, 1, 1]));
    // components: 1 = A, 2 = B, 3 = C, 4 = K; C sees B before A, hence the mirrored insertion
    let reps = [Replacement::new(1, 2, 4, 1), Replacement::new(1, 2, 3, -1)];
    let l2 = special_link(1, 3, &reps).expect("valid replacements");
    let l2 = l2.with_framings(&[1, 1, 1, 0]).with_roles(&[Role::Base; 4]);
    (l1, l2)
}

/// The split +1 unknot of the first handle-slide link slid over the 0-framed
/// component: the 0-framed component of the Borromean rings plus a +1-framed
/// parallel copy.
pub fn handle_slide_doubled() -> FramedLink {
    let l = borromean([0, 1, 1]).cable(&[2, 1, 1]).expect("cable");
    l.with_framings(&[0, 1, 1, 1])
}

/// The E8 plumbing: eight +2-framed unknots clasped along the E8 tree.
pub fn e8_plumbing() -> FramedLink {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    plumbing_link(&[2; 8], &edges).expect("valid plumbing")
}

/// +1-framed Borromean rings with every component a surgery candidate; its
/// full bracket is the Poincaré sphere minus S³.
pub fn borromean_surgery() -> FramedLink {
    borromean([1, 1, 1]).with_roles(&[Role::Surgery; 3])
}

/// Genus-one Seifert form with two +1 surgery curves dual to the symplectic basis.
pub fn borromean_seifert() -> SeifertPresentation {
    lambda_2n_seifert(1)
}

/// Block sum of `n` copies of the genus-one presentation.
pub fn lambda_2n_seifert(n: usize) -> SeifertPresentation {
    let g = 2 * n;
    let mut v = IntMatrix::zeros(g, g);
    for j in 0..n {
        v.set(2 * j, 2 * j + 1, 1.into());
    }
    let surgeries = (0..g)
        .map(|k| {
            let mut l = vec![0i64; g];
            l[k] = 1;
            (1i8, l)
        })
        .collect();
    SeifertPresentation::new(v, surgeries).expect("valid Seifert data")
}

/// Four genus-one blocks with the surgery curves banded around the circle:
/// curve `i` is the second curve of block `i` banded to the first curve of
/// block `i + 1`, with the band orientation `sign`.
pub fn lambda_hat_4_seifert(sign: i64) -> SeifertPresentation {
    let base = lambda_2n_seifert(4);
    let surgeries = (0..4)
        .map(|i| {
            let mut l = vec![0i64; 8];
            l[2 * i + 1] = 1;
            l[(2 * i + 2) % 8] = sign;
            (1i8, l)
        })
        .collect();
    SeifertPresentation::new(base.v, surgeries).expect("valid Seifert data")
}

/// Every named link fixture, keyed by file stem.
pub fn named_links() -> Vec<(&'static str, FramedLink)> {
    let (l1, l2) = handle_slide_pair();
    vec![
        ("unknot", unknot(0)),
        ("s1xs2", unknot(0)),
        ("s3_plus", unknot(1)),
        ("lens_2", lens(2)),
        ("lens_3", lens(3)),
        ("trefoil_R", trefoil(true, 0)),
        ("trefoil_L", trefoil(false, 0)),
        ("figure_eight", figure_eight(0)),
        ("hopf", hopf(0, 0)),
        ("borromean", borromean([0, 0, 0])),
        ("torus3", torus3()),
        ("poincare", trefoil(true, 1)),
        ("borromean_surgery", borromean_surgery()),
        ("lambda_2", lambda_2n(1)),
        ("lambda_4", lambda_2n(2)),
        ("lambda_6", lambda_2n(3)),
        ("lambda_hat_4", lambda_hat_4()),
        ("handle_slide_1", l1),
        ("handle_slide_2", l2),
        ("e8", e8_plumbing()),
    ]
}

pub fn named_seifert() -> Vec<(&'static str, SeifertPresentation)> {
    vec![
        ("seifert_borromean", borromean_seifert()),
        ("seifert_lambda_4", lambda_2n_seifert(2)),
        ("seifert_lambda_6", lambda_2n_seifert(3)),
        ("seifert_lambda_hat_4", lambda_hat_4_seifert(-1)),
    ]
}

fn spin(l: FramedLink, char: &[usize]) -> SpinPresentation {
    let n = l.num_components();
    SpinPresentation::new(SurgeryPresentation::new(l), SublinkSelector::from_indices(n, char)).expect("characteristic")
}

pub fn named_spin() -> Vec<(&'static str, SpinPresentation)> {
    vec![
        ("e8_spin", spin(e8_plumbing(), &[])),
        ("poincare_spin", spin(trefoil(true, 1), &[0])),
        ("s1xs2_spin", spin(unknot(0), &[])),
        ("s1xs2_spin_odd", spin(unknot(0), &[0])),
        ("borromean_spin", spin(borromean_surgery(), &[])),
        ("lambda_4_spin", spin(lambda_2n(2), &[])),
        ("lambda_4_spin_k", spin(lambda_2n(2), &[4])),
        ("lambda_hat_4_spin", spin(lambda_hat_4(), &[])),
    ]
}

/// Every fixture file name with its JSON content.
pub fn all_fixture_json() -> Vec<(String, serde_json::Value)> {
    let parse = |s: String| serde_json::from_str(&s).expect("valid JSON");
    let mut out: Vec<(String, serde_json::Value)> =
        named_links().into_iter().map(|(n, l)| (format!("{n}.json"), l.to_json_value())).collect();
    out.extend(named_seifert().into_iter().map(|(n, s)| (format!("{n}.json"), parse(s.to_json()))));
    out.extend(named_spin().into_iter().map(|(n, s)| (format!("{n}.json"), parse(s.to_json()))));
    out
}
