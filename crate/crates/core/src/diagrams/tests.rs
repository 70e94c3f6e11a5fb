use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use super::*;
use crate::exact_algebra::rank_mod_p;

fn sum(g: &AdmissibleGraph) -> FormalSum<AdmissibleGraph> {
    FormalSum::single(g.clone())
}

fn trivalent_with_legs(colors: [u8; 3]) -> AdmissibleGraph {
    let es: Vec<(usize, usize, u8)> = colors.iter().enumerate().map(|(k, &c)| (0, k + 1, c)).collect();
    AdmissibleGraph::from_edges(4, &es)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Orientation-preserving isomorphism by trying every matching of trivalent
/// vertices and every rotation offset.
fn brute_isomorphic(g: &AdmissibleGraph, h: &AdmissibleGraph) -> bool {
    let iso = |x: &AdmissibleGraph| {
        let mut v: Vec<u8> = (0..x.edges.len()).filter(|&e| x.is_isolated(e)).map(|e| x.edges[e].color).collect();
        v.sort();
        v
    };
    if iso(g) != iso(h) || g.edges.len() != h.edges.len() || g.num_vertices() != h.num_vertices() {
        return false;
    }
    let (tg, th) = (g.trivalent_vertices(), h.trivalent_vertices());
    if tg.len() != th.len() {
        return false;
    }
    let t = tg.len();
    for p in permutations(t) {
        for mut s in 0..3usize.pow(t as u32) {
            let mut map = std::collections::HashMap::new();
            for k in 0..t {
                let shift = s % 3;
                s /= 3;
                let (rg, rh) = (&g.rotation[tg[k]], &h.rotation[th[p[k]]]);
                for i in 0..3 {
                    map.insert(rg[i], rh[(i + shift) % 3]);
                }
            }
            let ok = map.iter().all(|(&d, &e)| {
                if g.color_of(d) != h.color_of(e) {
                    return false;
                }
                match map.get(&(d ^ 1)) {
                    Some(&f) => f == e ^ 1,
                    None => h.valence(h.vertex_of(e ^ 1)) == 1,
                }
            });
            if ok {
                return true;
            }
        }
    }
    false
}

#[test]
fn closed_graphs_of_low_degree() {
    let s = enumerate_graphs(1, 0, true).unwrap();
    assert_eq!(s, vec![isolated_edge(1)]);
    assert!(enumerate_graphs(1, 1, true).unwrap().is_empty());
    let two = enumerate_graphs(1, 2, true).unwrap();
    assert!(two.contains(&w_graph(1)));
    // W with its two inequivalent vertex orientations
    assert_eq!(two.len(), 2);
    for l in 0..=6 {
        for g in enumerate_graphs(1, l, true).unwrap() {
            g.validate().unwrap();
            assert!(g.is_closed());
            assert_eq!(g.degree(), l);
            let (t, c) = (g.num_trivalent(), g.colored_legs());
            assert_eq!(3 * t - c, 2 * l, "{g:?}");
            assert!(3 * t >= 2 * l && t <= l);
        }
    }
}

#[test]
fn enumeration_counts() {
    let closed: Vec<usize> = (0..=6).map(|l| enumerate_graphs(1, l, true).unwrap().len()).collect();
    assert_eq!(closed, vec![1, 0, 2, 4, 9, 26, 81]);
    let all: Vec<usize> = (0..=4).map(|l| enumerate_graphs(1, l, false).unwrap().len()).collect();
    assert_eq!(all, vec![1, 1, 4, 14, 42]);
    let two: Vec<usize> = (0..=3).map(|l| enumerate_graphs(2, l, false).unwrap().len()).collect();
    assert_eq!(two, vec![1, 6, 45, 315]);
    assert!(matches!(enumerate_graphs(1, 7, true), Err(Error::Cap(_))));
}

#[test]
fn enumerated_graphs_are_pairwise_distinct() {
    let mut lists = vec![];
    for l in 0..=4 {
        lists.push(enumerate_graphs(1, l, true).unwrap());
    }
    for l in 0..=3 {
        lists.push(enumerate_graphs(1, l, false).unwrap());
    }
    lists.push(enumerate_graphs(2, 2, true).unwrap());
    for gs in lists {
        for (i, g) in gs.iter().enumerate() {
            g.validate().unwrap();
            assert!(brute_isomorphic(g, g));
            for h in &gs[i + 1..] {
                assert!(!brute_isomorphic(g, h), "{g:?} ~ {h:?}");
            }
        }
    }
}

#[test]
fn brute_force_agrees_with_codes_on_flips() {
    for g in enumerate_graphs(1, 4, true).unwrap() {
        for v in g.trivalent_vertices() {
            let f = g.flip(v);
            assert_eq!(brute_isomorphic(&g, &f), g.canonical_code() == f.canonical_code());
        }
    }
}

#[test]
fn admissibility_rules() {
    // loop
    assert!(AdmissibleGraph::new(2, &[(0, 0, 0), (0, 1, 1)]).is_err());
    // trivalent vertex without white edge
    assert!(AdmissibleGraph::new(4, &[(0, 1, 1), (0, 2, 2), (0, 3, 3)]).is_err());
    // two legs of one color at a vertex
    assert!(trivalent_with_legs([0, 1, 1]).validate().is_err());
    // colored edge between trivalent vertices
    assert!(AdmissibleGraph::new(2, &[(0, 1, 1), (0, 1, 0), (0, 1, 0)]).is_err());
    // isolated colored edge sharing its color
    assert!(w_graph(1).disjoint_union(&isolated_edge(1)).validate().is_err());
    // missing color
    assert!(isolated_edge(2).validate().is_err());
    for g in [w_graph(1), h_graph(1, 2), legged_cycle(4, 1), white_theta().disjoint_union(&isolated_edge(1))] {
        g.validate().unwrap();
    }
}

fn random_relabel(g: &AdmissibleGraph, seed: u64) -> AdmissibleGraph {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut vp: Vec<usize> = (0..g.num_vertices()).collect();
    vp.shuffle(&mut rng);
    let mut ep: Vec<usize> = (0..g.edges.len()).collect();
    ep.shuffle(&mut rng);
    let sw: Vec<bool> = (0..g.edges.len()).map(|_| rng.gen()).collect();
    let sh: Vec<usize> = (0..g.num_vertices()).map(|_| rng.gen_range(0..3)).collect();
    g.relabel(&vp, &ep, &sw, &sh)
}

fn sample_graphs() -> Vec<AdmissibleGraph> {
    let mut v = Vec::new();
    for l in 0..=3 {
        v.extend(enumerate_graphs(1, l, false).unwrap());
        v.extend(enumerate_graphs(2, l, false).unwrap());
    }
    v.extend(enumerate_graphs(1, 5, true).unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonical_form_ignores_labels(k in 0usize..10_000, seed in any::<u64>()) {
        thread_local!(static GS: Vec<AdmissibleGraph> = sample_graphs());
        GS.with(|gs| {
            let g = &gs[k % gs.len()];
            let h = random_relabel(g, seed);
            prop_assert!(h.validate().is_ok());
            prop_assert_eq!(h.canonical_code(), g.canonical_code());
            let (a, b) = (h.canonical(), g.canonical());
            prop_assert_eq!(&a.edges, &b.edges);
            prop_assert_eq!(&a.rotation, &b.rotation);
            Ok(())
        })?;
    }
}

#[test]
fn antisymmetry_twice_is_the_same_vector() {
    for l in 0..=3 {
        for g in enumerate_graphs(2, l, false).unwrap() {
            for v in g.trivalent_vertices() {
                let a = antisymmetry(&g, v);
                let b = antisymmetry(&g.flip(v), v);
                assert_eq!(a, b);
                assert_eq!(g.flip(v).flip(v), g);
            }
        }
    }
}

#[test]
fn deframe_without_trivalent_vertices_is_identity() {
    for g in [isolated_edge(1), isolated_edge(1).disjoint_union(&AdmissibleGraph::from_edges(2, &[(0, 1, 0)]))] {
        assert_eq!(deframe(&g), sum(&g));
    }
}

#[test]
fn deframe_of_a_y() {
    let y = trivalent_with_legs([0, 0, 0]).disjoint_union(&isolated_edge(1));
    let split = AdmissibleGraph::from_edges(8, &[(0, 1, 0), (2, 3, 0), (4, 5, 0), (6, 7, 1)]);
    assert_eq!(deframe(&y), sum(&split).minus(&sum(&y)));
    assert_eq!(deframe_unsigned(&y), sum(&y).minus(&sum(&split)));
    // the unsigned sum is not an involution
    let lit = deframe_unsigned(&y).flat_map(deframe_unsigned);
    assert_eq!(lit, sum(&y).minus(&sum(&split).scale(&2.into())));
    // a colored leg becomes isolated, and is dropped when its color has other edges
    let g = trivalent_with_legs([0, 0, 1]).disjoint_union(&w_graph(1));
    let d = deframe(&g);
    for (_, h) in d.iter() {
        h.validate().unwrap();
    }
    // the two vertices of W are interchangeable, and a Y with one colored leg
    // has a single orientation, so the eight subsets give five graphs
    assert_eq!(d.len(), 5);
    let (_, bare) = d.iter().find(|(_, h)| h.num_trivalent() == 0).unwrap();
    assert_eq!(bare.edges.iter().filter(|e| e.color == 1).count(), 1);
    for (_, h) in d.iter().filter(|(_, h)| h.num_trivalent() > 0) {
        assert!((0..h.edges.len()).all(|e| h.edges[e].color == WHITE || !h.is_isolated(e)));
    }
}

#[test]
fn deframe_is_an_involution() {
    for m in 1..=2u8 {
        for l in 0..=4 {
            for g in enumerate_graphs(m, l, false).unwrap() {
                for (_, h) in deframe(&g).iter() {
                    assert!(h.validate().is_ok() && h.degree() == l);
                }
            }
            assert!(deframe_involution_failures(m, l).unwrap().is_empty(), "m={m} l={l}");
        }
    }
    // direct composition on the smaller sizes
    for l in 0..=3 {
        for g in enumerate_graphs(2, l, false).unwrap() {
            assert_eq!(deframe_sum(&deframe(&g)), sum(&g), "{g:?}");
        }
    }
}

#[test]
fn relation_sets() {
    for l in 0..=4 {
        let rs = build_relations(1, l, true).unwrap();
        for k in [RelationKind::I, RelationKind::Y, RelationKind::S1] {
            assert_eq!(rs.count(k), 0);
        }
        for (_, r) in &rs.relations {
            assert!(r.iter().all(|(_, g)| g.degree() == l && g.is_closed()));
        }
    }
    for l in 1..=3 {
        let rs = build_relations(2, l, false).unwrap();
        let kinds: std::collections::BTreeSet<RelationKind> =
            rs.basis.iter().flat_map(|g| relations_of(g, false)).map(|(k, _)| k).collect();
        assert_eq!(kinds.contains(&RelationKind::IHX), l == 3);
        assert!(kinds.len() >= 5);
        assert!(rs.count(RelationKind::Y) > 0 && rs.count(RelationKind::I) > 0);
        for (_, r) in &rs.relations {
            assert!(r.iter().all(|(_, g)| g.degree() == l));
        }
    }
}

#[test]
fn y_relation_cases() {
    let unoriented = |g: &AdmissibleGraph, h: &AdmissibleGraph| {
        let vs = g.trivalent_vertices();
        (0..1u32 << vs.len()).any(|mask| {
            let f: Vec<usize> = vs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect();
            g.flip_all(&f) == *h
        })
    };
    let cases = [
        (trivalent_with_legs([0, 0, 0]).disjoint_union(&isolated_edge(1)), white_theta().disjoint_union(&isolated_edge(1))),
        (trivalent_with_legs([0, 0, 1]), w_graph(1)),
        (trivalent_with_legs([0, 1, 2]), h_graph(1, 2)),
    ];
    for (y, theta) in cases {
        let r = y_relation(&y, 0).unwrap();
        assert_eq!(r.coefficient(&y), BigInt::from(2));
        let (c, doubled) = r.iter().find(|(_, g)| **g != y).map(|(c, g)| (c.clone(), g.clone())).unwrap();
        assert_eq!(c, BigInt::from(-1));
        assert!(unoriented(&doubled, &theta));
    }
    // the doubled vertices are oppositely oriented relative to the legs
    let r = y_relation(&trivalent_with_legs([0, 1, 2]), 0).unwrap();
    assert!(r.iter().any(|(_, g)| *g == h_graph(1, 2)));
}

#[test]
fn ihx_needs_distinct_differently_colored_edges() {
    // every edge of the theta sees repeated edges
    let th = white_theta().disjoint_union(&isolated_edge(1));
    assert!((0..3).all(|e| ihx(&th, e).is_none()));
    // the legged square: every internal edge sees two legs of one color
    let c = legged_cycle(4, 1);
    assert!((0..4).all(|e| ihx(&c, e).is_none()));
    let k4 = AdmissibleGraph::from_edges(4, &[(0, 1, 0), (0, 2, 0), (0, 3, 0), (1, 2, 0), (1, 3, 0), (2, 3, 0)]);
    let k4 = k4.disjoint_union(&isolated_edge(1));
    assert!(ihx(&k4, 0).is_some());
}

/// Free rank and number of even invariant factors from ranks over prime fields.
fn rank_oracle(m: u8, l: usize, closed: bool) -> (usize, usize) {
    let rs = build_relations(m, l, closed).unwrap();
    let n = rs.basis.len();
    if rs.relations.is_empty() {
        return (n, 0);
    }
    let mat = rs.matrix();
    let big = rank_mod_p(&mat, 1_000_003).unwrap();
    let two = rank_mod_p(&mat, 2).unwrap();
    (n - big, big - two)
}

#[test]
fn closed_quotients_with_one_color() {
    let got: Vec<QuotientStructure> = (0..=5).map(|l| quotient_structure(1, l, true).unwrap()).collect();
    let ranks: Vec<usize> = got.iter().map(|q| q.rank).collect();
    // the connected two-legged theta at degree 5 survives alongside W*Θ
    assert_eq!(ranks, vec![1, 0, 1, 1, 2, 2]);
    let two = BigInt::from(2);
    assert_eq!(got[3].torsion, vec![two.clone()]);
    assert_eq!(got[5].torsion, vec![two.clone(), two]);
    for (l, q) in got.iter().enumerate() {
        assert!(q.odd_torsion().is_empty());
        let (free, even) = rank_oracle(1, l, true);
        assert_eq!((free, even), (q.rank, q.torsion.len()), "degree {l}");
    }
}

#[test]
fn quotients_with_two_colors() {
    let got: Vec<String> = (0..=3).map(|l| quotient_structure(2, l, true).unwrap().describe()).collect();
    assert_eq!(got[0], "Z");
    assert_eq!(got[1], "Z");
    for l in 0..=3 {
        let q = quotient_structure(2, l, true).unwrap();
        assert_eq!(rank_oracle(2, l, true), (q.rank, q.torsion.len()));
        let d = quotient_structure(2, l, false).unwrap();
        assert_eq!(rank_oracle(2, l, false), (d.rank, d.torsion.len()));
        // closed graphs have finite index
        assert_eq!(d.rank, q.rank);
    }
}

#[test]
fn degree_four_generators() {
    let q = Quotient::new(1, 4, true).unwrap();
    let c = sum(&legged_cycle(4, 1));
    let ww = sum(&w_graph(1).disjoint_union(&w_graph(1)));
    assert_eq!(q.structure().rank, 2);
    assert!(q.independent(&[c.clone(), ww.clone()]).unwrap());
    let rows: Vec<Vec<BigInt>> = [c, ww].iter().map(|x| q.free_part(x).unwrap()).collect();
    let det = &rows[0][0] * &rows[1][1] - &rows[0][1] * &rows[1][0];
    assert_eq!(det.magnitude(), &1u32.into());
}

#[test]
fn theta_unions_are_independent() {
    let theta = white_theta().disjoint_union(&isolated_edge(1));
    let q3 = Quotient::new(1, 3, true).unwrap();
    assert_eq!(q3.order_of(&sum(&theta)).unwrap(), None);
    let q5 = Quotient::new(1, 5, true).unwrap();
    assert_eq!(q5.order_of(&sum(&w_graph(1).disjoint_union(&white_theta()))).unwrap(), None);
    assert!(theta_unions(1, 1).is_empty());
    assert_eq!(theta_unions(1, 3), vec![theta.canonical()]);
    for l in 1..=5 {
        assert!(theta_union_independence(1, l).unwrap());
    }
    for l in 1..=4 {
        let t = theta_unions(2, l);
        assert!(t.iter().all(|g| g.is_even() && g.is_closed() && g.validate().is_ok()));
        assert!(theta_union_independence(2, l).unwrap());
    }
}

#[test]
fn odd_graphs_have_order_two() {
    let two = BigInt::from(2);
    for (m, lmax) in [(1u8, 5usize), (2, 4)] {
        for l in 0..=lmax {
            let q = Quotient::new(m, l, true).unwrap();
            for g in &q.relations.basis {
                if g.num_trivalent() % 2 == 1 || !g.is_even() {
                    let o = q.order_of(&sum(g)).unwrap().unwrap();
                    assert!(two.is_multiple_of(&o), "{g:?}");
                }
            }
        }
    }
}

#[test]
fn closed_graphs_have_finite_index() {
    for (m, lmax) in [(1u8, 3usize), (2, 3)] {
        for l in 0..=lmax {
            let e = closed_index_exponent(m, l).unwrap().unwrap();
            assert!((BigInt::from(1) << l).is_multiple_of(&e), "m={m} l={l} exponent {e}");
        }
    }
}

#[test]
fn parity_blocks() {
    for l in 0..=5 {
        let s = parity_split(1, l).unwrap();
        assert!(s.block_diagonal);
        assert!(s.odd.rank == 0 && s.odd.torsion.iter().all(|d| *d == BigInt::from(2)));
        assert_eq!(s.whole.rank, s.even.rank);
        assert_eq!(s.whole.torsion.len(), s.even.torsion.len() + s.odd.torsion.len());
    }
}
