use super::state_sum::evaluate_at;
use super::*;
use crate::link_diagrams::{MorseLink, Role, SublinkSelector};

fn closure(n: usize, w: &[i32]) -> FramedLink {
    MorseLink::braid_closure(n, w).unwrap().to_link().unwrap()
}

fn cabled() -> QuantumConfig {
    QuantumConfig { engine: Engine::Cabled, width_cap: 16 }
}

#[test]
fn network_values() {
    for p in [5, 7, 11] {
        let t = QTables::new(p);
        for a in (0..=p - 3).step_by(2) {
            assert_eq!(&t.theta(a, a, 0), t.delta(a));
        }
        let cols: Vec<u32> = (0..=p - 3).collect();
        for &a in &cols {
            for &c in &cols {
                for &e in &cols {
                    if t.admissible(a, c, e) {
                        assert_eq!(t.tet(a, a, e, c, c, 0), t.theta(a, c, e), "{a} {c} {e}");
                    }
                }
            }
        }
        for &a in &cols {
            for &b in &cols {
                for &e in &cols {
                    for &f in &[0u32, 2] {
                        for &c in &cols {
                            for &d in &cols {
                                let ok = t.admissible(a, d, e) && t.admissible(b, c, e) && t.admissible(a, b, f) && t.admissible(c, d, f);
                                if ok && p == 5 {
                                    assert_eq!(t.tet(a, b, e, c, d, f), t.tet(a, d, f, c, b, e));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn state_sum_matches_sweep() {
    for p in [5u32, 7] {
        let t = QTables::new(p);
        for (n, w) in [(2, vec![1, 1, 1]), (2, vec![1, 1]), (3, vec![1, -2, 1, -2]), (3, vec![1, -2, 1, -2, 1, -2]), (2, vec![-1, -1, -1])] {
            let m = MorseLink::braid_closure(n, &w).unwrap();
            let l = m.to_link().unwrap();
            let poly = kauffman_bracket_state_sum(&l, 14).unwrap();
            let direct = evaluate_at(&poly, p, t.a);
            assert_eq!(tl::bracket(&t, &m, 16).unwrap(), direct, "{w:?}");
            let fused = fusion::evaluate(&t, &m, &vec![1; l.num_components()], 16).unwrap();
            assert_eq!(fused, direct, "{w:?} p={p}");
        }
    }
}

#[test]
fn engines_agree_on_colored_links() {
    for p in [5u32, 7] {
        for (n, w) in [(2, vec![1, 1, 1]), (2, vec![1, 1]), (3, vec![1, -2, 1, -2]), (2, vec![-1, -1, -1, -1])] {
            let l = closure(n, &w).with_framings(&vec![1; closure(n, &w).num_components()]);
            let nc = l.num_components();
            let max = if p == 5 { 3 } else { 4 };
            let mut ks: Vec<Vec<u32>> = vec![vec![]];
            for _ in 0..nc {
                ks = ks.into_iter().flat_map(|k| (1..=max).map(move |c| [k.clone(), vec![c]].concat())).collect();
            }
            for k in ks {
                let a = colored_jones(&l, &k, p).unwrap();
                match colored_jones_with(&l, &k, p, &cabled()) {
                    Ok(b) => assert_eq!(a, b, "{w:?} {k:?} p={p}"),
                    Err(e) => assert!(e.is_cap()),
                }
            }
        }
    }
}

#[test]
fn unknot_colors_give_quantum_integers() {
    let t = QTables::new(7);
    let u = FramedLink::unknot(0, Role::Base);
    for k in 1..=6u32 {
        let v = colored_jones(&u, &[k], 7).unwrap();
        let expect = if k % 2 == 1 { t.qint(k as usize).clone() } else { -t.qint(k as usize) };
        assert_eq!(v, expect);
    }
}

fn pres(l: FramedLink) -> SurgeryPresentation {
    SurgeryPresentation::new(l)
}

#[test]
fn normalization_anchors() {
    for p in [5u32, 7, 11] {
        assert!(tau_p(&SurgeryPresentation::sphere(), p).unwrap().is_one());
        let s1s2 = pres(FramedLink::unknot(0, Role::Base));
        assert_eq!(tau_p(&s1s2, p).unwrap(), CyclotomicInt::h_pow(p, half_rank(p)));
    }
    let t = pres(closure(2, &[1, 1, 1]).with_framings(&[-1]));
    assert!(tau_p(&t, 3).unwrap().is_one());
}

#[test]
fn kirby_moves() {
    for p in [5u32, 7] {
        // blowing down the +1 component of a (2, 1)-framed Hopf link leaves the +1 unknot
        let h = pres(closure(2, &[1, 1]).with_framings(&[2, 1]));
        assert!(tau_p(&h, p).unwrap().is_one(), "p={p}");
        let h2 = pres(closure(2, &[1, 1]).with_framings(&[3, -1]));
        let u4 = pres(FramedLink::unknot(4, Role::Base));
        assert_eq!(tau_p(&h2, p).unwrap(), tau_p(&u4, p).unwrap());
        // stabilization by split ±1 unknots
        let t = closure(2, &[1, 1, 1]).with_framings(&[0]);
        for s in [1, -1] {
            let st = t.disjoint_union(&FramedLink::unknot(s, Role::Base));
            assert_eq!(tau_p(&pres(st), p).unwrap(), tau_p(&pres(t.clone()), p).unwrap());
        }
    }
}

#[test]
fn multiplicative_under_connected_sum() {
    let a = pres(closure(2, &[1, 1, 1]).with_framings(&[0]));
    let b = pres(FramedLink::unknot(3, Role::Base));
    let s = crate::manifolds::connected_sum(&a, &b);
    for p in [5u32, 7] {
        assert_eq!(tau_p(&s, p).unwrap(), &tau_p(&a, p).unwrap() * &tau_p(&b, p).unwrap());
    }
}

#[test]
fn trefoil_chirality() {
    let r = pres(closure(2, &[1, 1, 1]).with_framings(&[0]));
    let l = pres(closure(2, &[-1, -1, -1]).with_framings(&[0]));
    let tr = tau_p(&r, 5).unwrap();
    let tl = tau_p(&l, 5).unwrap();
    assert_ne!(tr, tl);
    let x = FormalSum::single(r);
    let y = FormalSum::single(l);
    let d = (0..=4).find(|&d| tau_p_d(&x, 5, d).unwrap() != tau_p_d(&y, 5, d).unwrap());
    assert!(d.is_some());
}

fn borromean(f: i64) -> FramedLink {
    closure(3, &[1, -2, 1, -2, 1, -2]).with_framings(&[f, f, f])
}

#[test]
fn torus_and_poincare_depths() {
    let t3 = FormalSum::single(pres(borromean(0)));
    let l = pres(borromean(1).with_roles(&[Role::Surgery; 3]));
    let delta = crate::manifolds::bracket(&l, &SublinkSelector::all(3)).unwrap();
    for p in [5u32, 7] {
        let n = half_rank(p);
        assert_eq!(p_order(&t3, p).unwrap(), Some(n));
        assert_eq!(p_depth(&t3, p).unwrap(), Some(0));
        assert_eq!(p_order(&delta, p).unwrap(), Some(1), "p={p}");
        assert_eq!(p_depth(&delta, p).unwrap(), Some(3));
    }
}


#[test]
fn handle_slides() {
    let (l1, l2) = crate::fixtures::handle_slide_pair();
    let doubled = crate::fixtures::handle_slide_doubled();
    for p in [5u32, 7] {
        let t1 = tau_p(&pres(l1.clone()), p).unwrap();
        assert_eq!(tau_p(&pres(l2.clone()), p).unwrap(), t1, "p={p}");
        assert_eq!(tau_p(&pres(doubled.clone()), p).unwrap(), t1, "p={p}");
    }
    // 0-surgery on the trefoil
    assert_eq!(tau_p(&pres(l1), 5).unwrap(), CyclotomicInt::from_h_coeffs(5, &[0, -1, -1]));
}
