use super::*;
use crate::fixtures::{borromean, borromean_surgery, e8_plumbing, figure_eight, lambda_2n, lambda_hat_4, trefoil, unknot};
use crate::manifolds::h1_invariants;

fn pres(l: FramedLink) -> SurgeryPresentation {
    SurgeryPresentation::new(l)
}

fn spin(l: FramedLink, char: &[usize]) -> SpinPresentation {
    let n = l.num_components();
    SpinPresentation::new(pres(l), SublinkSelector::from_indices(n, char)).unwrap()
}

/// Oracle: exhaustive check of the characteristic condition on the raw matrix.
fn count_by_hand(m: &IntMatrix) -> usize {
    let n = m.rows();
    (0u32..1 << n)
        .filter(|mask| {
            (0..n).all(|i| {
                let s: i64 = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| m.get(i, j).to_i64().unwrap()).sum();
                (m.get(i, i).to_i64().unwrap() - s) % 2 == 0
            })
        })
        .count()
}

#[test]
fn characteristic_sublinks_of_small_links() {
    let s1s2 = characteristic_sublinks(&pres(unknot(0))).unwrap();
    assert_eq!(s1s2, vec![SublinkSelector(vec![false]), SublinkSelector(vec![true])]);
    assert_eq!(characteristic_sublinks(&pres(unknot(1))).unwrap(), vec![SublinkSelector(vec![true])]);
    let e8 = e8_plumbing();
    assert_eq!(characteristic_sublinks(&pres(e8.clone())).unwrap(), vec![SublinkSelector::none(8)]);
    assert_eq!(count_by_hand(&e8.integer_linking_matrix().unwrap()), 1);
}

#[test]
fn counts_match_mod_two_homology() {
    let links = [unknot(0), unknot(3), borromean([0, 0, 0]), borromean([1, 0, 2]), trefoil(true, 2), e8_plumbing()];
    for l in links {
        let m = l.integer_linking_matrix().unwrap();
        let n = m.rows();
        let rank = crate::exact_algebra::rank_mod_p(&m, 2).unwrap();
        let count = characteristic_sublinks(&pres(l.clone())).unwrap().len();
        assert_eq!(count, 1 << (n - rank));
        assert_eq!(count, count_by_hand(&m));
        let h = h1_invariants(&pres(l)).unwrap();
        let even_torsion = h.torsion.iter().filter(|t| t.is_even()).count();
        assert_eq!(count, 1 << (h.b1 + even_torsion));
    }
}

#[test]
fn arf_from_conway_coefficients() {
    assert_eq!(arf_proper(&unknot(0)).unwrap(), 0);
    assert_eq!(arf_proper(&trefoil(true, 0)).unwrap(), 1);
    assert_eq!(arf_proper(&trefoil(false, 0)).unwrap(), 1);
    assert_eq!(arf_proper(&figure_eight(0)).unwrap(), 1);
    assert_eq!(arf_proper(&borromean([0, 0, 0])).unwrap(), 1);
    assert_eq!(arf_proper(&unknot(0).disjoint_union(&trefoil(true, 0))).unwrap(), 1);
    assert_eq!(arf_proper(&trefoil(true, 0).disjoint_union(&figure_eight(0))).unwrap(), 0);
    assert!(arf_proper(&crate::fixtures::hopf(0, 0)).is_err());
}

#[test]
fn rochlin_anchors() {
    assert_eq!(rochlin(&spin(FramedLink::empty(), &[])).unwrap(), 0);
    assert_eq!(rochlin(&spin(e8_plumbing(), &[])).unwrap(), 8);
    assert_eq!(rochlin(&spin(trefoil(true, 1), &[0])).unwrap(), 8);
    assert_eq!(rochlin(&spin(trefoil(false, -1), &[0])).unwrap(), 8);
    assert_eq!(rochlin(&spin(unknot(1), &[0])).unwrap(), 0);
    assert_eq!(rochlin(&spin(unknot(-1), &[0])).unwrap(), 0);
    // the two spin structures on S¹×S²
    assert_eq!(rochlin(&spin(unknot(0), &[])).unwrap(), 0);
    assert_eq!(rochlin(&spin(unknot(0), &[0])).unwrap(), 0);
    assert!(SpinPresentation::new(pres(unknot(1)), SublinkSelector::none(1)).is_err());
}

#[test]
fn additive_under_connected_sum() {
    let pieces = [spin(e8_plumbing(), &[]), spin(trefoil(true, 1), &[0]), spin(unknot(0), &[0]), spin(unknot(-1), &[0])];
    for a in &pieces {
        for b in &pieces {
            let s = spin_connected_sum(a, b).unwrap();
            assert_eq!(rochlin(&s).unwrap(), (rochlin(a).unwrap() + rochlin(b).unwrap()) % 16);
        }
    }
}

#[test]
fn spin_brackets() {
    let m = spin(borromean_surgery(), &[]);
    let empty = spin_bracket(&m, &SublinkSelector::none(3)).unwrap();
    assert_eq!(empty, FormalSum::single(m.clone()));
    let delta = spin_bracket(&m, &SublinkSelector::all(3)).unwrap();
    // terms of equal size are split unknots and collapse
    assert_eq!(delta.len(), 4);
    for (_, t) in delta.iter() {
        t.validate().unwrap();
    }
    assert_eq!(rochlin_sum(&delta).unwrap(), 8);
    // four-component brackets vanish
    let cases = [(lambda_2n(2), vec![]), (lambda_2n(2), vec![4]), (lambda_hat_4(), vec![])];
    for (l, c) in cases {
        let m = spin(l, &c);
        let sel = m.presentation.surgery_selector();
        assert_eq!(sel.count(), 4);
        let x = spin_bracket(&m, &sel).unwrap();
        assert_eq!(rochlin_sum(&x).unwrap(), 0);
        let d: Vec<i64> = x.iter().map(|(_, t)| signature_defect(t).unwrap()).collect();
        assert!(d.iter().all(|&v| v == d[0]));
    }
}
