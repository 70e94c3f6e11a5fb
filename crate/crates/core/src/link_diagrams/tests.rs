use super::*;

fn closure(n: usize, w: &[i32]) -> FramedLink {
    MorseLink::braid_closure(n, w).unwrap().to_link().unwrap()
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

#[test]
fn trefoil_and_hopf_from_braids() {
    let t = closure(2, &[1, 1, 1]);
    assert_eq!(t.num_components(), 1);
    assert_eq!(t.writhes().unwrap(), vec![3]);
    let h = closure(2, &[1, 1]);
    assert_eq!(h.num_components(), 2);
    assert_eq!(h.linking_number(0, 1).unwrap(), 1);
    let h2 = closure(2, &[-1, -1]);
    assert_eq!(h2.linking_number(0, 1).unwrap(), -1);
}

#[test]
fn borromean_has_zero_linking() {
    let b = closure(3, &[1, -2, 1, -2, 1, -2]);
    assert_eq!(b.num_components(), 3);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                assert_eq!(b.linking_number(i, j).unwrap(), 0);
            }
        }
    }
}

#[test]
fn malformed_codes_are_rejected() {
    let mut t = closure(2, &[1, 1, 1]);
    t.crossings[0].sign = -t.crossings[0].sign;
    assert!(t.validate().is_err());
    let mut u = closure(2, &[1, 1, 1]);
    u.crossings[1].arcs[2] = 99;
    assert!(u.validate().is_err());
}

#[test]
fn sublinks_drop_crossings() {
    let h = closure(2, &[1, 1]);
    let a = h.sublink(&SublinkSelector::from_indices(2, &[0])).unwrap();
    assert_eq!(a.num_components(), 1);
    assert!(a.crossings.is_empty());
    assert_eq!(a.components[0].arcs.len(), 1);
    let d = h.delta().unwrap();
    assert_eq!(d.len(), 3); // the two single unknots coincide
}

#[test]
fn reversing_a_component_negates_linking() {
    let h = closure(2, &[1, 1]);
    let r = h.reversed(1).unwrap();
    assert_eq!(r.linking_number(0, 1).unwrap(), -1);
    let rr = r.reversed(1).unwrap();
    assert_eq!(rr.canonical_encoding(), h.canonical_encoding());
}

#[test]
fn mirror_switches_writhe() {
    let t = closure(2, &[1, 1, 1]).with_framings(&[2]);
    let m = t.mirror().unwrap();
    assert_eq!(m.writhes().unwrap(), vec![-3]);
    assert_eq!(m.components[0].framing, int(-2));
    assert_eq!(m.mirror().unwrap().canonical_encoding(), t.canonical_encoding());
}

#[test]
fn canonical_encoding_ignores_labels() {
    let t = closure(3, &[1, -2, 1, -2]);
    let mut r = t.clone();
    for c in &mut r.components {
        for a in &mut c.arcs {
            *a = *a * 7 + 3;
        }
    }
    for c in &mut r.crossings {
        c.arcs = c.arcs.map(|a| a * 7 + 3);
    }
    r.crossings.reverse();
    assert_eq!(r.canonical_encoding(), t.canonical_encoding());
    let other = closure(3, &[1, 2, 1, 2]);
    assert_ne!(other.canonical_encoding(), t.canonical_encoding());
}

#[test]
fn morse_round_trip() {
    for (n, w) in [(2, vec![1, 1, 1]), (3, vec![1, -2, 1, -2]), (3, vec![1, -2, 1, -2, 1, -2]), (4, vec![1, 2, 3, -1, 2])] {
        let l = closure(n, &w);
        let m = MorseLink::from_link(&l).unwrap();
        assert_eq!(m.to_link().unwrap().canonical_encoding(), l.canonical_encoding());
    }
}

#[test]
fn cabling_sets_copy_linking() {
    let u = FramedLink::unknot(1, Role::Surgery);
    let c = u.cable(&[2]).unwrap();
    let m = c.linking_matrix().unwrap();
    assert_eq!(m, vec![vec![int(1), int(1)], vec![int(1), int(1)]]);
    let t = closure(2, &[1, 1, 1]).with_framings(&[-1]);
    let c3 = t.cable(&[3]).unwrap();
    let m = c3.linking_matrix().unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(m[i][j], int(-1));
        }
    }
    let h = closure(2, &[1, 1]).with_framings(&[0, 2]);
    let hc = h.cable(&[2, 0]).unwrap();
    assert_eq!(hc.num_components(), 2);
    assert_eq!(hc.linking_number(0, 1).unwrap(), 0);
}

#[test]
fn json_round_trip() {
    let h = closure(2, &[1, 1]).with_roles(&[Role::Base, Role::Surgery]).with_colors(&[Some(2), None]);
    let mut h = h;
    h.components[1].framing = BigRational::new(3.into(), 2.into());
    let s = h.to_json();
    let back = FramedLink::from_json(&s).unwrap();
    assert_eq!(back, h);
    assert!(FramedLink::from_json("{\"components\": [], \"crossings\": [[1,2,3,4,\"+\"]]}").is_err());
}

#[test]
fn admissibility() {
    let b = closure(3, &[1, -2, 1, -2, 1, -2]).with_framings(&[1, -1, 2]);
    assert!(b.is_admissible(&SublinkSelector::from_indices(3, &[0, 1])).unwrap());
    assert!(!b.is_admissible(&SublinkSelector::from_indices(3, &[2])).unwrap());
    let h = closure(2, &[1, 1]).with_framings(&[1, 1]);
    assert!(!h.is_admissible(&SublinkSelector::from_indices(2, &[0])).unwrap());
}

#[test]
fn morse_round_trip_many_braids() {
    let mut s: u64 = 12345;
    let mut next = |m: u64| {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 33) % m
    };
    for _ in 0..300 {
        let n = 2 + next(4) as usize;
        let len = 1 + next(12) as usize;
        let w: Vec<i32> = (0..len)
            .map(|_| {
                let g = 1 + next(n as u64 - 1) as i32;
                if next(2) == 0 { g } else { -g }
            })
            .collect();
        let l = closure(n, &w);
        let m = MorseLink::from_link(&l).unwrap_or_else(|e| panic!("{n} {w:?}: {e}"));
        assert_eq!(m.to_link().unwrap().canonical_encoding(), l.canonical_encoding());
        assert!(m.width() <= 2 * n + 2, "{n} {w:?} width {}", m.width());
    }
}

#[test]
fn special_links() {
    let s = special_link(1, 1, &[]).unwrap();
    assert_eq!(s.num_components(), 2);
    assert!(s.crossings.is_empty());
    assert_eq!(s.components[0].framing, int(1));
    assert_eq!(s.components[1].framing, int(0));
    let b = special_link(1, 2, &[Replacement::new(1, 2, 3, 1)]).unwrap();
    let lm = b.linking_matrix().unwrap();
    assert_eq!(lm, vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(0), int(0), int(0)]]);
    assert!(b.is_admissible(&SublinkSelector::from_indices(3, &[0, 1])).unwrap());
    let reps: Vec<Replacement> = (0..3).map(|j| Replacement::new(2 * j + 1, 2 * j + 2, 7, 1)).collect();
    let l6 = special_link(1, 6, &reps).unwrap();
    assert!(l6.is_admissible(&SublinkSelector::from_indices(7, &[0, 1, 2, 3, 4, 5])).unwrap());
    assert!(special_link(1, 2, &[Replacement::new(2, 1, 3, 1)]).is_err());
    let twice = [Replacement::new(1, 2, 3, 1), Replacement::new(1, 2, 3, 1), Replacement::new(1, 2, 3, -1)];
    assert!(special_link(1, 2, &twice).is_err());
}
