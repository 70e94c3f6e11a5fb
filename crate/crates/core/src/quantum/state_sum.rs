//! Kauffman bracket by enumerating all smoothings of a PD diagram.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::link_diagrams::FramedLink;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Unnormalized bracket (empty diagram 1, each loop `-A² - A⁻²`) as a
/// Laurent polynomial in `A`: exponent to coefficient. At crossing
/// `[a,b,c,d]` the A-smoothing joins `(a,b), (c,d)`.
pub fn kauffman_bracket_state_sum(l: &FramedLink, max_crossings: usize) -> Result<BTreeMap<i64, BigInt>> {
    l.validate()?;
    let n = l.crossings.len();
    if n > max_crossings {
        return Err(Error::Cap(format!("{n} crossings > {max_crossings}")));
    }
    let mut index: HashMap<i64, usize> = HashMap::new();
    for c in &l.components {
        for &a in &c.arcs {
            let k = index.len();
            index.entry(a).or_insert(k);
        }
    }
    let na = index.len();
    // δ^k as Laurent polynomials
    let mut dpow: Vec<BTreeMap<i64, BigInt>> = vec![BTreeMap::from([(0, BigInt::from(1))])];
    for k in 1..=na {
        let mut next = BTreeMap::new();
        for (e, c) in &dpow[k - 1] {
            for de in [2i64, -2] {
                *next.entry(e + de).or_insert_with(BigInt::zero) -= c;
            }
        }
        dpow.push(next);
    }
    let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
    for s in 0u64..(1u64 << n) {
        let mut parent: Vec<usize> = (0..na).collect();
        let mut e = 0i64;
        for (x, c) in l.crossings.iter().enumerate() {
            let [a, b, cc, d] = c.arcs.map(|a| index[&a]);
            let pairs = if s >> x & 1 == 0 {
                e += 1;
                [(a, b), (cc, d)]
            } else {
                e -= 1;
                [(a, d), (b, cc)]
            };
            for (u, v) in pairs {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        let loops = (0..na).filter(|&i| find(&mut parent, i) == i).count();
        for (de, c) in &dpow[loops] {
            *out.entry(e + de).or_insert_with(BigInt::zero) += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Evaluates a Laurent polynomial in `A` at `A = q^a`.
pub fn evaluate_at(poly: &BTreeMap<i64, BigInt>, p: u32, a: i64) -> CyclotomicInt {
    poly.iter().fold(CyclotomicInt::zero(p), |acc, (e, c)| &acc + &CyclotomicInt::from_q_power(p, a * e).scale(c))
}
