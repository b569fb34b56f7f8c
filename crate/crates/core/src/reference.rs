//! Slow, definitional versions of the predicates, written directly against
//! the operation tables. Used to re-verify anything the fast paths report.

use crate::lattice::LatticeBudget;
use crate::mask::SubsetMask;
use crate::module::FiniteModule;
use crate::ring::FiniteRing;

/// Subset filtering is only attempted up to this order.
pub const SUBSET_FILTER_ORDER: usize = 16;

pub fn torsion(module: &FiniteModule) -> Vec<bool> {
    let k = module.ring().order();
    (0..module.order())
        .map(|m| (1..k).any(|r| module.act(m, r) == 0))
        .collect()
}

pub fn zero_divisors(module: &FiniteModule) -> Vec<bool> {
    let n = module.order();
    (0..module.ring().order())
        .map(|r| (1..n).any(|m| module.act(m, r) == 0))
        .collect()
}

fn fusible_value(module: &FiniteModule, tor: &[bool], v: usize) -> bool {
    let n = module.order();
    (0..n).any(|x| (0..n).any(|y| tor[x] && !tor[y] && module.add(x, y) == v))
}

pub fn fusible(module: &FiniteModule) -> bool {
    let tor = torsion(module);
    (1..module.order()).all(|m| fusible_value(module, &tor, m))
}

pub fn regular_fusible_element(module: &FiniteModule, m: usize) -> bool {
    let tor = torsion(module);
    let zd = zero_divisors(module);
    (0..module.ring().order())
        .filter(|&r| !zd[r])
        .any(|r| fusible_value(module, &tor, module.act(m, r)))
}

pub fn regular_fusible(module: &FiniteModule) -> bool {
    let tor = torsion(module);
    let zd = zero_divisors(module);
    (1..module.order()).all(|m| {
        (0..module.ring().order())
            .filter(|&r| !zd[r])
            .any(|r| fusible_value(module, &tor, module.act(m, r)))
    })
}

/// All right (or two-sided) ideals by testing every subset that contains 0.
pub fn ideals_by_subsets(ring: &FiniteRing, two_sided: bool) -> Option<Vec<SubsetMask>> {
    let n = ring.order();
    if n > SUBSET_FILTER_ORDER {
        return None;
    }
    let mut out = Vec::new();
    for bits in (1u32..(1 << n)).step_by(2) {
        let has = |x: usize| bits >> x & 1 == 1;
        let closed = (0..n).filter(|&a| has(a)).all(|a| {
            (0..n).all(|b| {
                (!has(b) || has(ring.add(a, b)))
                    && has(ring.mul(a, b))
                    && (!two_sided || has(ring.mul(b, a)))
            })
        });
        if closed {
            out.push(SubsetMask::from_predicate(n, has));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Some(out)
}

/// Right ideals by subset filtering when small, by lattice generation
/// otherwise.
pub fn right_ideals(ring: &FiniteRing) -> Vec<SubsetMask> {
    ideals_by_subsets(ring, false).unwrap_or_else(|| {
        ring.enumerate_right_ideals(false, &LatticeBudget::default())
            .expect("ring within the lattice budget")
    })
}

fn annihilator(module: &FiniteModule, m: usize) -> SubsetMask {
    SubsetMask::from_predicate(module.ring().order(), |r| module.act(m, r) == 0)
}

/// `Z(M)` quantifying over every nonzero right ideal.
pub fn singular(module: &FiniteModule) -> SubsetMask {
    let ideals = right_ideals(module.ring());
    SubsetMask::from_predicate(module.order(), |m| {
        let ann = annihilator(module, m);
        ideals
            .iter()
            .filter(|j| j.has_nonzero())
            .all(|j| j.iter().any(|x| x != 0 && ann.contains(x)))
    })
}

pub fn nonsingular(module: &FiniteModule) -> bool {
    singular(module).is_zero_only()
}

/// `mr = 0` implies `mR ∩ Mr = 0`.
pub fn reduced(module: &FiniteModule) -> bool {
    let n = module.order();
    let k = module.ring().order();
    for m in 0..n {
        for r in 0..k {
            if module.act(m, r) != 0 {
                continue;
            }
            let mut in_mr = vec![false; n];
            for s in 0..k {
                in_mr[module.act(m, s)] = true;
            }
            if (0..n).any(|x| {
                let v = module.act(x, r);
                v != 0 && in_mr[v]
            }) {
                return false;
            }
        }
    }
    true
}

pub fn faithful(module: &FiniteModule) -> bool {
    let k = module.ring().order();
    (1..k).all(|r| (0..module.order()).any(|m| module.act(m, r) != 0))
}

pub fn is_submodule(module: &FiniteModule, set: &[bool]) -> bool {
    let n = module.order();
    let k = module.ring().order();
    set[0]
        && (0..n).filter(|&a| set[a]).all(|a| {
            (0..n).filter(|&b| set[b]).all(|b| set[module.add(a, b)])
                && (0..k).all(|r| set[module.act(a, r)])
        })
}

pub fn annihilator_comparability(module: &FiniteModule) -> bool {
    let k = module.ring().order();
    let n = module.order();
    let kills = |m: usize, r: usize| module.act(m, r) == 0;
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..k).all(|r| !kills(a, r) || kills(b, r))
                || (0..k).all(|r| !kills(b, r) || kills(a, r))
        })
    })
}

pub fn regular_multipliers_central(module: &FiniteModule) -> bool {
    let ring = module.ring();
    let zd = zero_divisors(module);
    (0..ring.order())
        .filter(|&r| !zd[r])
        .all(|r| (0..ring.order()).all(|s| ring.mul(r, s) == ring.mul(s, r)))
}

pub fn simple(module: &FiniteModule) -> bool {
    let n = module.order();
    n > 1
        && (1..n).all(|m| {
            let mut reach = vec![false; n];
            for r in 0..module.ring().order() {
                reach[module.act(m, r)] = true;
            }
            reach.iter().all(|&b| b)
        })
}

pub fn left_zero_divisors(ring: &FiniteRing) -> Vec<bool> {
    let n = ring.order();
    (0..n)
        .map(|a| a == 0 || (1..n).any(|b| ring.mul(a, b) == 0))
        .collect()
}

pub fn right_zero_divisors(ring: &FiniteRing) -> Vec<bool> {
    let n = ring.order();
    (0..n)
        .map(|a| a == 0 || (1..n).any(|b| ring.mul(b, a) == 0))
        .collect()
}

pub fn is_unit(ring: &FiniteRing, a: usize) -> bool {
    (0..ring.order()).any(|b| ring.mul(a, b) == ring.one() && ring.mul(b, a) == ring.one())
}

pub fn commutative(ring: &FiniteRing) -> bool {
    let n = ring.order();
    (0..n).all(|a| (0..n).all(|b| ring.mul(a, b) == ring.mul(b, a)))
}

/// For all `a, b` there is `c` with `ba = ac`.
pub fn right_duo(ring: &FiniteRing) -> bool {
    let n = ring.order();
    (0..n).all(|a| (0..n).all(|b| (0..n).any(|c| ring.mul(b, a) == ring.mul(a, c))))
}

pub fn domain(ring: &FiniteRing) -> bool {
    let n = ring.order();
    (1..n).all(|a| (1..n).all(|b| ring.mul(a, b) != 0))
}

pub fn division(ring: &FiniteRing) -> bool {
    (1..ring.order()).all(|a| is_unit(ring, a))
}

/// Non-units closed under addition and under multiplication on both sides.
pub fn local(ring: &FiniteRing) -> bool {
    let n = ring.order();
    let non: Vec<usize> = (0..n).filter(|&a| !is_unit(ring, a)).collect();
    let is_non = |x: usize| !is_unit(ring, x);
    non.iter().all(|&a| {
        non.iter().all(|&b| is_non(ring.add(a, b)))
            && (0..n).all(|r| is_non(ring.mul(a, r)) && is_non(ring.mul(r, a)))
    })
}

pub fn left_fusible_element(ring: &FiniteRing, zd: &[bool], a: usize) -> bool {
    (0..ring.order()).any(|z| zd[z] && !zd[ring.sub(a, z)])
}

pub fn left_fusible(ring: &FiniteRing) -> bool {
    let zd = left_zero_divisors(ring);
    (1..ring.order()).all(|a| left_fusible_element(ring, &zd, a))
}

pub fn regular_left_fusible(ring: &FiniteRing) -> bool {
    let lz = left_zero_divisors(ring);
    let rz = right_zero_divisors(ring);
    let n = ring.order();
    (1..n).all(|a| {
        (0..n)
            .filter(|&s| !lz[s] && !rz[s])
            .any(|s| left_fusible_element(ring, &lz, ring.mul(s, a)))
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    #[test]
    fn agrees_with_fast_paths_on_small_rings() {
        let lower =
            FiniteRing::pattern_matrix(2, 2, &[vec![true, false], vec![true, true]]).unwrap();
        for ring in [
            FiniteRing::cyclic(6).unwrap(),
            FiniteRing::cyclic(8).unwrap(),
            FiniteRing::cyclic(12).unwrap(),
            lower,
        ] {
            let ring = Arc::new(ring);
            let m = FiniteModule::regular(&ring);
            let c = m.classify().unwrap();
            assert_eq!(c.fusible, fusible(&m), "{}", ring.label());
            assert_eq!(c.regular_fusible, regular_fusible(&m));
            assert_eq!(c.singular, singular(&m));
            assert_eq!(c.predicates.reduced, reduced(&m));
            let p = ring.ring_predicates();
            assert_eq!(p.right_duo, right_duo(&ring));
            assert_eq!(p.local, local(&ring));
            assert_eq!(p.left_fusible, left_fusible(&ring));
            assert_eq!(p.regular_left_fusible, regular_left_fusible(&ring));
        }
    }
}
