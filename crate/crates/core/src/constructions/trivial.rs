use crate::error::{AlgebraError, Result};
use crate::ring::{verify_ring_axioms, FiniteRing, MAX_TABLE_ORDER};

use super::FiniteBimodule;

/// Axioms of a trivial extension are rechecked exhaustively up to this order.
const RECHECK_ORDER: usize = 512;

/// `A∝M` with pair index `a·|M| + m`.
#[derive(Debug, Clone)]
pub struct TrivialExtension {
    pub ring: FiniteRing,
    pub base_order: usize,
    pub bimodule_order: usize,
}

impl TrivialExtension {
    pub fn pair(&self, a: usize, m: usize) -> usize {
        a * self.bimodule_order + m
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        (x / self.bimodule_order, x % self.bimodule_order)
    }

    /// `a ↦ (a, 0)`.
    pub fn embed_ring(&self) -> Vec<usize> {
        (0..self.base_order).map(|a| self.pair(a, 0)).collect()
    }

    /// `m ↦ (0, m)`.
    pub fn embed_module(&self) -> Vec<usize> {
        (0..self.bimodule_order).map(|m| self.pair(0, m)).collect()
    }
}

/// `(a,m)(b,m') = (ab, a·m' + m·b)`.
pub fn trivial_extension(b: &FiniteBimodule) -> Result<TrivialExtension> {
    let ring = b.ring();
    let (k, n) = (ring.order(), b.order());
    let order = k * n;
    if order > MAX_TABLE_ORDER {
        return Err(AlgebraError::Budget {
            what: format!("trivial extension of order {order}"),
            cap: MAX_TABLE_ORDER,
        });
    }
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, m) = (x / n, x % n);
        for y in 0..order {
            let (c, m2) = (y / n, y % n);
            add.push((ring.add(a, c) * n + b.add(m, m2)) as u32);
            let second = b.add(b.left_act(a, m2), b.right_act(m, c));
            mul.push((ring.mul(a, c) * n + second) as u32);
        }
    }
    let names = (0..order)
        .map(|x| format!("({},{})", ring.element_name(x / n), b.element_name(x % n)))
        .collect();
    let ext = FiniteRing::from_parts(
        format!("{}∝{}", ring.label(), b.label()),
        order,
        add,
        mul,
        ring.one() * n,
        names,
    );
    if order <= RECHECK_ORDER {
        let report = verify_ring_axioms(&ext.tables());
        if !report.passed() {
            return Err(AlgebraError::Consistency {
                message: format!("trivial extension fails ring axioms: {report}"),
                element: report.failures[0].witness.first().copied().unwrap_or(0),
            });
        }
    }
    Ok(TrivialExtension {
        ring: ext,
        base_order: k,
        bimodule_order: n,
    })
}

/// Outcome of comparing left zero divisors of `A∝M` against their
/// description through `A` and `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDivisorCheck {
    /// `ann_l(M) ⊆ ann_r(M)`.
    pub hypothesis_met: bool,
    /// Pairs where "left zero divisor of `A∝M`" differs from
    /// "`a` in `zd_l(A) ∪ Zd_l(M)`".
    pub membership_mismatches: Vec<usize>,
    /// Pairs where "`ann_r(a,m) = 0`" differs from
    /// "`ann_r(a) = 0` and `ann_RM(a) = 0`".
    pub annihilator_mismatches: Vec<usize>,
}

impl ZeroDivisorCheck {
    pub fn consistent(&self) -> bool {
        self.membership_mismatches.is_empty() && self.annihilator_mismatches.is_empty()
    }
}

pub fn trivial_ext_zero_divisor_check(
    b: &FiniteBimodule,
    ext: &TrivialExtension,
) -> ZeroDivisorCheck {
    let ring = b.ring();
    let anns = b.annihilators();
    let roles = ring.element_roles();
    let big = &ext.ring;
    let mut membership_mismatches = Vec::new();
    let mut annihilator_mismatches = Vec::new();
    for x in big.elements() {
        let (a, _) = ext.split(x);
        let direct = x == 0 || big.nonzero_elements().any(|y| big.mul(x, y) == 0);
        let predicted = roles.left_zero_divisors.contains(a) || anns.zd_l.contains(a);
        if direct != predicted {
            membership_mismatches.push(x);
        }
        let ann_pair_zero = big.elements().all(|y| y == 0 || big.mul(x, y) != 0);
        let ann_a_zero = ring.nonzero_elements().all(|c| ring.mul(a, c) != 0);
        let predicted = ann_a_zero && anns.ann_rm[a].is_zero_only();
        if ann_pair_zero != predicted {
            annihilator_mismatches.push(x);
        }
    }
    ZeroDivisorCheck {
        hypothesis_met: anns.ann_l.is_subset(&anns.ann_r),
        membership_mismatches,
        annihilator_mismatches,
    }
}
