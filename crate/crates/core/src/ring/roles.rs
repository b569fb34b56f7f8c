use super::FiniteRing;
use crate::mask::SubsetMask;

/// Classification of ring elements. Zero is counted as both a left and a
/// right zero divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementRoles {
    pub units: SubsetMask,
    pub left_zero_divisors: SubsetMask,
    pub right_zero_divisors: SubsetMask,
    pub regular: SubsetMask,
    pub center: SubsetMask,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingPredicates {
    pub commutative: bool,
    pub right_duo: bool,
    pub domain: bool,
    pub division: bool,
    pub field: bool,
    pub reduced_ring: bool,
    pub local: bool,
    pub left_fusible: bool,
    pub right_fusible: bool,
    pub fusible: bool,
    pub regular_left_fusible: bool,
}

impl FiniteRing {
    pub fn element_roles(&self) -> ElementRoles {
        let n = self.order();
        let left_zero_divisors =
            SubsetMask::from_predicate(n, |a| (1..n).any(|b| self.mul(a, b) == 0));
        let right_zero_divisors =
            SubsetMask::from_predicate(n, |a| (1..n).any(|b| self.mul(b, a) == 0));
        let one = self.one();
        let units = SubsetMask::from_predicate(n, |a| {
            (0..n).any(|b| self.mul(a, b) == one && self.mul(b, a) == one)
        });
        let center =
            SubsetMask::from_predicate(n, |a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)));
        let regular = left_zero_divisors.union(&right_zero_divisors).complement();
        ElementRoles {
            units,
            left_zero_divisors,
            right_zero_divisors,
            regular,
            center,
        }
    }

    /// Nonzero elements `a = z + r` with `z` a left zero divisor and `r` not.
    pub fn left_fusible_elements(&self, roles: &ElementRoles) -> SubsetMask {
        fusible_elements(self, &roles.left_zero_divisors)
    }

    pub fn right_fusible_elements(&self, roles: &ElementRoles) -> SubsetMask {
        fusible_elements(self, &roles.right_zero_divisors)
    }

    /// `Ra ⊆ aR` for every `a`.
    pub fn is_right_duo(&self) -> bool {
        self.elements().all(|a| {
            let right = self.right_multiples(a);
            self.elements().all(|b| right.contains(self.mul(b, a)))
        })
    }

    pub fn ring_predicates(&self) -> RingPredicates {
        let roles = self.element_roles();
        self.ring_predicates_with(&roles)
    }

    pub fn ring_predicates_with(&self, roles: &ElementRoles) -> RingPredicates {
        let n = self.order();
        let commutative = self.is_commutative();
        let domain =
            roles.left_zero_divisors.is_zero_only() && roles.right_zero_divisors.is_zero_only();
        let division = roles.units.len() == n - 1;
        let field = division && commutative;
        let reduced_ring = self.nonzero_elements().all(|a| self.mul(a, a) != 0);
        let nonunits = roles.units.complement();
        let local = nonunits.iter().all(|a| {
            nonunits.iter().all(|b| nonunits.contains(self.add(a, b)))
                && self
                    .elements()
                    .all(|r| nonunits.contains(self.mul(a, r)) && nonunits.contains(self.mul(r, a)))
        });
        let left = self.left_fusible_elements(roles);
        let right = self.right_fusible_elements(roles);
        let all_nonzero = |m: &SubsetMask| m.len() == n - 1;
        let left_fusible = all_nonzero(&left);
        let right_fusible = all_nonzero(&right);
        let regular_left_fusible = self
            .nonzero_elements()
            .all(|a| roles.regular.iter().any(|s| left.contains(self.mul(s, a))));
        RingPredicates {
            commutative,
            right_duo: self.is_right_duo(),
            domain,
            division,
            field,
            reduced_ring,
            local,
            left_fusible,
            right_fusible,
            fusible: left_fusible && right_fusible,
            regular_left_fusible,
        }
    }
}

fn fusible_elements(ring: &FiniteRing, zero_divisors: &SubsetMask) -> SubsetMask {
    SubsetMask::from_predicate(ring.order(), |a| {
        a != 0
            && zero_divisors
                .iter()
                .any(|z| !zero_divisors.contains(ring.sub(a, z)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lower2() -> FiniteRing {
        FiniteRing::pattern_matrix(2, 2, &[vec![true, false], vec![true, true]]).unwrap()
    }

    #[test]
    fn z6_roles() {
        let r = FiniteRing::cyclic(6).unwrap();
        let roles = r.element_roles();
        assert_eq!(roles.units.to_vec(), vec![1, 5]);
        assert_eq!(roles.left_zero_divisors.to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(roles.regular, roles.units);
        assert!(roles.center.is_full());
    }

    #[test]
    fn field_roles() {
        for p in [2, 3, 5, 7] {
            let r = FiniteRing::cyclic(p).unwrap();
            let roles = r.element_roles();
            assert!(roles.left_zero_divisors.is_zero_only());
            assert_eq!(roles.units.len(), p - 1);
            let preds = r.ring_predicates();
            assert!(preds.field && preds.division && preds.domain && preds.local);
            assert!(preds.left_fusible && preds.fusible);
        }
    }

    #[test]
    fn lower_triangular_roles() {
        let r = lower2();
        let roles = r.element_roles();
        // identity (5) and identity + E21 (7)
        assert_eq!(roles.regular.to_vec(), vec![5, 7]);
        assert_eq!(roles.regular, roles.units);
        let preds = r.ring_predicates();
        assert!(!preds.right_duo);
        assert!(!preds.commutative);
        // b a outside aR: the witness from a table scan
        let witness = r.elements().find_map(|a| {
            let right = r.right_multiples(a);
            r.elements()
                .find(|&b| !right.contains(r.mul(b, a)))
                .map(|b| (a, b))
        });
        assert!(witness.is_some());
    }

    #[test]
    fn z6_predicates() {
        let p = FiniteRing::cyclic(6).unwrap().ring_predicates();
        assert!(p.commutative && p.right_duo && !p.domain && !p.local);
        // exhaustive decomposition search: every nonzero a = z + r
        let r = FiniteRing::cyclic(6).unwrap();
        let zd = [0, 2, 3, 4];
        for a in 1..6 {
            assert!(zd.iter().any(|&z| !zd.contains(&r.sub(a, z))));
        }
        assert!(p.left_fusible && p.regular_left_fusible && p.reduced_ring);
    }

    #[test]
    fn z4_is_not_fusible() {
        let p = FiniteRing::cyclic(4).unwrap().ring_predicates();
        assert!(!p.left_fusible && !p.regular_left_fusible && !p.reduced_ring && p.local);
    }
}
