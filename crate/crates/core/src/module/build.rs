use std::sync::Arc;

use super::FiniteModule;
use crate::error::{AlgebraError, Result};
use crate::mask::SubsetMask;
use crate::ring::{FiniteRing, MAX_TABLE_ORDER};

impl FiniteModule {
    /// `R` as a right module over itself.
    pub fn regular(ring: &Arc<FiniteRing>) -> FiniteModule {
        let n = ring.order();
        let mut add = Vec::with_capacity(n * n);
        let mut action = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(ring.add(a, b) as u32);
                action.push(ring.mul(a, b) as u32);
            }
        }
        FiniteModule::from_parts(
            Arc::clone(ring),
            ring.label().to_string(),
            n,
            add,
            action,
            ring.element_names().to_vec(),
        )
    }

    /// The cyclic module `R/I` for a right ideal `I`. Cosets are indexed by
    /// their least element.
    pub fn quotient_of_ring(ring: &Arc<FiniteRing>, ideal: &SubsetMask) -> Result<FiniteModule> {
        if !ring.is_right_ideal(ideal) {
            return Err(AlgebraError::input(format!(
                "{ideal:?} is not a right ideal of {}",
                ring.label()
            )));
        }
        let (reps, class_of) = crate::ring::cosets_of(ring.order(), ideal, |x, i| ring.add(x, i));
        let q = reps.len();
        let k = ring.order();
        let mut add = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                add.push(class_of[ring.add(a, b)] as u32);
            }
        }
        let mut action = Vec::with_capacity(q * k);
        for &a in &reps {
            for r in 0..k {
                action.push(class_of[ring.mul(a, r)] as u32);
            }
        }
        let gens: Vec<String> = ideal
            .iter()
            .filter(|&i| i != 0)
            .map(|i| ring.element_name(i).to_string())
            .collect();
        Ok(FiniteModule::from_parts(
            Arc::clone(ring),
            format!("{}/<{}>", ring.label(), gens.join(",")),
            q,
            add,
            action,
            reps.iter()
                .map(|&r| format!("{}+I", ring.element_name(r)))
                .collect(),
        ))
    }

    pub fn is_submodule(&self, set: &SubsetMask) -> bool {
        set.carrier_size() == self.order()
            && set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.add(a, b))))
            && set
                .iter()
                .all(|a| self.ring().elements().all(|r| set.contains(self.act(a, r))))
    }

    /// A submodule viewed as a module in its own right; elements keep their
    /// relative order.
    pub fn submodule_as_module(&self, sub: &SubsetMask) -> Result<FiniteModule> {
        if !self.is_submodule(sub) {
            return Err(AlgebraError::input(format!(
                "{sub:?} is not a submodule of {}",
                self.label()
            )));
        }
        let members = sub.to_vec();
        let mut position = vec![usize::MAX; self.order()];
        for (k, &m) in members.iter().enumerate() {
            position[m] = k;
        }
        let q = members.len();
        let k = self.ring().order();
        let mut add = Vec::with_capacity(q * q);
        for &a in &members {
            for &b in &members {
                add.push(position[self.add(a, b)] as u32);
            }
        }
        let mut action = Vec::with_capacity(q * k);
        for &a in &members {
            for r in 0..k {
                action.push(position[self.act(a, r)] as u32);
            }
        }
        let names: Vec<String> = members
            .iter()
            .map(|&m| self.element_name(m).to_string())
            .collect();
        Ok(FiniteModule::from_parts(
            Arc::clone(self.ring_arc()),
            format!("[{}]<={}", names.join(","), self.label()),
            q,
            add,
            action,
            names,
        ))
    }

    /// `M1 x M2` over `R1 x R2`, indexed like the product ring.
    pub fn product(left: &FiniteModule, right: &FiniteModule) -> Result<FiniteModule> {
        let ring = Arc::new(FiniteRing::product(left.ring(), right.ring())?);
        Self::product_over(ring, left, right)
    }

    /// Product module over an already-built product ring.
    pub fn product_over(
        ring: Arc<FiniteRing>,
        left: &FiniteModule,
        right: &FiniteModule,
    ) -> Result<FiniteModule> {
        let (n1, n2) = (left.order(), right.order());
        let (k1, k2) = (left.ring().order(), right.ring().order());
        if ring.order() != k1 * k2 {
            return Err(AlgebraError::input(
                "ring is not the product of the factor rings",
            ));
        }
        let n = n1 * n2;
        if n > MAX_TABLE_ORDER {
            return Err(AlgebraError::Budget {
                what: format!("module order {n}"),
                cap: MAX_TABLE_ORDER,
            });
        }
        let mut add = Vec::with_capacity(n * n);
        let mut action = Vec::with_capacity(n * k1 * k2);
        for x in 0..n {
            let (a1, a2) = (x / n2, x % n2);
            for y in 0..n {
                let (b1, b2) = (y / n2, y % n2);
                add.push((left.add(a1, b1) * n2 + right.add(a2, b2)) as u32);
            }
            for r in 0..k1 * k2 {
                let (r1, r2) = (r / k2, r % k2);
                action.push((left.act(a1, r1) * n2 + right.act(a2, r2)) as u32);
            }
        }
        let names = (0..n)
            .map(|x| {
                format!(
                    "({},{})",
                    left.element_name(x / n2),
                    right.element_name(x % n2)
                )
            })
            .collect();
        Ok(FiniteModule::from_parts(
            ring,
            format!("({})x({})", left.label(), right.label()),
            n,
            add,
            action,
            names,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::verify_module_axioms;

    fn z(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::cyclic(n).unwrap())
    }

    #[test]
    fn quotient_modules() {
        let z4 = z(4);
        let m = FiniteModule::quotient_of_ring(&z4, &SubsetMask::from_indices(4, [0, 2])).unwrap();
        assert_eq!(m.order(), 2);
        assert_eq!(m.act(1, 2), 0);
        assert!(verify_module_axioms(m.ring(), &m.tables()).passed());

        let z6 = z(6);
        let zero = FiniteModule::quotient_of_ring(&z6, &SubsetMask::full(6)).unwrap();
        assert!(zero.is_zero_module());
        let same = FiniteModule::quotient_of_ring(&z6, &SubsetMask::zero(6)).unwrap();
        assert_eq!(same.tables(), FiniteModule::regular(&z6).tables());
        assert!(FiniteModule::quotient_of_ring(&z6, &SubsetMask::from_indices(6, [0, 1])).is_err());
    }

    #[test]
    fn submodules_as_modules() {
        let z8 = FiniteModule::regular(&z(8));
        let four = z8
            .submodule_as_module(&SubsetMask::from_indices(8, [0, 4]))
            .unwrap();
        assert_eq!(four.order(), 2);
        assert_eq!(four.element_name(1), "4");
        assert_eq!(four.act(1, 1), 1);
        assert_eq!(four.act(1, 2), 0);
        let zero = z8.submodule_as_module(&SubsetMask::zero(8)).unwrap();
        assert!(zero.is_zero_module());
        assert!(z8
            .submodule_as_module(&SubsetMask::from_indices(8, [0, 3]))
            .is_err());

        let m = FiniteModule::product(
            &FiniteModule::regular(&z(4)),
            &FiniteModule::regular(&z(18)),
        )
        .unwrap();
        assert_eq!(m.order(), 72);
        assert_eq!(m.ring().order(), 72);
        let n = SubsetMask::from_indices(72, [0, 9]);
        assert!(m.is_submodule(&n));
        assert_eq!(m.submodule_as_module(&n).unwrap().order(), 2);
    }

    #[test]
    fn products_are_modules() {
        let m = FiniteModule::product(
            &FiniteModule::regular(&z(2)),
            &FiniteModule::quotient_of_ring(&z(4), &SubsetMask::from_indices(4, [0, 2])).unwrap(),
        )
        .unwrap();
        assert!(verify_module_axioms(m.ring(), &m.tables()).passed());
        let z6 = z(6);
        let zero = FiniteModule::quotient_of_ring(&z6, &SubsetMask::full(6)).unwrap();
        let padded = FiniteModule::product(&FiniteModule::regular(&z6), &zero).unwrap();
        assert_eq!(padded.order(), 6);
        assert!(verify_module_axioms(padded.ring(), &padded.tables()).passed());
    }
}
