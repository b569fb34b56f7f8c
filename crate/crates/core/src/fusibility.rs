//! Fusible and regular fusible elements, with certified witnesses.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::mask::SubsetMask;
use crate::module::{FiniteModule, ModulePredicates, ModuleProfile, TorsionPartition};

/// `m·multiplier = torsion_part + free_part`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FusibleWitness {
    pub multiplier: usize,
    pub torsion_part: usize,
    pub free_part: usize,
}

/// A module together with its profile and the ordered list of admissible
/// multipliers (`one` first, then the rest of `R - Zd(M)` by index).
#[derive(Debug, Clone)]
pub struct FusibilityAnalysis<'a> {
    module: &'a FiniteModule,
    profile: ModuleProfile,
    multipliers: Vec<usize>,
}

impl<'a> FusibilityAnalysis<'a> {
    pub fn new(module: &'a FiniteModule) -> Result<Self> {
        let profile = ModuleProfile::new(module)?;
        let one = module.ring().one();
        let multipliers = std::iter::once(one)
            .chain(profile.regular_multipliers.iter().filter(|&r| r != one))
            .collect();
        Ok(FusibilityAnalysis {
            module,
            profile,
            multipliers,
        })
    }

    pub fn module(&self) -> &FiniteModule {
        self.module
    }

    pub fn profile(&self) -> &ModuleProfile {
        &self.profile
    }

    fn torsion(&self) -> &SubsetMask {
        &self.profile.torsion.torsion
    }

    fn torsion_free(&self) -> &SubsetMask {
        &self.profile.torsion.torsion_free
    }

    /// First `(x, y)` by increasing `x` with `v = x + y`, `x` torsion and
    /// `y` torsion-free.
    fn decompose(&self, v: usize) -> Option<(usize, usize)> {
        let m = self.module;
        self.torsion()
            .iter()
            .map(|x| (x, m.sub(v, x)))
            .find(|&(_, y)| self.torsion_free().contains(y))
    }

    fn nonzero(&self, m: usize) -> Result<()> {
        if m == 0 || m >= self.module.order() {
            return Err(AlgebraError::input(format!(
                "element {m} is zero or out of range for {}",
                self.module.label()
            )));
        }
        Ok(())
    }

    pub fn fusible_witness(&self, m: usize) -> Result<Option<(usize, usize)>> {
        self.nonzero(m)?;
        Ok(self.decompose(m))
    }

    /// Smallest witness in `(r, x)` order. Torsion-free `m` short-circuits
    /// to `(1, 0, m)`.
    pub fn regular_fusible_witness(&self, m: usize) -> Result<Option<FusibleWitness>> {
        self.nonzero(m)?;
        let one = self.module.ring().one();
        if self.torsion_free().contains(m) {
            return Ok(Some(FusibleWitness {
                multiplier: one,
                torsion_part: 0,
                free_part: m,
            }));
        }
        for &r in &self.multipliers {
            let v = self.module.act(m, r);
            if v == 0 {
                return Err(AlgebraError::Consistency {
                    message: format!("regular multiplier {r} kills a nonzero element"),
                    element: m,
                });
            }
            if let Some((x, y)) = self.decompose(v) {
                return Ok(Some(FusibleWitness {
                    multiplier: r,
                    torsion_part: x,
                    free_part: y,
                }));
            }
        }
        Ok(None)
    }

    /// Every nonzero element of `sub` is regular fusible in the ambient
    /// module.
    pub fn is_regular_fusible_submodule(&self, sub: &SubsetMask) -> Result<bool> {
        if !self.module.is_submodule(sub) {
            return Err(AlgebraError::input(format!(
                "{sub:?} is not a submodule of {}",
                self.module.label()
            )));
        }
        for n in sub.iter().filter(|&n| n != 0) {
            if self.regular_fusible_witness(n)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn classify(&self) -> Result<ModuleClassification> {
        let n = self.module.order();
        let mut fusible_parts = vec![None; n];
        let mut witnesses = vec![None; n];
        let mut failing = SubsetMask::empty(n);
        for m in self.module.nonzero_elements() {
            fusible_parts[m] = self.decompose(m);
            witnesses[m] = self.regular_fusible_witness(m)?;
            if witnesses[m].is_none() {
                failing.insert(m);
            }
        }
        let fusible = fusible_parts[1..].iter().all(Option::is_some);
        let regular_fusible = failing.is_empty();
        let class = ModuleClassification {
            predicates: self.profile.predicates,
            torsion: self.profile.torsion.clone(),
            zero_divisors: self.profile.zero_divisors.clone(),
            regular_multipliers: self.profile.regular_multipliers.clone(),
            singular: self.profile.singular.clone(),
            fusible,
            regular_fusible,
            fusible_parts,
            witnesses,
            failing_elements: failing,
        };
        if self.module.ring().is_commutative() {
            class.check_commutative_chain()?;
        }
        if fusible && !regular_fusible {
            return Err(AlgebraError::Consistency {
                message: "fusible module has an element without a regular witness".into(),
                element: class.failing_elements.first().unwrap_or(0),
            });
        }
        Ok(class)
    }
}

#[derive(Debug, Clone)]
pub struct ModuleClassification {
    pub predicates: ModulePredicates,
    pub torsion: TorsionPartition,
    pub zero_divisors: SubsetMask,
    pub regular_multipliers: SubsetMask,
    pub singular: SubsetMask,
    pub fusible: bool,
    pub regular_fusible: bool,
    /// Plain decomposition `m = x + y`, indexed by element.
    pub fusible_parts: Vec<Option<(usize, usize)>>,
    /// Regular fusible witness, indexed by element; `None` at 0.
    pub witnesses: Vec<Option<FusibleWitness>>,
    pub failing_elements: SubsetMask,
}

impl ModuleClassification {
    /// torsion free ⟹ fusible ⟹ regular fusible ⟹ nonsingular, which must
    /// hold over a commutative ring.
    fn check_commutative_chain(&self) -> Result<()> {
        let p = &self.predicates;
        let broken = |message: &str, element: usize| {
            Err(AlgebraError::Consistency {
                message: message.to_string(),
                element,
            })
        };
        if p.torsion_free && !self.fusible {
            let m = self.fusible_parts.iter().skip(1).position(Option::is_none);
            return broken("torsion-free module is not fusible", m.map_or(0, |k| k + 1));
        }
        if self.regular_fusible && !p.nonsingular {
            let z = self.singular.iter().find(|&m| m != 0).unwrap_or(0);
            return broken(
                "regular fusible module over a commutative ring is singular",
                z,
            );
        }
        Ok(())
    }
}

impl FiniteModule {
    pub fn fusible_witness(&self, m: usize) -> Result<Option<(usize, usize)>> {
        FusibilityAnalysis::new(self)?.fusible_witness(m)
    }

    pub fn regular_fusible_witness(&self, m: usize) -> Result<Option<FusibleWitness>> {
        FusibilityAnalysis::new(self)?.regular_fusible_witness(m)
    }

    pub fn is_fusible_module(&self) -> Result<bool> {
        Ok(self.classify()?.fusible)
    }

    pub fn is_regular_fusible_module(&self) -> Result<bool> {
        Ok(self.classify()?.regular_fusible)
    }

    pub fn is_regular_fusible_submodule(&self, sub: &SubsetMask) -> Result<bool> {
        FusibilityAnalysis::new(self)?.is_regular_fusible_submodule(sub)
    }

    pub fn classify(&self) -> Result<ModuleClassification> {
        FusibilityAnalysis::new(self)?.classify()
    }
}

/// Re-checks a witness straight from the tables, without the profile used
/// by the search. Returns the first failed condition.
pub fn recheck_witness(
    module: &FiniteModule,
    m: usize,
    w: &FusibleWitness,
) -> std::result::Result<(), &'static str> {
    let ring = module.ring();
    let n = module.order();
    if m == 0 || m >= n || w.torsion_part >= n || w.free_part >= n || w.multiplier >= ring.order() {
        return Err("index out of range");
    }
    let kills = |e: usize| (1..ring.order()).any(|r| module.act(e, r) == 0);
    if (1..n).any(|e| module.act(e, w.multiplier) == 0) {
        return Err("multiplier is a zero divisor of the module");
    }
    if !kills(w.torsion_part) {
        return Err("torsion part is torsion-free");
    }
    if kills(w.free_part) {
        return Err("free part is torsion");
    }
    if module.act(m, w.multiplier) != module.add(w.torsion_part, w.free_part) {
        return Err("decomposition does not add up");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ring::FiniteRing;

    fn regular(r: FiniteRing) -> FiniteModule {
        FiniteModule::regular(&Arc::new(r))
    }

    fn lower2() -> FiniteRing {
        FiniteRing::pattern_matrix(2, 2, &[vec![true, false], vec![true, true]]).unwrap()
    }

    #[test]
    fn z6_witnesses() {
        let m = regular(FiniteRing::cyclic(6).unwrap());
        assert_eq!(m.fusible_witness(1).unwrap(), Some((0, 1)));
        assert_eq!(m.fusible_witness(2).unwrap(), Some((3, 5)));
        assert!(m.fusible_witness(0).is_err());
        let w = m.regular_fusible_witness(3).unwrap().unwrap();
        assert_eq!((w.multiplier, w.torsion_part, w.free_part), (1, 2, 1));
        let c = m.classify().unwrap();
        assert!(c.fusible && c.regular_fusible);
        for k in 1..6 {
            recheck_witness(&m, k, &c.witnesses[k].unwrap()).unwrap();
        }
    }

    #[test]
    fn four_z8_is_not_regular_fusible() {
        let z8 = regular(FiniteRing::cyclic(8).unwrap());
        let m = z8
            .submodule_as_module(&SubsetMask::from_indices(8, [0, 4]))
            .unwrap();
        assert_eq!(m.fusible_witness(1).unwrap(), None);
        let c = m.classify().unwrap();
        assert!(!c.fusible && !c.regular_fusible && c.predicates.reduced);
        assert_eq!(c.failing_elements.to_vec(), vec![1]);
    }

    #[test]
    fn lower_triangular_e21() {
        let m = regular(lower2());
        assert_eq!(m.regular_fusible_witness(2).unwrap(), None);
        let c = m.classify().unwrap();
        assert!(!c.regular_fusible && c.predicates.nonsingular);
        assert_eq!(c.torsion.torsion_free.to_vec(), vec![5, 7]);
    }

    #[test]
    fn product_submodules() {
        let m = FiniteModule::product(
            &regular(FiniteRing::cyclic(4).unwrap()),
            &regular(FiniteRing::cyclic(18).unwrap()),
        )
        .unwrap();
        let a = FusibilityAnalysis::new(&m).unwrap();
        let pair = |x: usize, y: usize| x * 18 + y;
        assert!(a
            .is_regular_fusible_submodule(&SubsetMask::from_indices(72, [0, pair(0, 9)]))
            .unwrap());
        let threes = SubsetMask::from_indices(72, (0..18).step_by(3).map(|y| pair(0, y)));
        assert!(!a.is_regular_fusible_submodule(&threes).unwrap());
        assert!(a
            .is_regular_fusible_submodule(&SubsetMask::zero(72))
            .unwrap());
        assert!(a
            .is_regular_fusible_submodule(&SubsetMask::from_indices(72, [0, 1]))
            .is_err());
    }

    #[test]
    fn recheck_rejects_bad_witnesses() {
        let m = regular(FiniteRing::cyclic(6).unwrap());
        let bad = FusibleWitness {
            multiplier: 2,
            torsion_part: 0,
            free_part: 4,
        };
        assert!(recheck_witness(&m, 2, &bad).is_err());
        let bad = FusibleWitness {
            multiplier: 1,
            torsion_part: 3,
            free_part: 1,
        };
        assert_eq!(
            recheck_witness(&m, 2, &bad),
            Err("decomposition does not add up")
        );
    }
}
