use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, AxiomReport, Result};
use crate::mask::SubsetMask;
use crate::module::{check_abelian_group, check_table, FiniteModule};
use crate::ring::{FiniteRing, MAX_TABLE_ORDER};

pub mod names {
    pub const LEFT_ADDITIVE: &str = "left_action_additive_in_module";
    pub const LEFT_DISTRIBUTIVE: &str = "left_action_additive_in_ring";
    pub const LEFT_ASSOCIATIVE: &str = "left_action_associative";
    pub const LEFT_UNITAL: &str = "left_action_unital";
    pub const RIGHT_ADDITIVE: &str = "right_action_additive_in_module";
    pub const RIGHT_DISTRIBUTIVE: &str = "right_action_additive_in_ring";
    pub const RIGHT_ASSOCIATIVE: &str = "right_action_associative";
    pub const RIGHT_UNITAL: &str = "right_action_unital";
    pub const COMPATIBLE: &str = "actions_commute";
}

/// `left_action[a][m] = a·m`, `right_action[m][a] = m·a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleTables {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub left_action: Vec<Vec<usize>>,
    pub right_action: Vec<Vec<usize>>,
}

pub fn verify_bimodule_axioms(ring: &FiniteRing, t: &BimoduleTables) -> AxiomReport {
    let mut report = AxiomReport::default();
    let n = t.order;
    let k = ring.order();
    if n == 0 {
        report.record(crate::module::axiom_names::TABLE_SHAPE, vec![0]);
        return report;
    }
    check_table(&mut report, n, n, n, &t.add);
    check_table(&mut report, k, n, n, &t.left_action);
    check_table(&mut report, n, k, n, &t.right_action);
    if !report.passed() {
        return report;
    }
    check_abelian_group(&mut report, n, &t.add);
    let add = |a: usize, b: usize| t.add[a][b];
    let left = |a: usize, m: usize| t.left_action[a][m];
    let right = |m: usize, a: usize| t.right_action[m][a];
    let one = ring.one();
    for m in 0..n {
        if left(one, m) != m {
            report.record(names::LEFT_UNITAL, vec![m]);
        }
        if right(m, one) != m {
            report.record(names::RIGHT_UNITAL, vec![m]);
        }
        for m2 in 0..n {
            for a in 0..k {
                if left(a, add(m, m2)) != add(left(a, m), left(a, m2)) {
                    report.record(names::LEFT_ADDITIVE, vec![a, m, m2]);
                }
                if right(add(m, m2), a) != add(right(m, a), right(m2, a)) {
                    report.record(names::RIGHT_ADDITIVE, vec![m, m2, a]);
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                if left(ring.add(a, b), m) != add(left(a, m), left(b, m)) {
                    report.record(names::LEFT_DISTRIBUTIVE, vec![a, b, m]);
                }
                if right(m, ring.add(a, b)) != add(right(m, a), right(m, b)) {
                    report.record(names::RIGHT_DISTRIBUTIVE, vec![m, a, b]);
                }
                if left(ring.mul(a, b), m) != left(a, left(b, m)) {
                    report.record(names::LEFT_ASSOCIATIVE, vec![a, b, m]);
                }
                if right(m, ring.mul(a, b)) != right(right(m, a), b) {
                    report.record(names::RIGHT_ASSOCIATIVE, vec![m, a, b]);
                }
                if right(left(a, m), b) != left(a, right(m, b)) {
                    report.record(names::COMPATIBLE, vec![a, m, b]);
                }
            }
        }
    }
    report
}

/// A finite `A`-bimodule given by tables. Index 0 is the zero.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteBimodule {
    ring: Arc<FiniteRing>,
    label: String,
    order: usize,
    add: Vec<u32>,
    left: Vec<u32>,
    right: Vec<u32>,
    neg: Vec<u32>,
    names: Vec<String>,
}

/// Annihilator data of a bimodule over `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleAnnihilators {
    /// `{a : a·m = 0 for all m}`.
    pub ann_l: SubsetMask,
    /// `{a : m·a = 0 for all m}`.
    pub ann_r: SubsetMask,
    /// `{a : a·m = 0 for some nonzero m}`.
    pub zd_l: SubsetMask,
    /// `{m : a·m = 0}` for each `a`.
    pub ann_rm: Vec<SubsetMask>,
}

impl FiniteBimodule {
    pub fn from_tables(
        ring: &Arc<FiniteRing>,
        label: impl Into<String>,
        t: &BimoduleTables,
    ) -> Result<FiniteBimodule> {
        if t.order > MAX_TABLE_ORDER {
            return Err(AlgebraError::Budget {
                what: format!("bimodule order {}", t.order),
                cap: MAX_TABLE_ORDER,
            });
        }
        let report = verify_bimodule_axioms(ring, t);
        if !report.passed() {
            return Err(AlgebraError::Axioms(report));
        }
        let names = (0..t.order).map(|i| i.to_string()).collect();
        Ok(Self::from_tables_unchecked(ring, label.into(), t, names))
    }

    fn from_tables_unchecked(
        ring: &Arc<FiniteRing>,
        label: String,
        t: &BimoduleTables,
        names: Vec<String>,
    ) -> FiniteBimodule {
        let flat =
            |t: &Vec<Vec<usize>>| -> Vec<u32> { t.iter().flatten().map(|&v| v as u32).collect() };
        let n = t.order;
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| t.add[a][b] == 0).expect("inverse") as u32)
            .collect();
        FiniteBimodule {
            ring: Arc::clone(ring),
            label,
            order: n,
            add: flat(&t.add),
            left: flat(&t.left_action),
            right: flat(&t.right_action),
            neg,
            names,
        }
    }

    /// `A` over itself on both sides.
    pub fn regular(ring: &Arc<FiniteRing>) -> FiniteBimodule {
        let n = ring.order();
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect()
        };
        let t = BimoduleTables {
            order: n,
            add: table(&|a, b| ring.add(a, b)),
            left_action: table(&|a, b| ring.mul(a, b)),
            right_action: table(&|a, b| ring.mul(a, b)),
        };
        Self::from_tables_unchecked(
            ring,
            ring.label().to_string(),
            &t,
            ring.element_names().to_vec(),
        )
    }

    /// `A/I` for a two-sided ideal `I`, acted on through the projection.
    pub fn quotient(ring: &Arc<FiniteRing>, ideal: &SubsetMask) -> Result<FiniteBimodule> {
        if !ring.is_two_sided_ideal(ideal) {
            return Err(AlgebraError::input(format!(
                "{ideal:?} is not a two-sided ideal of {}",
                ring.label()
            )));
        }
        let (reps, class_of) = crate::ring::cosets_of(ring.order(), ideal, |x, i| ring.add(x, i));
        let q = reps.len();
        let k = ring.order();
        let t = BimoduleTables {
            order: q,
            add: reps
                .iter()
                .map(|&a| reps.iter().map(|&b| class_of[ring.add(a, b)]).collect())
                .collect(),
            left_action: (0..k)
                .map(|a| reps.iter().map(|&m| class_of[ring.mul(a, m)]).collect())
                .collect(),
            right_action: reps
                .iter()
                .map(|&m| (0..k).map(|a| class_of[ring.mul(m, a)]).collect())
                .collect(),
        };
        let gens: Vec<&str> = ideal
            .iter()
            .filter(|&i| i != 0)
            .map(|i| ring.element_name(i))
            .collect();
        let names = reps
            .iter()
            .map(|&r| format!("{}+I", ring.element_name(r)))
            .collect();
        Ok(Self::from_tables_unchecked(
            ring,
            format!("{}/<{}>", ring.label(), gens.join(",")),
            &t,
            names,
        ))
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> FiniteBimodule {
        let k = ring.order();
        let t = BimoduleTables {
            order: 1,
            add: vec![vec![0]],
            left_action: vec![vec![0]; k],
            right_action: vec![vec![0; k]],
        };
        Self::from_tables_unchecked(ring, "0".to_string(), &t, vec!["0".to_string()])
    }

    /// `Z_p` with `a·m = left[a]·m` and `m·a = m·right[a]`, where `left` and
    /// `right` send ring elements to residues mod `p`. Validated by the full
    /// axiom check, so the maps must be ring homomorphisms.
    pub fn scalar(
        ring: &Arc<FiniteRing>,
        p: usize,
        left: &[usize],
        right: &[usize],
    ) -> Result<FiniteBimodule> {
        let k = ring.order();
        if p < 2 || left.len() != k || right.len() != k {
            return Err(AlgebraError::input(
                "scalar bimodule needs p >= 2 and one residue per ring element on each side",
            ));
        }
        let t = BimoduleTables {
            order: p,
            add: (0..p)
                .map(|a| (0..p).map(|b| (a + b) % p).collect())
                .collect(),
            left_action: (0..k)
                .map(|a| (0..p).map(|m| left[a] * m % p).collect())
                .collect(),
            right_action: (0..p)
                .map(|m| (0..k).map(|a| m * right[a] % p).collect())
                .collect(),
        };
        Self::from_tables(ring, format!("Z{p}"), &t)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// `a·m`.
    #[inline]
    pub fn left_act(&self, a: usize, m: usize) -> usize {
        self.left[a * self.order + m] as usize
    }

    /// `m·a`.
    #[inline]
    pub fn right_act(&self, m: usize, a: usize) -> usize {
        self.right[m * self.ring.order() + a] as usize
    }

    pub fn element_name(&self, m: usize) -> &str {
        &self.names[m]
    }

    pub fn tables(&self) -> BimoduleTables {
        let n = self.order;
        let k = self.ring.order();
        BimoduleTables {
            order: n,
            add: (0..n)
                .map(|a| (0..n).map(|b| self.add(a, b)).collect())
                .collect(),
            left_action: (0..k)
                .map(|a| (0..n).map(|m| self.left_act(a, m)).collect())
                .collect(),
            right_action: (0..n)
                .map(|m| (0..k).map(|a| self.right_act(m, a)).collect())
                .collect(),
        }
    }

    /// The underlying right module.
    pub fn right_module(&self) -> FiniteModule {
        FiniteModule::from_parts(
            Arc::clone(&self.ring),
            self.label.clone(),
            self.order,
            self.add.clone(),
            self.right.clone(),
            self.names.clone(),
        )
    }

    pub fn annihilators(&self) -> BimoduleAnnihilators {
        let k = self.ring.order();
        let n = self.order;
        let ann_rm: Vec<SubsetMask> = (0..k)
            .map(|a| SubsetMask::from_predicate(n, |m| self.left_act(a, m) == 0))
            .collect();
        BimoduleAnnihilators {
            ann_l: SubsetMask::from_predicate(k, |a| ann_rm[a].is_full()),
            ann_r: SubsetMask::from_predicate(k, |a| (0..n).all(|m| self.right_act(m, a) == 0)),
            zd_l: SubsetMask::from_predicate(k, |a| ann_rm[a].has_nonzero()),
            ann_rm,
        }
    }
}

impl std::fmt::Debug for FiniteBimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteBimodule")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("ring", &self.ring.label())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::cyclic(n).unwrap())
    }

    #[test]
    fn regular_and_mod_two() {
        let b = FiniteBimodule::regular(&z(2));
        assert!(verify_bimodule_axioms(b.ring(), &b.tables()).passed());
        let a = b.annihilators();
        assert!(a.ann_l.is_zero_only() && a.ann_r.is_zero_only() && a.zd_l.is_zero_only());

        let z4 = z(4);
        let b = FiniteBimodule::quotient(&z4, &SubsetMask::from_indices(4, [0, 2])).unwrap();
        assert_eq!(b.order(), 2);
        assert!(verify_bimodule_axioms(&z4, &b.tables()).passed());
        let a = b.annihilators();
        assert_eq!(a.ann_l.to_vec(), vec![0, 2]);
        assert_eq!(a.ann_r.to_vec(), vec![0, 2]);
        assert_eq!(a.zd_l.to_vec(), vec![0, 2]);
        let same = FiniteBimodule::scalar(&z4, 2, &[0, 1, 0, 1], &[0, 1, 0, 1]).unwrap();
        assert_eq!(same.tables(), b.tables());
    }

    #[test]
    fn zero_bimodule() {
        let b = FiniteBimodule::zero(&z(3));
        assert!(verify_bimodule_axioms(b.ring(), &b.tables()).passed());
        let a = b.annihilators();
        assert!(a.ann_l.is_full() && a.ann_r.is_full() && a.zd_l.is_empty());
    }

    #[test]
    fn zeroed_left_action_fails_unital() {
        let r = z(2);
        let mut t = FiniteBimodule::regular(&r).tables();
        t.left_action = vec![vec![0, 0]; 2];
        let report = verify_bimodule_axioms(&r, &t);
        assert!(report.failure(names::COMPATIBLE).is_none());
        assert_eq!(report.failure(names::LEFT_UNITAL).unwrap().witness, vec![1]);
        assert!(FiniteBimodule::from_tables(&r, "bad", &t).is_err());
    }

    #[test]
    fn scalar_requires_homomorphisms() {
        assert!(FiniteBimodule::scalar(&z(4), 2, &[0, 1, 1, 1], &[0, 1, 0, 1]).is_err());
    }
}
