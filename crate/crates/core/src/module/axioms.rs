use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FiniteModule;
use crate::error::{AlgebraError, AxiomReport, Result};
use crate::ring::{FiniteRing, MAX_TABLE_ORDER};

pub mod names {
    pub const TABLE_SHAPE: &str = "table_shape";
    pub const ADD_IDENTITY: &str = "additive_identity";
    pub const ADD_COMMUTATIVE: &str = "additive_commutativity";
    pub const ADD_ASSOCIATIVE: &str = "additive_associativity";
    pub const ADD_INVERSE: &str = "additive_inverse";
    pub const ACTION_ADDITIVE: &str = "action_additive_in_module";
    pub const ACTION_DISTRIBUTIVE: &str = "action_additive_in_ring";
    pub const ACTION_ASSOCIATIVE: &str = "action_associative";
    pub const ACTION_UNITAL: &str = "action_unital";
}

/// Raw module tables: `add` is `order x order`, `action[m][r] = m·r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleTables {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub action: Vec<Vec<usize>>,
}

pub(crate) fn check_table(
    report: &mut AxiomReport,
    rows: usize,
    cols: usize,
    bound: usize,
    table: &[Vec<usize>],
) {
    if table.len() != rows {
        report.record(names::TABLE_SHAPE, vec![table.len()]);
        return;
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != cols {
            report.record(names::TABLE_SHAPE, vec![a]);
            return;
        }
        if let Some(b) = row.iter().position(|&v| v >= bound) {
            report.record(names::TABLE_SHAPE, vec![a, b]);
            return;
        }
    }
}

/// Abelian group axioms for an addition table with identity 0.
pub(crate) fn check_abelian_group(report: &mut AxiomReport, n: usize, add: &[Vec<usize>]) {
    for a in 0..n {
        if add[0][a] != a || add[a][0] != a {
            report.record(names::ADD_IDENTITY, vec![a]);
        }
        if !(0..n).any(|b| add[a][b] == 0) {
            report.record(names::ADD_INVERSE, vec![a]);
        }
        for b in 0..n {
            if add[a][b] != add[b][a] {
                report.record(names::ADD_COMMUTATIVE, vec![a, b]);
            }
            for c in 0..n {
                if add[add[a][b]][c] != add[a][add[b][c]] {
                    report.record(names::ADD_ASSOCIATIVE, vec![a, b, c]);
                }
            }
        }
    }
}

/// Exhaustive right-module axiom check with first-failure witnesses.
pub fn verify_module_axioms(ring: &FiniteRing, t: &ModuleTables) -> AxiomReport {
    let mut report = AxiomReport::default();
    let n = t.order;
    let k = ring.order();
    if n == 0 {
        report.record(names::TABLE_SHAPE, vec![0]);
        return report;
    }
    check_table(&mut report, n, n, n, &t.add);
    check_table(&mut report, n, k, n, &t.action);
    if !report.passed() {
        return report;
    }
    check_abelian_group(&mut report, n, &t.add);
    let add = |a: usize, b: usize| t.add[a][b];
    let act = |m: usize, r: usize| t.action[m][r];
    for m in 0..n {
        if act(m, ring.one()) != m {
            report.record(names::ACTION_UNITAL, vec![m]);
        }
        for m2 in 0..n {
            for r in 0..k {
                if act(add(m, m2), r) != add(act(m, r), act(m2, r)) {
                    report.record(names::ACTION_ADDITIVE, vec![m, m2, r]);
                }
            }
        }
        for r in 0..k {
            for s in 0..k {
                if act(m, ring.add(r, s)) != add(act(m, r), act(m, s)) {
                    report.record(names::ACTION_DISTRIBUTIVE, vec![m, r, s]);
                }
                if act(m, ring.mul(r, s)) != act(act(m, r), s) {
                    report.record(names::ACTION_ASSOCIATIVE, vec![m, r, s]);
                }
            }
        }
    }
    report
}

impl FiniteModule {
    pub fn from_tables(
        ring: &Arc<FiniteRing>,
        label: impl Into<String>,
        tables: &ModuleTables,
    ) -> Result<FiniteModule> {
        if tables.order > MAX_TABLE_ORDER {
            return Err(AlgebraError::Budget {
                what: format!("module order {}", tables.order),
                cap: MAX_TABLE_ORDER,
            });
        }
        let report = verify_module_axioms(ring, tables);
        if !report.passed() {
            return Err(AlgebraError::Axioms(report));
        }
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().map(|&v| v as u32).collect();
        Ok(FiniteModule::from_parts(
            Arc::clone(ring),
            label.into(),
            tables.order,
            flat(&tables.add),
            flat(&tables.action),
            (0..tables.order).map(|i| i.to_string()).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z6() -> Arc<FiniteRing> {
        Arc::new(FiniteRing::cyclic(6).unwrap())
    }

    #[test]
    fn regular_tables_pass() {
        let r = z6();
        let t = FiniteModule::regular(&r).tables();
        assert!(verify_module_axioms(&r, &t).passed());
        assert!(FiniteModule::from_tables(&r, "Z6", &t).is_ok());
    }

    #[test]
    fn unital_failure() {
        let r = z6();
        let mut t = FiniteModule::regular(&r).tables();
        t.action[2][1] = 4;
        let report = verify_module_axioms(&r, &t);
        assert_eq!(
            report.failure(names::ACTION_UNITAL).unwrap().witness,
            vec![2]
        );
    }

    #[test]
    fn perturbed_associativity_witness() {
        let r = z6();
        let mut t = FiniteModule::regular(&r).tables();
        t.action[1][4] = 5;
        let mut expected = None;
        'outer: for m in 0..6 {
            for a in 0..6 {
                for b in 0..6 {
                    if t.action[m][r.mul(a, b)] != t.action[t.action[m][a]][b] {
                        expected = Some(vec![m, a, b]);
                        break 'outer;
                    }
                }
            }
        }
        let report = verify_module_axioms(&r, &t);
        assert_eq!(
            report.failure(names::ACTION_ASSOCIATIVE).unwrap().witness,
            expected.unwrap()
        );
        assert!(matches!(
            FiniteModule::from_tables(&r, "bad", &t),
            Err(AlgebraError::Axioms(_))
        ));
    }
}
