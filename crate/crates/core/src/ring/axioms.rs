use serde::{Deserialize, Serialize};

use super::{FiniteRing, MAX_TABLE_ORDER};
use crate::error::{AlgebraError, AxiomReport, Result};

pub mod names {
    pub const TABLE_SHAPE: &str = "table_shape";
    pub const NONTRIVIAL: &str = "one_differs_from_zero";
    pub const ADD_IDENTITY: &str = "additive_identity";
    pub const ADD_COMMUTATIVE: &str = "additive_commutativity";
    pub const ADD_ASSOCIATIVE: &str = "additive_associativity";
    pub const ADD_INVERSE: &str = "additive_inverse";
    pub const MUL_ASSOCIATIVE: &str = "multiplicative_associativity";
    pub const LEFT_DISTRIBUTIVE: &str = "left_distributivity";
    pub const RIGHT_DISTRIBUTIVE: &str = "right_distributivity";
    pub const MUL_IDENTITY: &str = "multiplicative_identity";
}

/// Raw ring tables as supplied by a caller, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingTables {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub one: usize,
}

fn check_square(report: &mut AxiomReport, order: usize, table: &[Vec<usize>]) {
    if table.len() != order {
        report.record(names::TABLE_SHAPE, vec![table.len()]);
        return;
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != order {
            report.record(names::TABLE_SHAPE, vec![a]);
            return;
        }
        if let Some(b) = row.iter().position(|&v| v >= order) {
            report.record(names::TABLE_SHAPE, vec![a, b]);
            return;
        }
    }
}

/// Checks every ring axiom exhaustively, recording the first failing witness
/// per axiom. Associativity and distributivity are `O(order^3)`.
pub fn verify_ring_axioms(t: &RingTables) -> AxiomReport {
    let mut report = AxiomReport::default();
    let n = t.order;
    check_square(&mut report, n, &t.add);
    check_square(&mut report, n, &t.mul);
    if t.one >= n {
        report.record(names::TABLE_SHAPE, vec![t.one]);
    }
    if !report.passed() {
        return report;
    }
    if t.one == 0 {
        report.record(names::NONTRIVIAL, vec![t.one]);
    }
    let add = |a: usize, b: usize| t.add[a][b];
    let mul = |a: usize, b: usize| t.mul[a][b];

    for a in 0..n {
        if add(0, a) != a || add(a, 0) != a {
            report.record(names::ADD_IDENTITY, vec![a]);
        }
        if !(0..n).any(|b| add(a, b) == 0) {
            report.record(names::ADD_INVERSE, vec![a]);
        }
        if mul(t.one, a) != a || mul(a, t.one) != a {
            report.record(names::MUL_IDENTITY, vec![a]);
        }
        for b in 0..n {
            if add(a, b) != add(b, a) {
                report.record(names::ADD_COMMUTATIVE, vec![a, b]);
            }
            for c in 0..n {
                if add(add(a, b), c) != add(a, add(b, c)) {
                    report.record(names::ADD_ASSOCIATIVE, vec![a, b, c]);
                }
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    report.record(names::MUL_ASSOCIATIVE, vec![a, b, c]);
                }
                if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) {
                    report.record(names::LEFT_DISTRIBUTIVE, vec![a, b, c]);
                }
                if mul(add(a, b), c) != add(mul(a, c), mul(b, c)) {
                    report.record(names::RIGHT_DISTRIBUTIVE, vec![a, b, c]);
                }
            }
        }
    }
    report
}

impl FiniteRing {
    /// Validates caller-supplied tables and builds the ring.
    pub fn from_tables(label: impl Into<String>, tables: &RingTables) -> Result<FiniteRing> {
        if tables.order < 2 {
            return Err(AlgebraError::input(format!(
                "ring order must be at least 2, got {}",
                tables.order
            )));
        }
        if tables.order > MAX_TABLE_ORDER {
            return Err(AlgebraError::Budget {
                what: format!("ring order {}", tables.order),
                cap: MAX_TABLE_ORDER,
            });
        }
        let report = verify_ring_axioms(tables);
        if !report.passed() {
            return Err(AlgebraError::Axioms(report));
        }
        let n = tables.order;
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().map(|&v| v as u32).collect();
        Ok(FiniteRing::from_parts(
            label.into(),
            n,
            flat(&tables.add),
            flat(&tables.mul),
            tables.one,
            (0..n).map(|i| i.to_string()).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_n(n: usize) -> RingTables {
        RingTables {
            order: n,
            add: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
            mul: (0..n)
                .map(|a| (0..n).map(|b| (a * b) % n).collect())
                .collect(),
            one: 1,
        }
    }

    #[test]
    fn z2_passes() {
        assert!(verify_ring_axioms(&z_n(2)).passed());
        assert!(FiniteRing::from_tables("Z2", &z_n(2)).is_ok());
    }

    #[test]
    fn broken_identity_reports_one() {
        let mut t = z_n(2);
        t.mul[1][1] = 0;
        let report = verify_ring_axioms(&t);
        let fail = report
            .failure(names::MUL_IDENTITY)
            .expect("identity failure");
        assert_eq!(fail.witness, vec![1]);
        assert!(report.failure(names::MUL_ASSOCIATIVE).is_none());
    }

    #[test]
    fn perturbed_z4_reports_first_nonassociative_triple() {
        let mut t = z_n(4);
        t.mul[2][3] = 0;
        // independent scan for the first triple in lexicographic order
        let n = 4;
        let m = |a: usize, b: usize| t.mul[a][b];
        let mut expected = None;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        expected = Some(vec![a, b, c]);
                        break 'outer;
                    }
                }
            }
        }
        let expected = expected.expect("perturbation breaks associativity");
        let report = verify_ring_axioms(&t);
        assert_eq!(
            report.failure(names::MUL_ASSOCIATIVE).unwrap().witness,
            expected
        );
        assert!(matches!(
            FiniteRing::from_tables("bad", &t),
            Err(AlgebraError::Axioms(_))
        ));
    }

    #[test]
    fn shape_errors_are_reported() {
        let mut t = z_n(3);
        t.add[1][2] = 7;
        let report = verify_ring_axioms(&t);
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].axiom, names::TABLE_SHAPE);
    }

    #[test]
    fn order_one_rejected() {
        let t = RingTables {
            order: 1,
            add: vec![vec![0]],
            mul: vec![vec![0]],
            one: 0,
        };
        assert!(matches!(
            FiniteRing::from_tables("zero", &t),
            Err(AlgebraError::Input(_))
        ));
    }
}
