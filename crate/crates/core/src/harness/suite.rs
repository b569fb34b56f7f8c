use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::corpus::{Corpus, CorpusEntry, Instance};
use super::facts::{entry_facts, EntryFacts, Fact, Fast, Reference};
use super::statements::{evaluate, Claim, Evaluation, StatementId, Verdict};
use crate::error::{AlgebraError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub statement: StatementId,
    pub instance: String,
    pub verdict: Verdict,
    pub hypotheses: Vec<Fact>,
    pub claim: Claim,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    /// Time spent computing the instance's facts, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_micros: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StatementSummary {
    pub statement: Option<StatementId>,
    pub holds: usize,
    pub vacuous: usize,
    pub violated: usize,
    pub anomaly: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub instances: usize,
    pub checks: usize,
    pub violations: usize,
    pub anomalies: usize,
    /// Regular fusible witnesses re-checked while computing facts.
    pub witnesses_checked: usize,
    pub summary: Vec<StatementSummary>,
    /// Sorted by statement, then corpus position.
    pub outcomes: Vec<CheckOutcome>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteOptions {
    pub timing: bool,
}

fn outcome(
    id: StatementId,
    label: &str,
    eval: Evaluation,
    elapsed_micros: Option<u64>,
) -> CheckOutcome {
    let verdict = eval.verdict();
    CheckOutcome {
        statement: id,
        instance: label.to_string(),
        verdict,
        witness: (verdict == Verdict::Violated)
            .then(|| eval.claim.witness())
            .flatten(),
        hypotheses: eval.hypotheses,
        claim: eval.claim,
        elapsed_micros,
    }
}

/// A violation reported by the fast oracle must be reproduced by the
/// reference oracle.
fn reverify_violation(id: StatementId, entry: &CorpusEntry) -> Result<()> {
    let facts = entry_facts(&Reference, &entry.instance)?;
    let eval = evaluate(id, &facts).expect("shape already matched");
    if eval.verdict() != Verdict::Violated {
        return Err(AlgebraError::Consistency {
            message: format!(
                "{id} on {}: fast oracle reports a violation the reference oracle does not reproduce",
                entry.label
            ),
            element: 0,
        });
    }
    Ok(())
}

/// Evaluates one statement on one instance.
pub fn check_statement(id: StatementId, entry: &CorpusEntry) -> Result<CheckOutcome> {
    if entry.shape != id.shape() {
        return Err(AlgebraError::Input(format!(
            "{id} needs a {:?} instance, {} is {:?}",
            id.shape(),
            entry.label,
            entry.shape
        )));
    }
    let facts = entry_facts(&Fast, &entry.instance)?;
    let eval = evaluate(id, &facts).expect("shape checked");
    let out = outcome(id, &entry.label, eval, None);
    if out.verdict == Verdict::Violated {
        reverify_violation(id, entry)?;
    }
    Ok(out)
}

/// Corpus index, outcomes, witnesses re-checked.
type EntryRows = (usize, Vec<(StatementId, CheckOutcome)>, usize);

/// Every (statement, instance) pair of matching shape. Instances are
/// processed in parallel; the result is sorted and does not depend on
/// scheduling.
pub fn run_suite(
    corpus: &Corpus,
    statements: &[StatementId],
    opts: SuiteOptions,
) -> Result<SuiteReport> {
    let mut ids: Vec<StatementId> = statements.to_vec();
    ids.sort();
    ids.dedup();
    let per_entry: Vec<Result<EntryRows>> = corpus
        .entries
        .par_iter()
        .enumerate()
        .map(|(index, entry)| {
            let wanted: Vec<StatementId> = ids
                .iter()
                .copied()
                .filter(|id| id.shape() == entry.shape)
                .collect();
            if wanted.is_empty() {
                return Ok((index, Vec::new(), 0));
            }
            let start = Instant::now();
            let facts: EntryFacts =
                entry_facts(&Fast, &entry.instance).map_err(|e| tag_error(e, &entry.label))?;
            let elapsed = opts.timing.then(|| start.elapsed().as_micros() as u64);
            let mut outs = Vec::with_capacity(wanted.len());
            for id in wanted {
                let eval = evaluate(id, &facts).expect("shape matched");
                let out = outcome(id, &entry.label, eval, elapsed);
                if out.verdict == Verdict::Violated {
                    reverify_violation(id, entry)?;
                }
                outs.push((id, out));
            }
            Ok((index, outs, facts.witnesses_checked()))
        })
        .collect();

    let mut rows: Vec<(StatementId, usize, CheckOutcome)> = Vec::new();
    let mut witnesses_checked = 0;
    let mut instances = 0;
    for r in per_entry {
        let (index, outs, w) = r?;
        if !outs.is_empty() {
            instances += 1;
        }
        witnesses_checked += w;
        rows.extend(outs.into_iter().map(|(id, o)| (id, index, o)));
    }
    rows.sort_by_key(|(id, index, _)| (*id, *index));

    let mut summary: Vec<StatementSummary> = ids
        .iter()
        .map(|&id| StatementSummary {
            statement: Some(id),
            ..StatementSummary::default()
        })
        .collect();
    for (id, _, o) in &rows {
        let s = summary
            .iter_mut()
            .find(|s| s.statement == Some(*id))
            .expect("summary per statement");
        match o.verdict {
            Verdict::Holds => s.holds += 1,
            Verdict::Vacuous => s.vacuous += 1,
            Verdict::Violated => s.violated += 1,
            Verdict::Anomaly => s.anomaly += 1,
        }
    }
    Ok(SuiteReport {
        instances,
        checks: rows.len(),
        violations: summary.iter().map(|s| s.violated).sum(),
        anomalies: summary.iter().map(|s| s.anomaly).sum(),
        witnesses_checked,
        summary,
        outcomes: rows.into_iter().map(|(_, _, o)| o).collect(),
    })
}

fn tag_error(e: AlgebraError, label: &str) -> AlgebraError {
    match e {
        AlgebraError::Consistency { message, element } => AlgebraError::Consistency {
            message: format!("{label}: {message}"),
            element,
        },
        AlgebraError::Input(m) => AlgebraError::Input(format!("{label}: {m}")),
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub index: usize,
    pub label: String,
    pub provenance: String,
    pub hypotheses: Vec<Fact>,
    pub claim: Claim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub statement: StatementId,
    pub dropped: Option<String>,
    pub examined: usize,
    pub found: Option<SearchHit>,
}

/// First corpus instance where the hypotheses other than `dropped` hold
/// and the converse fails: for an implication, the conclusion holds while
/// the premise does not; for an equivalence or conjunction, the claim
/// itself fails. The hit is re-derived with the reference oracle.
pub fn search_counterexample(
    corpus: &Corpus,
    id: StatementId,
    dropped: Option<&str>,
) -> Result<SearchResult> {
    if let Some(name) = dropped {
        if !id.hypotheses().contains(&name) {
            return Err(AlgebraError::Input(format!(
                "`{name}` is not a hypothesis of {id}; expected one of [{}] or none",
                id.hypotheses().join(", ")
            )));
        }
    }
    let mut examined = 0;
    for (index, entry) in corpus.of_shape(id.shape()) {
        examined += 1;
        let facts = entry_facts(&Fast, &entry.instance).map_err(|e| tag_error(e, &entry.label))?;
        let eval = evaluate(id, &facts).expect("shape matched");
        if !eval.is_converse_counterexample(dropped) {
            continue;
        }
        let check =
            evaluate(id, &entry_facts(&Reference, &entry.instance)?).expect("shape matched");
        if !check.is_converse_counterexample(dropped) {
            return Err(AlgebraError::Consistency {
                message: format!("search hit {} for {id} does not re-verify", entry.label),
                element: index,
            });
        }
        return Ok(SearchResult {
            statement: id,
            dropped: dropped.map(str::to_string),
            examined,
            found: Some(SearchHit {
                index,
                label: entry.label.clone(),
                provenance: entry.provenance.clone(),
                hypotheses: eval.hypotheses,
                claim: eval.claim,
            }),
        });
    }
    Ok(SearchResult {
        statement: id,
        dropped: dropped.map(str::to_string),
        examined,
        found: None,
    })
}

/// The division statement on one ring, as a stand-alone probe.
pub fn division_ring_probe(ring: &std::sync::Arc<crate::ring::FiniteRing>) -> Result<CheckOutcome> {
    let entry = CorpusEntry {
        label: ring.label().to_string(),
        shape: super::Shape::Ring,
        provenance: "probe".into(),
        spec: crate::spec::StructureSpec::Table {
            order: ring.order(),
            add: ring.tables().add,
            mul: ring.tables().mul,
            one: ring.one(),
            label: Some(ring.label().to_string()),
        },
        instance: Instance::Ring(std::sync::Arc::clone(ring)),
    };
    check_statement(StatementId::Division, &entry)
}
