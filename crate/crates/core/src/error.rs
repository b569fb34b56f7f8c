use std::fmt;

use thiserror::Error;

/// An axiom that failed on a candidate table, with the first witness found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

/// Result of an exhaustive axiom check: one entry per failing axiom.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failure(&self, axiom: &str) -> Option<&AxiomFailure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }

    pub(crate) fn record(&mut self, axiom: &'static str, witness: Vec<usize>) {
        if self.failure(axiom).is_none() {
            self.failures.push(AxiomFailure { axiom, witness });
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "all axioms hold");
        }
        for (k, fail) in self.failures.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{fail}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("axiom check failed: {0}")]
    Axioms(AxiomReport),
    #[error("budget exceeded: {what} (cap {cap})")]
    Budget { what: String, cap: usize },
    #[error("internal consistency violation: {message} (element {element})")]
    Consistency { message: String, element: usize },
}

impl AlgebraError {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        AlgebraError::Input(msg.into())
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
