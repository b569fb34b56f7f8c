//! Finite rings and finite right modules given by operation tables, with
//! decision procedures for torsion, fusibility, regular fusibility,
//! singularity and reducedness, plus an exhaustive statement harness.

pub mod error;
pub mod lattice;
pub mod mask;
pub mod ring;

pub use error::{AlgebraError, AxiomFailure, AxiomReport, Result};
pub use lattice::LatticeBudget;
pub use mask::SubsetMask;
pub use ring::{ElementRoles, FiniteRing, RingPredicates};
pub mod module;
pub use module::{FiniteModule, ModulePredicates, ModuleProfile, TorsionPartition};
pub mod fusibility;
pub use fusibility::{recheck_witness, FusibilityAnalysis, FusibleWitness, ModuleClassification};
pub mod constructions;
pub mod harness;
pub mod reference;
pub mod spec;
