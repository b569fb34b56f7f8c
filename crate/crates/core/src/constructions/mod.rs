//! Structures built from rings and modules: bimodules, trivial extensions,
//! localizations and n-fold products.

mod bimodule;
mod localization;
mod trivial;

pub use bimodule::{
    names as bimodule_axiom_names, verify_bimodule_axioms, BimoduleAnnihilators, BimoduleTables,
    FiniteBimodule,
};
pub use localization::{
    localize_module, localize_ring, multiplicative_subsets, total_quotient, FractionStructure,
    LocalizedModule, LocalizedRing, MAX_FRACTION_PAIRS,
};
pub use trivial::{
    trivial_ext_zero_divisor_check, trivial_extension, TrivialExtension, ZeroDivisorCheck,
};

use crate::error::{AlgebraError, Result};
use crate::module::FiniteModule;

/// `M1 x ... x Mn` by left-nested pairing.
pub fn product_all(factors: &[FiniteModule]) -> Result<FiniteModule> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| AlgebraError::input("empty product"))?;
    rest.iter()
        .try_fold(first.clone(), |acc, m| FiniteModule::product(&acc, m))
}
