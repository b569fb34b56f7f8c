use std::fmt;
use std::path::PathBuf;

use fusible::spec::SpecError;
use fusible::AlgebraError;

#[derive(Debug)]
pub enum CliError {
    Spec(PathBuf, SpecError),
    Algebra(AlgebraError),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(..) | CliError::Usage(_) => 2,
            CliError::Algebra(e) => match e {
                AlgebraError::Input(_) | AlgebraError::Axioms(_) => 2,
                AlgebraError::Budget { .. } => 3,
                AlgebraError::Consistency { .. } => 1,
            },
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Algebra(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Spec(path, e) => write!(f, "{}:{e}", path.display()),
            CliError::Algebra(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}
