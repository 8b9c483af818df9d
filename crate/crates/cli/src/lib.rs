//! Library half of the `kinkcharge` binary: parameter handling, command
//! execution, and output formatting, kept separate from `main` so the
//! pieces stay unit-testable.

pub mod commands;
pub mod config;
pub mod output;
pub mod sweep;

use kinkcharge::continuum::ContinuumError;
use kinkcharge::dimer::DimerError;
use kinkcharge::fock::FockError;
use kinkcharge::lattice::LatticeError;

/// Process-level error classification.
///
/// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
/// 4 symmetry or invariant violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numerical(_) => "numerical",
            CliError::Invariant(_) => "invariant",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) | CliError::Invariant(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} error: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<LatticeError> for CliError {
    fn from(err: LatticeError) -> CliError {
        use LatticeError::*;
        match err {
            Eigen(_) | ResidualTooLarge { .. } => CliError::Numerical(err.to_string()),
            SymmetryViolation { .. } | IndexMismatch { .. } => {
                CliError::Invariant(err.to_string())
            }
            _ => CliError::Config(err.to_string()),
        }
    }
}

impl From<DimerError> for CliError {
    fn from(err: DimerError) -> CliError {
        CliError::Config(err.to_string())
    }
}

impl From<FockError> for CliError {
    fn from(err: FockError) -> CliError {
        match err {
            FockError::AlgebraViolation { .. } => CliError::Invariant(err.to_string()),
            _ => CliError::Config(err.to_string()),
        }
    }
}

impl From<ContinuumError> for CliError {
    fn from(err: ContinuumError) -> CliError {
        match err {
            ContinuumError::GridTooCoarse { .. } | ContinuumError::NonNormalizable => {
                CliError::Numerical(err.to_string())
            }
            _ => CliError::Config(err.to_string()),
        }
    }
}
