use partial_seeds::classify::ClassifyError;
use partial_seeds::io::IoError;
use partial_seeds::surface::SurfaceError;
use partial_seeds::symbolic::SymbolicError;
use partial_seeds::{HomError, SeedError, SemigroupError};
use thiserror::Error;

/// A failed run, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or invalid input. Exit code 2.
    #[error("{0}")]
    Input(String),
    /// An element, state or term cap was hit. Exit code 3.
    #[error("{0}")]
    Cap(String),
    /// A checked statement failed. Exit code 4.
    #[error("theorem violation: {0}")]
    Theorem(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Theorem(_) => 4,
        }
    }
}

impl From<SeedError> for CliError {
    fn from(e: SeedError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<HomError> for CliError {
    fn from(e: HomError) -> Self {
        match e {
            HomError::TooManyVariables(_) | HomError::WeightOverflow(_) => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Hom(h) => h.into(),
            // A stored table that fails shape checks is a bad file, not a failed theorem.
            IoError::Semigroup(SemigroupError::Violation(m)) => CliError::Input(m),
            IoError::Semigroup(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        match e {
            SemigroupError::Hom(h) => h.into(),
            SemigroupError::CapExceeded { .. } | SemigroupError::TooLarge(_) => CliError::Cap(e.to_string()),
            SemigroupError::NotLinearAn => CliError::Input(e.to_string()),
            SemigroupError::NotClosed { .. } | SemigroupError::Violation(_) => CliError::Theorem(e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Hom(h) => h.into(),
            ClassifyError::Semigroup(s) => s.into(),
            ClassifyError::Bijection(m) => CliError::Theorem(m),
        }
    }
}

impl From<SymbolicError> for CliError {
    fn from(e: SymbolicError) -> Self {
        match e {
            SymbolicError::TermCap(_) => CliError::Cap(e.to_string()),
            SymbolicError::Seed(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
