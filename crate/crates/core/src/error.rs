use thiserror::Error;

pub type Result<T, E = EjaError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EjaError {
    /// Malformed construction: bad sizes, empty factor lists, mismatched tags.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("algebra mismatch: expected {expected}, found {found}")]
    AlgebraMismatch { expected: String, found: String },

    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical error: {0}")]
    Numerical(String),
}

impl EjaError {
    /// Short stable name, used by the command-line tools.
    pub fn name(&self) -> &'static str {
        match self {
            EjaError::Structural(_) => "structural_error",
            EjaError::AlgebraMismatch { .. } => "algebra_mismatch",
            EjaError::Domain(_) => "domain_error",
            EjaError::Numerical(_) => "numerical_error",
        }
    }
}
