use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis mismatch: operands live over different spaces")]
    BasisMismatch,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("expected bidegree {expected:?} for {what}, found {found:?}")]
    Bidegree {
        what: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("expected degree {expected} for {what}, found {found}")]
    Degree {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("operator has mixed parity")]
    MixedParity,

    #[error("bilinear form is degenerate")]
    DegenerateForm,

    #[error("bilinear form is not invariant: {0}")]
    NotInvariant(String),

    #[error("bivector does not satisfy the Poisson condition")]
    NotPoisson,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
