//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A truncated Fock space must have dimension at least one.
    #[error("invalid Fock-space dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    /// Requested projection rank does not fit into the matrix.
    #[error("projection rank m={m} requires dimension >= {needed}, matrix has {dim}")]
    InvalidRank { m: usize, needed: usize, dim: usize },

    /// An input violated a documented contract (e.g. a non-Hermitian
    /// coefficient set where a Hermitian one is required).
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// A floating-point computation left the representable range.
    #[error("numeric overflow: {0}")]
    NumericOverflow(String),

    /// The truncation ladder hit the dimension cap before the optimized
    /// value stabilized. Carries the best value found so far.
    #[error("truncation did not converge below dim cap {dim_cap}; best value {best}")]
    ConvergenceFailure { best: f64, dim_cap: usize },

    /// Witness measurements are expectation values of non-negative
    /// operators and cannot be negative.
    #[error("invalid measurement value {0}: witness values are non-negative")]
    InvalidMeasurement(f64),

    /// The requested certification scale is not usable with the table.
    #[error("scale mismatch: {0}")]
    ScaleMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
