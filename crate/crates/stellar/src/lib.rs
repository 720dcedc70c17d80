//! Lower bounds on the stellar rank of single-mode bosonic states from
//! expectation-value and variance witnesses.
//!
//! The crate computes certified threshold sequences by minimizing the least
//! eigenvalue of Gaussian-conjugated witness operators projected onto the
//! first `m + 1` Fock states. A measured witness value strictly below the
//! threshold for rank `m` certifies that the state has stellar rank at least
//! `m + 1`.
//!
//! Module layout:
//! - [`fock`]: exact matrix realizations of ladder monomials, displacement
//!   and parity operators on truncated Fock spaces, plus a brute-force
//!   Gaussian-unitary oracle used for validation.
//! - [`gaussian`]: normal-ordered quadratic forms in ladder operators, their
//!   symbolic squares, and matrix realizations.
//! - [`families`]: the four witness operator families (cubic, GKP, cat,
//!   Fock) and their Gaussian-conjugated realizations.
//! - [`engine`]: grid optimization of projected least eigenvalues into
//!   threshold tables, with truncation-convergence control.
//! - [`certify`]: mapping measured witness values to certified ranks.
//! - [`reference`]: published threshold values used by the reproduction
//!   command and the acceptance suite.

pub mod certify;
pub mod engine;
pub mod error;
pub mod families;
pub mod fock;
pub mod gaussian;
pub mod reference;

pub use certify::{certify, CertificationResult, Scale};
pub use engine::{
    build_table, converge_truncation, lambda_interval, min_eig_projected,
    optimize_expectation_threshold, optimize_variance_threshold, ArgminMeta, OptimizerConfig,
    ThresholdEntry, ThresholdTable, WitnessKind,
};
pub use error::Error;
pub use families::{ParitySign, WitnessFamily};
pub use gaussian::{GaussianParams, QuadraticForm, QuarticCoefficients};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix on a truncated Fock space.
pub type OperatorMatrix = nalgebra::DMatrix<C64>;
