//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input exceeds the supported fixed integer width.
    #[error("integer out of supported range: {0}")]
    Range(String),

    /// A domain-type invariant was violated by the input.
    #[error("validation error: {0}")]
    Validation(String),

    /// Operation is undefined for this input (wrong sign, zero, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An ideal expected to be principal is not; carries the index of its
    /// class in the pinned representative list.
    #[error("ideal is not principal (class index {class_index})")]
    NonPrincipal { class_index: usize },

    /// Iterative estimate did not reach the requested precision.
    #[error("convergence failure: estimate {estimate} with error bound {error_bound}")]
    Convergence { estimate: f64, error_bound: f64 },

    /// A structural constraint of the construction was broken.
    #[error("constraint violation: {0}")]
    Constraint(String),

    /// Hypothesis of a verified statement does not hold for this input.
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    /// Brute-force ceiling exceeded; the caller asked for too large a search.
    #[error("refused: {0}")]
    Refusal(String),
}
