//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A potential violates the Hermitian-symmetry requirement (its values
    /// would not be real), or is otherwise malformed.
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    /// A frequency vector component is out of range or inconsistent with its
    /// declared rational denominator.
    #[error("invalid frequency: {0}")]
    InvalidFrequency(String),

    /// Vector or matrix dimensions do not match the window they are used on.
    #[error("window mismatch: {0}")]
    WindowMismatch(String),

    /// A support box is too small for the requested operation; the hard
    /// cutoff at the window edge would corrupt an identity that is exact on
    /// large enough boxes.
    #[error("margin violation: {0}")]
    MarginViolation(String),

    /// The dense eigensolver failed to converge.
    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    /// Floating-point (or fixed-width integer) precision cannot support the
    /// requested continued-fraction depth.
    #[error("precision exhausted at depth {reached} of requested {requested}: {detail}")]
    PrecisionExhausted {
        requested: usize,
        reached: usize,
        detail: String,
    },

    /// An adaptive quadrature failed to reach its target agreement.
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),

    /// Generic invalid-argument error for precondition failures.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
