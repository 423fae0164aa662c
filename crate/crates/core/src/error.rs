//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A group family was requested with a parameter outside its valid range.
    #[error("invalid group parameter: {0}")]
    InvalidFamily(String),
    /// A K-type label violates the lattice constraints of its family.
    #[error("invalid K-type label: {0}")]
    InvalidLabel(String),
    /// A weight has the wrong length or is not dominant where dominance is required.
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    /// The operation is not defined for this family (for example `SO(2,1)` tensor data).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Hypergeometric parameters that do not give a terminating, well-defined polynomial.
    #[error("invalid hypergeometric parameters: {0}")]
    InvalidHypergeometric(String),
    /// Two K-types that are not ω-related were passed where a related pair is required.
    #[error("K-types are not omega-related: {0}")]
    NotRelated(String),
    /// A finite search window was too small to certify its answer.
    #[error("inconclusive search: {0}")]
    Inconclusive(String),
    /// An internal algorithm produced an impossible intermediate state.
    #[error("algorithm violation: {0}")]
    Algorithm(String),
    /// A product or ratio would divide by zero.
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    /// A matrix is not an element of the identity component of the Lorentz group.
    #[error("not a Lorentz matrix: {0}")]
    NotLorentz(String),
    /// Malformed textual input (labels, rationals, family names).
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;
