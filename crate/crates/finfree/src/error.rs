use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An enumeration or combinatorial sum was requested beyond its supported size.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// Operands disagree on a structural dimension (ground-set size, degree, ...).
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Truncated series operands carry incompatible or insufficient order.
    #[error("series order underflow: {0}")]
    Order(String),

    /// A lattice operation was called on an incomparable pair.
    #[error("not comparable: {0}")]
    NotComparable(String),

    /// A partition that must be non-crossing is not.
    #[error("partition is not non-crossing: {0}")]
    NotNonCrossing(String),

    /// Division by a series or scalar with no invertible leading term.
    #[error("singular operand: {0}")]
    Singular(String),

    /// Invalid argument value (empty input, zero dilation, s >= d, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Malformed serialized data.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
