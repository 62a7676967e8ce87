use crate::interval::Interval;
use num_rational::BigRational;
use thiserror::Error;

/// Errors shared across the whole toolkit.
///
/// Resource-style errors carry the best certified data obtained before the
/// budget ran out, so callers can degrade instead of discarding work.
#[derive(Debug, Error)]
pub enum Error {
    /// A finite continued fraction ran out of partial quotients. The number
    /// is rational and `value` is its exact value (the last convergent).
    #[error("continued fraction is finite; exact value {value}")]
    Exhausted { value: BigRational },

    /// A refinement or enumeration budget was exceeded. `best` is the best
    /// certified enclosure found so far, when one exists.
    #[error("resource budget exceeded: {what}")]
    Budget {
        what: String,
        best: Option<Interval>,
    },

    #[error("degree {degree} not supported: {what}")]
    UnsupportedDegree { degree: usize, what: String },

    #[error("polynomial has no real root")]
    NoRealRoots,

    #[error("no witness found: {0}")]
    NoWitness(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("estimates are incompatible: {0}")]
    IncompatibleEstimates(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
