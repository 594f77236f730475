use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied value violates a precondition (zero denominator,
    /// inconsistent sample counts, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A value exceeds the caps that keep the staged 128-bit modular
    /// arithmetic exact. We refuse rather than wrap around silently.
    #[error("{what} = {value} exceeds the supported range (max {max})")]
    RangeExceeded {
        what: &'static str,
        value: u128,
        max: u128,
    },

    /// The input is required to be a product of exactly two primes.
    #[error("{0} is not a semiprime")]
    NotSemiprime(u64),

    /// An internal search or evaluation failed to produce a result.
    #[error("computation failed: {0}")]
    Computation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
