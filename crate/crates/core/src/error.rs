use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: {needed} bits required but the configured maximum is {max}")]
    PrecisionExhausted { needed: u64, max: u32 },

    #[error("invalid precision {bits}: must lie in [{min}, {max}]")]
    InvalidPrecision { bits: u32, min: u32, max: u32 },

    #[error("{name} = {value} is out of range [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },

    #[error("coefficient vector must be non-decreasing, got {0:?}")]
    NonMonotone(Vec<u32>),

    #[error("negative input {0} to an n-th root")]
    NegativeInput(String),

    #[error("division by an interval containing zero: {0}")]
    DivisionByZero(String),

    /// The enclosure straddles an integer; refine precision and retry.
    #[error("cannot certify the integer above {0}: interval straddles an integer")]
    Uncertifiable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no codimension qualifies for g = {0} (need g >= 12)")]
    NoQualifyingCodimension(u32),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(name: &'static str, value: u64, min: u64, max: u64) -> Result<()> {
    if value < min || value > max {
        Err(Error::OutOfRange {
            name,
            value,
            min,
            max,
        })
    } else {
        Ok(())
    }
}
