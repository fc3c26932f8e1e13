use core::fmt;

/// Errors raised by the model, dynamics and engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A dimension was zero.
    ZeroDimension(&'static str),
    /// A basis index outside `0..dim`.
    IndexOutOfRange { index: usize, dim: usize },
    /// Two objects that must share a dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// A state that should be normalized is not.
    NotNormalized { norm: f64 },
    /// Coupling strength negative or not finite.
    InvalidCoupling(f64),
    /// An experiment configuration that violates its invariants.
    InvalidConfig(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDimension(what) => write!(f, "dimension `{what}` must be at least 1"),
            Error::IndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} out of range for dimension {dim}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotNormalized { norm } => write!(f, "state norm {norm} differs from 1"),
            Error::InvalidCoupling(l) => write!(f, "coupling strength {l} must be finite and >= 0"),
            Error::InvalidConfig(why) => write!(f, "invalid experiment configuration: {why}"),
        }
    }
}

impl core::error::Error for Error {}
