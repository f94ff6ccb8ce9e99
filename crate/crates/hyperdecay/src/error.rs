//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("non-stationary model: AR root modulus {modulus} within tolerance of the unit circle")]
    NonStationary { modulus: f64 },

    #[error("non-invertible model: MA root modulus {modulus} within tolerance of the unit circle")]
    NonInvertible { modulus: f64 },

    #[error("degenerate memory parameter: {0}")]
    DegenerateMemory(String),

    #[error("operation not supported: {0}")]
    Unsupported(String),

    #[error("autocovariance sequence not positive definite at lag {lag}")]
    NotPositiveDefinite { lag: usize },

    #[error("insufficient lags: need 0..={needed}, have 0..={available}")]
    InsufficientLags { needed: usize, available: usize },

    #[error("values change sign or vanish inside window [{lo}, {hi}]")]
    MixedSigns { lo: usize, hi: usize },

    #[error("window too short: {len} points, need at least 2")]
    WindowTooShort { len: usize },

    #[error("requested tolerance unachievable: {0}")]
    ToleranceUnachievable(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("raw autocovariance input needs an explicit innovation variance")]
    MissingInnovationVariance,

    #[error("empty data")]
    EmptyData,

    #[error("lag {lag} too large for data of length {len}")]
    LagTooLarge { lag: usize, len: usize },

    #[error("method cap exceeded: n = {n}, cap = {cap}")]
    MethodCapExceeded { n: usize, cap: usize },
}

impl Error {
    /// Stable machine-readable code, one per variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ParameterOutOfRange(_) => "ParameterOutOfRange",
            Error::NonStationary { .. } => "NonStationary",
            Error::NonInvertible { .. } => "NonInvertible",
            Error::DegenerateMemory(_) => "DegenerateMemory",
            Error::Unsupported(_) => "Unsupported",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::InsufficientLags { .. } => "InsufficientLags",
            Error::MixedSigns { .. } => "MixedSigns",
            Error::WindowTooShort { .. } => "WindowTooShort",
            Error::ToleranceUnachievable(_) => "ToleranceUnachievable",
            Error::DomainError(_) => "DomainError",
            Error::MissingInnovationVariance => "MissingInnovationVariance",
            Error::EmptyData => "EmptyData",
            Error::LagTooLarge { .. } => "LagTooLarge",
            Error::MethodCapExceeded { .. } => "MethodCapExceeded",
        }
    }
}
