use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division left a nonzero remainder")]
    NonzeroRemainder,

    #[error("quotient is not a polynomial: {0}")]
    NotPolynomial(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("coefficient {index} is negative")]
    NegativeCoefficient { index: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("distribution has zero variance")]
    ZeroVariance,

    #[error("Bernoulli table holds B_0..B_{have}, need B_{need}")]
    TableTooShort { have: usize, need: usize },

    #[error("moment generating function overflows f64 (log value {0})")]
    Overflow(f64),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that reflect the mathematics of the input rather than
    /// a malformed request.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NonzeroRemainder
                | Error::NotPolynomial(_)
                | Error::NegativeCoefficient { .. }
                | Error::ZeroVariance
                | Error::Overflow(_)
        )
    }
}
