use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {re}+{im}i is outside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("Gamma function pole at {0}")]
    GammaPole(f64),

    #[error("series does not converge: {0}")]
    Convergence(String),

    /// A hypothesis of a criterion or constructor is violated. The message
    /// names the hypothesis.
    #[error("{0}")]
    Hypothesis(String),

    #[error("leading coefficient vanishes; linear case with single root {root}")]
    DegenerateQuadratic { root: f64 },

    #[error("polynomial has {count} zero(s) inside the disk")]
    ZeroInDisk { count: i64 },

    #[error("vanishing denominator at {re}+{im}i")]
    ZeroDenominator { re: f64, im: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
