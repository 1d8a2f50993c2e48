use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A quadrature rule was built for different parameters than the expansion.
    #[error("parameter mismatch: rule built for (λ={rule_lambda}, μ={rule_mu}), expansion uses (λ={lambda}, μ={mu})")]
    Mismatch {
        lambda: f64,
        mu: f64,
        rule_lambda: f64,
        rule_mu: f64,
    },
    #[error("insufficient data: need at least {needed} entries, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
