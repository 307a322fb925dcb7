use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("condition infeasible: {0}")]
    Infeasible(String),
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Stable machine-readable kind, used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidModel(_) => "invalid-model",
            Error::Domain(_) => "domain",
            Error::Infeasible(_) => "infeasible",
            Error::Integration(_) => "integration",
            Error::Inconclusive(_) => "inconclusive",
            Error::Numerical(_) => "numerical",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
