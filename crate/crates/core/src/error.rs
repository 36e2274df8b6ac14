use thiserror::Error;

/// Errors produced anywhere in the simulation stack.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The smallest Cholesky pivot fell below the relative threshold; the
    /// Gram matrix (and hence the effective channel) is rank deficient.
    #[error("singular matrix: pivot {pivot:.3e} below threshold {threshold:.3e}")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0}")]
    Config(String),

    #[error("{singular} of {trials} trials were singular for scheme {scheme} (limit is 1%)")]
    SingularTrials {
        scheme: String,
        singular: usize,
        trials: usize,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by invalid user input rather than runtime failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::Dimension(_) | Error::Domain(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
