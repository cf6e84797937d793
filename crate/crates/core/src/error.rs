use thiserror::Error;

/// Errors raised by the numerical kernels, the channel model and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    /// The result is not representable as a finite `f64`.
    #[error("range error in {func}: {msg}")]
    Range { func: &'static str, msg: String },

    /// A series or quadrature did not meet its tolerance within the configured budget.
    /// `partial` carries the best value reached.
    #[error("{what} did not converge after {terms} terms (partial value {partial:e})")]
    Convergence {
        what: &'static str,
        partial: f64,
        terms: usize,
    },

    /// Cancellation in an alternating series destroyed the accuracy of the result.
    #[error("{what} lost its accuracy to cancellation (value {value:e}, rounding bound {err_bound:e}); use the quadrature or high-SNR forms instead")]
    Precision {
        what: &'static str,
        value: f64,
        err_bound: f64,
    },

    /// Invalid configuration value.
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            func,
            msg: msg.into(),
        }
    }

    pub(crate) fn range(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Range {
            func,
            msg: msg.into(),
        }
    }

    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::Convergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
