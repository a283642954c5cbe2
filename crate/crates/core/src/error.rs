use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the domain of a numerical routine (e.g. non-finite).
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition or postcondition of a numerical routine
    /// did not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("numerical rank error: 1 + rho*lambda = {value} is not positive")]
    NumericalRank { value: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("operation requires gain mode {required}, configuration uses {actual}")]
    Mode {
        required: &'static str,
        actual: &'static str,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    /// True for errors that come from bad input rather than from the
    /// numerics. The CLI maps these to exit code 1 and the rest to 2.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::Mode { .. }
                | Error::Io { .. }
                | Error::Json { .. }
                | Error::LengthMismatch { .. }
        )
    }
}
