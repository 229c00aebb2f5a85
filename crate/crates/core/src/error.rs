use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("outcome {b_end} outside [0, {total_pot}]")]
    OutcomeOutOfRange { b_end: u64, total_pot: u64 },

    #[error(
        "quadrature did not reach tolerance {requested:e} on [{a}, {b}]: \
         estimate {estimate}, achieved error bound {achieved:e}"
    )]
    Quadrature {
        a: f64,
        b: f64,
        estimate: f64,
        achieved: f64,
        requested: f64,
    },

    /// Expected loss is zero, so the win/loss ratio is undefined.
    #[error("expected loss vanishes (mu = {mu}, sigma = {sigma}); return ratio is undefined")]
    DegenerateRatio { mu: f64, sigma: f64 },

    #[error("no break-even interest in (0, {i_max}] for mu = {mu}, sigma = {sigma}")]
    NoBreakEven { mu: f64, sigma: f64, i_max: f64 },

    #[error("sweep cell (row {row}, column {col}; mu = {mu}, interest = {interest}): {source}")]
    SweepCell {
        row: usize,
        col: usize,
        mu: f64,
        interest: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("truncated-Gaussian acceptance probability {acceptance:e} is below {minimum:e}")]
    RejectionBudget { acceptance: f64, minimum: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidConfig(_) | Error::OutcomeOutOfRange { .. } => crate::cli::EXIT_USAGE,
            Error::Quadrature { .. } | Error::DegenerateRatio { .. } => crate::cli::EXIT_NUMERICAL,
            Error::SweepCell { source, .. } => source.exit_code(),
            Error::NoBreakEven { .. } => crate::cli::EXIT_NO_BREAK_EVEN,
            Error::RejectionBudget { .. } => crate::cli::EXIT_REJECTION,
            Error::Io { .. } | Error::Csv(_) | Error::Json(_) => crate::cli::EXIT_IO,
        }
    }
}
