use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid time step {0} (must be > 0)")]
    InvalidDt(f64),

    #[error("invalid car path id {0} (expected 1 or 2)")]
    InvalidPathId(u32),

    #[error("invalid noise sigma {0} (must be finite and >= 0)")]
    InvalidSigma(f64),

    #[error("invalid window length {0} (must be >= 1)")]
    InvalidWindow(usize),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("innovation covariance is singular")]
    SingularInnovation,

    #[error("Riccati recursion did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("training diverged at iteration {iteration} (loss = {loss})")]
    Divergence { iteration: usize, loss: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("timestamp mismatch at sample {0}")]
    TimestampMismatch(usize),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
