use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("free group image grew past {limit} letters")]
    ImageTooLarge { limit: usize },

    #[error("growth estimate did not converge after {iterations} iterations (last estimate {estimate})")]
    GrowthNonConvergence { iterations: usize, estimate: f64 },

    #[error("polynomial has no real root above 0")]
    NoPositiveRoot,

    #[error("composition {0} gives a periodic braid, there is no F polynomial")]
    PeriodicBraid(String),

    #[error("bodies {first} and {second} nearly collide at t = {time:.6} (distance {distance:.3e})")]
    Collision {
        time: f64,
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error("solver did not converge after {iterations} iterations (gradient norm {gradient_norm:.3e})")]
    SolverNonConvergence { iterations: usize, gradient_norm: f64 },

    #[error("ambiguous crossing near t = {time:.9}: {reason}")]
    AmbiguousCrossing { time: f64, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
