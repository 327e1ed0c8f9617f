use thiserror::Error;

use crate::integrate::Trajectory;

pub type Result<T> = std::result::Result<T, GkError>;

#[derive(Debug, Error)]
pub enum GkError {
    #[error("delay must be positive, got tau = {0}")]
    InvalidDelay(f64),

    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(usize),

    #[error("degree {degree} outside the supported range 1..={max}")]
    InvalidDegree { degree: usize, max: usize },

    #[error("theta = {theta} lies outside [-{tau}, 0]")]
    OutOfDomain { theta: f64, tau: f64 },

    #[error("step h = {h} does not divide tau = {tau}")]
    IncommensurateStep { h: f64, tau: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state blew up at t = {time}")]
    BlowUp {
        time: f64,
        /// Trajectory up to (and including) the last finite state.
        partial: Box<Trajectory>,
    },

    #[error("time grids differ: {0}")]
    GridMismatch(String),

    #[error("unknown model `{name}`; available: {}", available.join(", "))]
    UnknownModel {
        name: String,
        available: Vec<String>,
    },

    #[error("model file: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(GkError::InvalidDelay(tau))
    }
}
