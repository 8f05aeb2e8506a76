use thiserror::Error;

/// Errors produced by the solver, the operators and the audit tooling.
#[derive(Debug, Error)]
pub enum WaveError {
    #[error("input error: {0}")]
    Input(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("kernel singularity: s = {0} is a multiple of 2π")]
    Singularity(f64),

    #[error("bifurcation not found: {reason}")]
    BifurcationNotFound { reason: String, scan: Vec<(f64, f64)> },

    #[error("newton iteration diverged after {iterations} iterations (residual {residual:e})")]
    Divergence { iterations: usize, residual: f64 },

    #[error("admissibility lost: {0}")]
    Degeneracy(String),

    #[error("wrong route: {0}")]
    WrongRoute(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, WaveError>;
