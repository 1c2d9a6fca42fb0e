use thiserror::Error;

/// Errors shared by the model, solver, flow and measure layers.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("control radius {radius:.4} too small: argmin component {value:.4} on the box edge")]
    ControlRadius { value: f64, radius: f64 },

    #[error("trajectory blow-up at s = {s:.4} (|state| = {norm:.3e})")]
    BlowUp { s: f64, norm: f64 },

    #[error("infeasible jump placement: {0}")]
    Infeasible(String),

    #[error("inconclusive alpha-limit extraction: {0}")]
    Inconclusive(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
