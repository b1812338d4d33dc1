use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be strictly positive, got {value}")]
    NonPositiveRate { name: &'static str, value: f64 },

    #[error("total loss kappa = {kappa} is smaller than both ports 2*kappa_c = {}", 2.0 * kappa_c)]
    PortExceedsTotal { kappa: f64, kappa_c: f64 },

    #[error("qubit decoherence rate gamma must be non-negative, got {0}")]
    NegativeGamma(f64),

    #[error("bad frequency grid: {0}")]
    BadGrid(String),

    #[error("no peak above the noise floor in the sampled window")]
    NoPeaks,

    #[error("half-maximum crossing lies outside the sampled window")]
    HalfMaxOutsideWindow,

    #[error("fit window is degenerate: {0}")]
    DegenerateWindow(String),

    #[error("equal-contribution condition is degenerate: {0}")]
    DegenerateCondition(String),
}
