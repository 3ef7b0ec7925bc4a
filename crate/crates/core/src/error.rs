use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical parameter violates its invariant; the message names it.
    #[error("{0}")]
    InvalidParams(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("complex width must have a positive real part")]
    NonNormalizable,
    #[error("unsupported spinor state: {0}")]
    UnsupportedState(String),
    #[error("grid too small: boundary density is {ratio:e} of the peak")]
    GridTooSmall { ratio: f64 },
    #[error("density fields are sampled on different grids")]
    GridMismatch,
    #[error("window {lo}..{hi} contains fewer than two grid nodes")]
    EmptyWindow { lo: f64, hi: f64 },
    #[error("non-finite value encountered during propagation at step {step}")]
    NonFinite { step: usize },
    #[error("empty density")]
    EmptyDensity,
}

pub type Result<T> = std::result::Result<T, Error>;
