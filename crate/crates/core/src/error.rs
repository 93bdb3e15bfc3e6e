use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid basis dimension {dim} (need at least {min})")]
    InvalidDimension { dim: usize, min: usize },

    #[error("{name} = {value} is outside its domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("eigensolver did not converge: residual {residual:e}")]
    NumericalFailure { residual: f64 },

    #[error(
        "drive frequency omega = {omega} is within {guard:e} of resonance (|omega² - 1| too small)"
    )]
    Resonance { omega: f64, guard: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("negative-volume estimate did not converge under refinement: {coarse} vs {fine}")]
    Accuracy { coarse: f64, fine: f64 },

    #[error("degenerate least-squares design for model {model}")]
    DegenerateFit { model: &'static str },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed data: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
