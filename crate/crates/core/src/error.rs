//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("unsupported constraint kind for {op}: {kind}")]
    UnsupportedKind { op: &'static str, kind: String },

    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("non-finite entries in {0}")]
    NonFinite(&'static str),

    #[error("eigendecomposition failed to converge")]
    EigenFailure,

    #[error("projected cut is numerically zero (degenerate cut)")]
    DegenerateCut,

    #[error("ellipsoid shape matrix lost positive definiteness")]
    ShapeCollapse,

    #[error("no feasible iterate was visited by the solver")]
    NoFeasibleIterate,

    #[error("filter exceeded the iteration cap of {0} rounds")]
    FilterIterationCap(usize),

    #[error("all filter scores are zero while the spectral norm is above threshold")]
    DegenerateTau,

    #[error("sample size {0} too large for the exhaustive subset test (max {1})")]
    SampleTooLarge(usize, usize),

    #[error("calibration response is not monotone in the constant")]
    NonMonotoneCalibration,

    #[error("invalid configuration: field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    #[error("width profile is required but missing from the config")]
    MissingProfile,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}
