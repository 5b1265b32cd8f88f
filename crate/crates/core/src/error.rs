use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported dimension {0}: only planar domains can be rasterized")]
    UnsupportedDimension(usize),

    #[error("grid too coarse: no lattice node lies strictly inside the domain at h = {h}")]
    GridTooCoarse { h: f64 },

    #[error("field does not match grid ({field} values, grid has {grid} nodes)")]
    FieldMismatch { field: usize, grid: usize },

    #[error("field is not strictly positive at interior node {node}")]
    NonPositiveField { node: usize },

    #[error("inner solver stalled after {iters} iterations (residual {residual:.3e}); last bracket [{mu_low}, {mu_high}]")]
    InnerStalled {
        iters: usize,
        residual: f64,
        mu_low: f64,
        mu_high: f64,
    },

    #[error("bracket not closed after {outer} outer iterations; last bracket [{mu_low}, {mu_high}]")]
    BracketNotClosed {
        outer: usize,
        mu_low: f64,
        mu_high: f64,
    },

    #[error("constraint normalization failed: {0}")]
    Constraint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of the numerical solver (as opposed to bad input).
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::GridTooCoarse { .. } | Error::InnerStalled { .. } | Error::BracketNotClosed { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
