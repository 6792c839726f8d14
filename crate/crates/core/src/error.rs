use thiserror::Error;

/// Errors raised by the geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("argument outside its domain: {0}")]
    Domain(String),

    #[error("singular input: {0}")]
    Singular(String),

    #[error("degenerate immersion: gram determinant {gram:.3e}")]
    DegenerateImmersion { gram: f64 },

    #[error("normal space is not one-dimensional")]
    NormalRank,

    #[error("adapted frame undefined: C = {c}")]
    FrameUndefined { c: f64 },

    #[error("numerical failure: {what} residual {residual:.3e}")]
    NumericalFailure { what: &'static str, residual: f64 },

    #[error("focal point: det D({r}) = {det:.3e}")]
    Focal { r: f64, det: f64, first_focal: Option<f64> },

    #[error("invalid catalog spec: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
