use thiserror::Error;

/// Errors reported by the eigenvalue and dispersion routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("Bessel order {0} outside supported range |m| <= {max}", max = crate::bessel::MAX_ORDER)]
    OrderOutOfRange(i64),

    #[error("Y_m requires a strictly positive argument, got {0}")]
    NonPositiveArgument(f64),

    #[error("zero index k must be >= 1")]
    ZeroIndexOutOfRange,

    #[error("truncation index M must be >= 1, got {0}")]
    TruncationTooSmall(i64),

    #[error("certificate argument s must lie in (0, 3], got {0}")]
    ArgumentOutOfCertifiedRange(String),

    #[error("invalid cross-section: {0}")]
    InvalidSection(String),

    #[error("cross-section is degenerate at grid spacing {h}: {interior} interior nodes (need >= {min})")]
    DegenerateSection { h: f64, interior: usize, min: usize },

    #[error("linear solver failed to reach tolerance {tol} (residual {residual} after {iters} iterations)")]
    SolverStalled { tol: f64, residual: f64, iters: usize },

    #[error("eigensolver did not converge after {0} iterations")]
    EigenNotConverged(usize),

    #[error("dispersion point requires lambda^2 > ell^2 (lambda = {lambda}, ell = {ell})")]
    EvanescentMode { lambda: f64, ell: f64 },

    #[error("point ({alpha}, {kappa}) too close to the kappa = alpha pole")]
    PoleProximity { alpha: f64, kappa: f64 },

    #[error("invalid mode index: {0}")]
    InvalidMode(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("no sign change found for {what}; scanned brackets [{lo}, {hi}] with step {step}")]
    NoSignChange { what: String, lo: f64, hi: f64, step: f64 },

    #[error("annulus parameters fail the resonance condition: |g| residual {residual} exceeds {max}")]
    ResonanceResidual { residual: f64, max: f64 },

    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),

    #[error("mask parse error: {0}")]
    MaskParse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
