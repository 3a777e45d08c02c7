//! Crate-wide error type and exit-code mapping.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    GammaPole(f64),

    #[error("Mittag-Leffler argument |u| = {modulus} exceeds the series domain |u| <= {max}")]
    MittagLefflerDomain { modulus: f64, max: f64 },

    #[error("Mittag-Leffler series still growing after {terms} terms (|u| = {modulus})")]
    MittagLefflerDiverged { terms: usize, modulus: f64 },

    #[error("fractional order {0} outside (0, 1]")]
    InvalidFracOrder(f64),

    #[error("fractional derivative requires 0 < alpha < 1, got {0}")]
    FracDerivativeOrder(f64),

    #[error("strict power branch requires a non-negative base, got {0}")]
    StrictNegativeBase(f64),

    #[error("sampled function needs at least {min} points, got {got}")]
    GridTooCoarse { min: usize, got: usize },

    #[error("sampled abscissae must be uniform and start at 0 (got x0 = {0})")]
    BadAbscissae(f64),

    #[error("density matrix violates {what}: residual {residual:.3e} > {tolerance:.3e}")]
    DensityInvariant {
        what: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("dephasing parameters invalid: {0}")]
    BadDephasingParams(String),

    #[error("spatial grid invalid: {0}")]
    BadGrid(String),

    #[error("basis construction failed: {0}")]
    BadBasis(String),

    #[error("density negative beyond tolerance at x = {x}: n = {value:.3e}")]
    NegativeDensity { x: f64, value: f64 },

    #[error("density underflow at x = {x}: n = {n:.3e} with non-negligible flux {flux:.3e}")]
    DensityUnderflow { x: f64, n: f64, flux: f64 },

    #[error("phase gauge mismatch: theta(x_min) = {0:.3e}, expected 0")]
    GaugeMismatch(f64),

    #[error("fields defined on different grids or times")]
    GridMismatch,

    #[error("no grid point satisfies the evaluation window n > {0:.1e}")]
    EmptyWindow(f64),

    #[error(
        "unrepairable singularity: {len} consecutive non-finite points near x = {x:.4} \
         (alpha = {alpha}, max repairable run = {max_run})"
    )]
    UnrepairableSingularity {
        alpha: f64,
        x: f64,
        len: usize,
        max_run: usize,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for config problems, 3 for
    /// unrepairable singularities, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::UnrepairableSingularity { .. } => 3,
            _ => 1,
        }
    }
}
