use thiserror::Error;

/// Errors raised by the synthesis, root-finding and estimation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("prescribed zero #{index} has modulus {modulus} (must be < 1)")]
    ZeroOutsideDisk { index: usize, modulus: f64 },

    #[error("schedule supplies {available} zeros but {requested} were requested")]
    ScheduleTooShort { available: usize, requested: usize },

    #[error("Verblunsky coefficient at n={index} has modulus {modulus} (must be < 1)")]
    VerblunskyBound { index: usize, modulus: f64 },

    #[error("degenerate division at n={index}: |Phi*_n(z)| = {modulus:e}")]
    DegenerateDivision { index: usize, modulus: f64 },

    #[error("residual |Phi_{index}(z_{index})| = {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge {
        index: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("reversed polynomial drifted at n={index}: max coefficient gap {gap:e}")]
    StarDrift { index: usize, gap: f64 },

    #[error("root finder did not converge for degree {degree} after {iterations} iterations (worst residual {worst_residual:e})")]
    NoConvergence {
        degree: usize,
        iterations: usize,
        worst_residual: f64,
    },

    #[error("record too short: need {needed} coefficients, have {available}")]
    InsufficientRecord { needed: usize, available: usize },

    #[error("series terms do not decay over the last {window} indices")]
    NonConvergentTail { window: usize },

    #[error("singular denominator system for n={n}, m={m}")]
    SingularSystem { n: usize, m: usize },

    #[error("decay is not geometric (r^2 = {r_squared:.4})")]
    PoorFit { r_squared: f64 },

    #[error("bracketing failed for theta0 = {theta0}")]
    Bracketing { theta0: f64 },

    #[error("expected {expected} arc zeros inside the disk, retained {retained}")]
    ArcZeroCount { expected: usize, retained: usize },

    #[error("no zero of degree {degree} within angle {window:.3e} of theta0 = {theta0}")]
    NoZeroNearAngle {
        degree: usize,
        theta0: f64,
        window: f64,
    },

    #[error("pole evaluation: {0}")]
    Pole(String),
}

pub type Result<T> = std::result::Result<T, Error>;
