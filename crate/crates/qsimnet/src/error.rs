//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by construction, synthesis, simulation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: max deviation {max_deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { max_deviation: f64, tolerance: f64 },

    #[error("state vector is not normalized: squared norm {norm_sq} (tolerance 1e-10)")]
    NotNormalized { norm_sq: f64 },

    #[error("cannot normalize a zero state vector")]
    ZeroState,

    #[error("matrix must be square and at least 1x1")]
    BadShape,

    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("time grid must be finite, strictly increasing and start at 0")]
    BadTimeGrid,

    #[error("real part of the Hamiltonian is numerically singular (condition number {condition:.3e})")]
    SingularRealPart { condition: f64 },

    #[error("commuting route requested but [H1,H2] is nonzero: commutator norm {commutator_norm:.3e}")]
    NoncommutingParts { commutator_norm: f64 },

    #[error("transform matrix is singular or too ill-conditioned to invert")]
    SingularTransform,

    #[error("port capacitances must be positive")]
    InvalidCapacitance,

    #[error("tank frequency strategy produced a nonpositive value {value} at port {port}; pick another strategy")]
    StrategyFailed { port: usize, value: f64 },

    #[error("parallel merge is degenerate: inverse inductances cancel")]
    DegenerateMerge,

    #[error("trace too short for the analytic-signal method: {len} samples, need at least {min}")]
    TraceTooShort { len: usize, min: usize },

    #[error("time grids of the trace set and the quantum trajectory do not match")]
    GridMismatch,

    #[error("adaptive integrator failed to meet tolerances near t = {t}")]
    AdaptiveStepFailed { t: f64 },

    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("netlist parse error on line {line}: {reason}")]
    NetlistParse { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
