use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("puncture coordinate {coord} invalid for length {n}")]
    InvalidPuncture { coord: usize, n: usize },

    #[error("duplicate puncture coordinate {0}")]
    DuplicatePuncture(usize),

    #[error("k = {k} exceeds the distance-2 range 3m-2 = {max} for m = {m}")]
    PunctureCountOutOfRange { m: usize, k: usize, max: usize },

    #[error("matrix is rank-deficient: rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("CSS consistency violated: X-stabilizer row {row} is not orthogonal to H")]
    CssViolation { row: usize },

    #[error("operation requires k >= 1, got k = 0")]
    NoLogicals,

    #[error("operation requires k = 1, got k = {0}")]
    SingleLogicalOnly(usize),

    #[error("enumeration budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("noise point ({eps1}, {eps2}) lies outside the simplex")]
    OutsideSimplex { eps1: f64, eps2: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("input noise rate {delta} is at or above the distillation threshold")]
    AboveThreshold { delta: f64 },

    #[error("system too large: {0}")]
    TooLarge(String),

    #[error("codespace not preserved by the transversal gate: residual {residual}")]
    CodespaceNotPreserved { residual: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
