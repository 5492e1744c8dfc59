use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group spec `{0}`")]
    GroupSpec(String),

    #[error("group table validation failed: {0}")]
    GroupTable(String),

    #[error("group of order {order} exceeds the cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },

    #[error("`{0}` is not an exact rational (expected p/q)")]
    InvalidRational(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix of size {rows}x{cols} exceeds the cap of {cap}")]
    SizeCap { rows: usize, cols: usize, cap: usize },

    #[error("input is not Hermitian")]
    NotHermitian,

    #[error("input is not positive: {0}")]
    NotPositive(String),

    #[error("input is not normal: {0}")]
    NotNormal(String),

    #[error("not a unit sphere point: {0}")]
    NotUnitPoint(String),

    #[error("function is not defined at a required point: {0}")]
    MissingPoint(String),

    #[error("degenerate sample: eigenvalue clusters ambiguous after {attempts} attempts")]
    DegenerateSample { attempts: usize },

    #[error("representation check failed: {0}")]
    NotRepresentation(String),

    #[error("ledger too short: {0}")]
    LedgerTooShort(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}
