use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("hyperplane normal is the zero vector")]
    ZeroNormal,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("duplicate hyperplane at positions {first} and {second}")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("arrangement has {m} hyperplanes, above the enumeration cap of {cap}")]
    SizeLimit { m: usize, cap: usize },

    #[error("the given flat is not an intersection of hyperplanes of the arrangement")]
    FlatNotInPoset,

    #[error("face {face} is not a face of the cell {cell}")]
    FaceNotOfChamber { face: String, cell: String },

    #[error("sign vector {0} is not a chamber of the arrangement")]
    NotAChamber(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("the chamber contains a line")]
    HasLine,

    #[error("the arrangement is not linear (some offset is nonzero)")]
    NotLinear,

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("no closed form characteristic polynomial for {0}")]
    NoClosedForm(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),

    #[error("statistical check failed: {0}")]
    StatisticalFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
