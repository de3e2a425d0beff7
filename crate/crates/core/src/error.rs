use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1} variables")]
    DimensionMismatch(usize, usize),
    #[error("objects live on different charts")]
    ChartMismatch,
    #[error("objects live in different graded contexts")]
    ContextMismatch,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("degree {degree} outside the allowed range {min}..={max}")]
    DegreeOutOfRange { degree: i64, min: i64, max: i64 },
    #[error("variable index {index} out of range for a chart of dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("generators are not isotropic: pairing of generators {0} and {1} is nonzero")]
    NotIsotropic(usize, usize),
    #[error("expected {expected} arguments, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("form is not admissible for the given witness; defect {defect}")]
    NotAdmissible { defect: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
}
