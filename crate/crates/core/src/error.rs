use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("zero denominator in {0}")]
    ZeroDenominator(String),

    #[error("singular matrix: basis change is not invertible")]
    SingularMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("table is not adapted: entry c[{i}][{j}][{k}] is {found}, expected {expected}")]
    NotAdapted {
        i: usize,
        j: usize,
        k: usize,
        found: String,
        expected: String,
    },

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("scale parameter must be nonzero")]
    ZeroScale,

    #[error("invalid parameter vector: {0}")]
    InvalidParams(String),

    #[error("dimension {0} is not supported here (supported: {1})")]
    UnsupportedDim(usize, &'static str),

    #[error("parameters lie in no listed subset of SLeib{0}")]
    Uncovered(usize),

    #[error("no subset named `{name}` in dimension {dim}")]
    UnknownSubset { dim: usize, name: String },

    #[error("signature of {family} is not affine in λ; no rational inversion map")]
    NoRationalInverse { family: String },

    #[error("could not sample a member of {label} within {attempts} attempts")]
    SubsetEmpty { label: String, attempts: usize },
}
