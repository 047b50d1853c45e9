use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("braid generator index {index} out of range for rank {rank} (need 1 <= |k| <= {max})", max = rank.saturating_sub(1))]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("form entry ({row},{col}) is {value}; expected {expected} for a unit upper triangular form")]
    NotUnitTriangular {
        row: usize,
        col: usize,
        value: String,
        expected: i32,
    },

    #[error("not a semiorthonormal basis: {0}")]
    NotSemiorthonormal(String),

    #[error("vector {index} is zero")]
    ZeroVector { index: usize },

    #[error("vector is not exceptional: <e,e> = {0}, expected 1")]
    NotExceptional(String),

    #[error("matrix is not an isometry of the form")]
    NotIsometry,

    #[error("matrix is not invertible over the integers")]
    NotUnimodular,

    #[error("generator {index} is not an involution")]
    NotInvolution { index: usize },

    #[error("bases are over different forms")]
    FormMismatch,

    #[error("coxeter letter {letter} out of range for rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },

    #[error("word [{0}] is not a conjugate of a generator (need an odd-length palindrome)")]
    NotAnInvolutionConjugate(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no length-reducing mutation exists for a non-seed tuple (total length {total_length})")]
    NoReducingMutation { total_length: usize },

    #[error("budget `{0}` must be positive")]
    InvalidBudget(&'static str),

    #[error("projective dimension must be non-negative, got {0}")]
    NegativeDimension(i64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
