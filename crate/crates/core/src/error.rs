use thiserror::Error;

use crate::ir::Span;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("register layout must contain at least one mode")]
    EmptyLayout,

    #[error("invalid mode: {0}")]
    InvalidMode(String),

    #[error("capacity exceeded: state needs {required} bytes but the ceiling is {allowed} bytes")]
    Capacity { required: u128, allowed: u128 },

    #[error("dimension overflow while computing {0}")]
    Overflow(&'static str),

    #[error("coordinate {value} out of range for mode {mode}")]
    Index { mode: usize, value: i64 },

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("operator targets mismatch: {0}")]
    TargetMismatch(String),

    #[error("operator is not unitary (residual {0:e})")]
    NotUnitary(f64),

    #[error("expression is not Hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("term acts on {0} modes; at most 3 are supported")]
    UnsupportedTerm(usize),

    #[error("measurement branch has zero norm")]
    ZeroNormBranch,

    #[error("homodyne grid misses {0:e} of the wavefunction mass")]
    GridUnderflow(f64),

    #[error("cutoff {cutoff} too small: {detail}")]
    InsufficientCutoff { cutoff: usize, detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0}")]
    Exhausted(String),

    #[error("{line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },

    #[error("circuit failed validation with {} error(s)", .0.len())]
    Validation(Vec<crate::ir::Diagnostic>),
}

impl Error {
    pub(crate) fn parse(span: Span, message: impl Into<String>) -> Self {
        Error::Parse { line: span.line, col: span.col, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
