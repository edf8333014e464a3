use alloc::string::String;

/// Every failure the toolkit can report.
///
/// Variants are grouped by the layer that raises them. [`Error::code`] gives
/// the stable identifier used in structured (JSON) error output.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    // scalar and polynomial layer
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("malformed literal: {0}")]
    Parse(String),
    #[error("{0} is not a prime below 2^31")]
    InvalidModulus(u64),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree zero (or is zero)")]
    ZeroDegree,
    #[error("polynomial degree does not match the matrix dimension")]
    DegreeMismatch,

    // matrix layer
    #[error("matrix dimensions do not conform")]
    DimensionMismatch,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix dimension {dim} exceeds the cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is derogatory (minimal polynomial has lower degree than the dimension)")]
    Derogatory,
    #[error("no cyclic vector found by the bounded search")]
    CyclicSearchExhausted,

    // forge
    #[error("trace of the target polynomial differs from the trace of the matrix")]
    TraceMismatch,
    #[error("lower-right block is not invertible")]
    NotInvertible,
    #[error("k = {k} is not smaller than n - k = {}; use the boundary search when n = 2k", .n - .k)]
    EqualSplitUnsupported { n: usize, k: usize },
    #[error("matrix is not of the block form diag(0_k, A22)")]
    BadBlockShape,
    #[error("unsupported shape")]
    BadShape,
    #[error("parameter indices do not match the domain {{1..k}} x {{k+1..n-k+1}}")]
    IndexDomainMismatch,
    #[error("unsupported dimension")]
    BadDimension,
    #[error("internal verification failed: {0}")]
    InternalVerificationFailed(&'static str),

    // decompose
    #[error("field has too few elements for the requested distinct eigenvalues")]
    FieldTooSmall,
    #[error("{k} zero rows cannot be absorbed by companion blocks with total capacity {capacity}")]
    GroupingInfeasible { k: usize, capacity: usize },
    #[error("matrix trace is not zero")]
    NonzeroTrace,
    #[error("dimension too small for this decomposition")]
    DimensionTooSmall,

    // boundary
    #[error("exhaustive search needs a finite field")]
    UnsupportedInfiniteField,
    #[error("target polynomial has zero constant term")]
    NonInvertibleTarget,
    #[error("search space of {candidates} candidates exceeds the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u64 },
}

impl Error {
    /// Stable identifier for structured output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::Parse(_) => "ParseError",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::NotMonic => "NotMonic",
            Error::ZeroDegree => "ZeroDegree",
            Error::DegreeMismatch => "DegreeMismatch",
            Error::DimensionMismatch => "DimensionMismatch",
            Error::NotSquare => "NotSquare",
            Error::DimensionTooLarge { .. } => "DimensionTooLarge",
            Error::SingularMatrix => "SingularMatrix",
            Error::Derogatory => "Derogatory",
            Error::CyclicSearchExhausted => "CyclicSearchExhausted",
            Error::TraceMismatch => "TraceMismatch",
            Error::NotInvertible => "NotInvertible",
            Error::EqualSplitUnsupported { .. } => "EqualSplitUnsupported",
            Error::BadBlockShape => "BadBlockShape",
            Error::BadShape => "BadShape",
            Error::IndexDomainMismatch => "IndexDomainMismatch",
            Error::BadDimension => "BadDimension",
            Error::InternalVerificationFailed(_) => "InternalVerificationFailed",
            Error::FieldTooSmall => "FieldTooSmall",
            Error::GroupingInfeasible { .. } => "GroupingInfeasible",
            Error::NonzeroTrace => "NonzeroTrace",
            Error::DimensionTooSmall => "DimensionTooSmall",
            Error::UnsupportedInfiniteField => "UnsupportedInfiniteField",
            Error::NonInvertibleTarget => "NonInvertibleTarget",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
