use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Stable machine-readable error codes, used verbatim in CLI reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ErrorCode {
    InvalidGenus,
    UnresolvedDegree,
    DimensionMismatch,
    Parse,
    MissingSpin,
    Bound,
    Precondition,
    UnresolvedAction,
    Type,
    Budget,
    Unsupported,
    NoParameterization,
    Contradiction,
    Parity,
    InvalidStructure,
    UnrecognizedShape,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::InvalidGenus => "invalid-genus",
            ErrorCode::UnresolvedDegree => "unresolved-degree",
            ErrorCode::DimensionMismatch => "dimension-mismatch",
            ErrorCode::Parse => "parse",
            ErrorCode::MissingSpin => "missing-spin",
            ErrorCode::Bound => "bound",
            ErrorCode::Precondition => "precondition",
            ErrorCode::UnresolvedAction => "unresolved-action",
            ErrorCode::Type => "type",
            ErrorCode::Budget => "budget-exceeded",
            ErrorCode::Unsupported => "unsupported",
            ErrorCode::NoParameterization => "no-parameterization",
            ErrorCode::Contradiction => "contradiction",
            ErrorCode::Parity => "parity-violation",
            ErrorCode::InvalidStructure => "invalid-structure",
            ErrorCode::UnrecognizedShape => "unrecognized-shape",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidGenus(u32),
    UnresolvedDegree(String),
    DimensionMismatch { left: u32, right: u32 },
    Parse(String),
    MissingSpin,
    Bound { what: &'static str, value: i64, min: i64, max: i64 },
    Precondition(String),
    UnresolvedAction(String),
    Type(String),
    Budget { needed: u64, budget: u64 },
    Unsupported(String),
    NoParameterization(String),
    Contradiction(String),
    Parity { line_degree: i64, label: i64 },
    InvalidStructure(String),
    UnrecognizedShape,
}

impl Error {
    pub fn code(&self) -> ErrorCode {
        match self {
            Error::InvalidGenus(_) => ErrorCode::InvalidGenus,
            Error::UnresolvedDegree(_) => ErrorCode::UnresolvedDegree,
            Error::DimensionMismatch { .. } => ErrorCode::DimensionMismatch,
            Error::Parse(_) => ErrorCode::Parse,
            Error::MissingSpin => ErrorCode::MissingSpin,
            Error::Bound { .. } => ErrorCode::Bound,
            Error::Precondition(_) => ErrorCode::Precondition,
            Error::UnresolvedAction(_) => ErrorCode::UnresolvedAction,
            Error::Type(_) => ErrorCode::Type,
            Error::Budget { .. } => ErrorCode::Budget,
            Error::Unsupported(_) => ErrorCode::Unsupported,
            Error::NoParameterization(_) => ErrorCode::NoParameterization,
            Error::Contradiction(_) => ErrorCode::Contradiction,
            Error::Parity { .. } => ErrorCode::Parity,
            Error::InvalidStructure(_) => ErrorCode::InvalidStructure,
            Error::UnrecognizedShape => ErrorCode::UnrecognizedShape,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGenus(g) => write!(f, "genus must be at least 2, got {g}"),
            Error::UnresolvedDegree(s) => write!(f, "no degree declared for symbol `{s}`"),
            Error::DimensionMismatch { left, right } => {
                write!(f, "classes live on surfaces of different genus ({left} vs {right})")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::MissingSpin => write!(f, "even rank requires a choice of square root of K"),
            Error::Bound { what, value, min, max } => {
                write!(f, "{what} = {value} outside the allowed range [{min}, {max}]")
            }
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::UnresolvedAction(s) => write!(f, "involution action not declared for `{s}`"),
            Error::Type(msg) => write!(f, "wrong object type: {msg}"),
            Error::Budget { needed, budget } => {
                write!(f, "enumeration needs {needed} checks, budget is {budget}")
            }
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::NoParameterization(msg) => write!(f, "no vector-bundle parameterization: {msg}"),
            Error::Contradiction(msg) => write!(f, "contradiction: {msg}"),
            Error::Parity { line_degree, label } => write!(
                f,
                "destabilizing line of degree {line_degree} has the wrong parity for label d = {label}"
            ),
            Error::InvalidStructure(msg) => write!(f, "invalid Higgs bundle: {msg}"),
            Error::UnrecognizedShape => write!(
                f,
                "object is not a recognized family; pass the summand-generated flag to check it anyway"
            ),
        }
    }
}

impl core::error::Error for Error {}
