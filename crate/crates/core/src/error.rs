use alloc::string::String;
use core::fmt;

/// Errors raised by the core computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Conductor `m = 0` was requested.
    ZeroConductor,
    /// Coercing to a common conductor would exceed [`crate::cyclo::MAX_CONDUCTOR`].
    ConductorTooLarge(u64),
    DivisionByZero,
    /// A rational or cyclotomic literal did not parse.
    Parse(String),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    SingularGenerator(usize),
    /// Closure produced more than `cap` elements.
    GroupTooLarge(usize),
    IndexOutOfRange(usize),
    /// A parameter point names a class that is not an admissible bireflection class.
    UnknownClass(usize),
    /// An element named as deformation support is not in the admissible set.
    NotAdmissible(usize),
    /// A runtime assertion on an invariant the mathematics guarantees failed.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroConductor => write!(f, "conductor must be a positive integer"),
            Error::ConductorTooLarge(m) => {
                write!(f, "conductor {m} exceeds the supported maximum")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::SingularGenerator(i) => write!(f, "generator {i} is singular"),
            Error::GroupTooLarge(cap) => write!(
                f,
                "group closure exceeded {cap} elements (group too large or infinite)"
            ),
            Error::IndexOutOfRange(i) => write!(f, "index {i} out of range"),
            Error::UnknownClass(i) => write!(
                f,
                "element {i} is not a representative of an admissible bireflection class"
            ),
            Error::NotAdmissible(i) => {
                write!(f, "element {i} is not an admissible bireflection")
            }
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
