use std::fmt;

use num_bigint::BigUint;

/// Errors reported by the library.
///
/// Infeasibility of a search and non-equitability of a partition are *answers*
/// in some places and errors in others; the variants below are only used where
/// the operation cannot produce its documented result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameters violate a structural invariant (e.g. w outside 1..=n-1).
    InvalidParams(String),
    /// An index (rank, eigenspace index, relation index) is out of range.
    OutOfRange(String),
    /// The operation requires the n >= 2w regime and it does not hold.
    RegimeViolation(String),
    /// A desk-scale cap would be exceeded.
    CapExceeded {
        needed: BigUint,
        cap: usize,
    },
    /// Vector/matrix dimensions do not match.
    DimensionMismatch(String),
    /// kw/n is not an integer for the requested two-valued construction.
    DivisibilityViolated(String),
    /// A congruence precondition fails (e.g. n not 1,3 mod 6).
    CongruenceViolated(String),
    /// A partition is not equitable; carries the least witness vertex and its
    /// per-part neighbor counts.
    NotEquitable {
        vertex: usize,
        counts: Vec<usize>,
    },
    /// A vector claimed to be a (quotient) eigenvector is not one.
    NotEigenvector(String),
    /// Partition-based bound requested for a vector with a zero entry.
    ZeroEntry(String),
    /// Two eigenvalues of the graph coincide; eigenspaces cannot be separated
    /// by the nullspace characterization.
    CoincidentEigenvalues(String),
    /// An attaining-class choice is not listed in the certificate.
    InvalidChoice(String),
    /// No zero-free starting eigenvector was found for the randomized search.
    NoZeroFreeStart,
    Io(String),
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(s) => write!(f, "invalid parameters: {s}"),
            Error::OutOfRange(s) => write!(f, "out of range: {s}"),
            Error::RegimeViolation(s) => write!(f, "outside the n >= 2w regime: {s}"),
            Error::CapExceeded { needed, cap } => {
                write!(f, "desk-scale cap exceeded: need {needed} vertices, cap {cap}")
            }
            Error::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            Error::DivisibilityViolated(s) => write!(f, "divisibility violated: {s}"),
            Error::CongruenceViolated(s) => write!(f, "congruence violated: {s}"),
            Error::NotEquitable { vertex, counts } => write!(
                f,
                "partition is not equitable: vertex {vertex} has per-part neighbor counts {counts:?}"
            ),
            Error::NotEigenvector(s) => write!(f, "not an eigenvector: {s}"),
            Error::ZeroEntry(s) => write!(f, "zero entry: {s}"),
            Error::CoincidentEigenvalues(s) => write!(f, "coincident eigenvalues: {s}"),
            Error::InvalidChoice(s) => write!(f, "invalid choice: {s}"),
            Error::NoZeroFreeStart => write!(f, "no zero-free starting eigenvector found"),
            Error::Io(s) => write!(f, "io error: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
