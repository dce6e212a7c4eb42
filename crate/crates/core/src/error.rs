use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes shared by every kernel in the crate.
///
/// The first three variants are mathematical rejections of the input; the last
/// two are numerical failures of an iterative method.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A vector or generator had the wrong length.
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    /// The input lacks the structure an operation requires.
    Structure(String),
    /// The associated Hankel matrix has an eigenvalue below `-tol * |H|`.
    NotStrong { eigenvalue: f64 },
    /// An iteration hit its cap before meeting its tolerance.
    NonConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },
    /// A numerical postcondition failed (complex roots, near-singular system, ...).
    Numeric(String),
}

impl Error {
    /// True for rejections of the input rather than numerical failures.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            Error::Dimension { .. } | Error::Structure(_) | Error::NotStrong { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension {
                what,
                expected,
                found,
            } => write!(f, "{what}: expected length {expected}, found {found}"),
            Error::Structure(msg) => write!(f, "{msg}"),
            Error::NotStrong { eigenvalue } => write!(
                f,
                "not a strong Hankel tensor: associated Hankel matrix has eigenvalue {eigenvalue:e}"
            ),
            Error::NonConvergence {
                what,
                iterations,
                residual,
            } => write!(
                f,
                "{what} did not converge after {iterations} iterations (residual {residual:e})"
            ),
            Error::Numeric(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}
