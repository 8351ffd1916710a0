//! Error kinds shared by every module of the crate.

use core::fmt;

/// Library-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the geometric and numerical operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation outside the coordinate domain `{r > r_min}` (or a
    /// non-positive conformal factor where positivity is required).
    Domain { what: &'static str, value: f64 },
    /// Tabulated profile queried outside its sample range; extrapolation is
    /// forbidden.
    Interpolation { r: f64, lo: f64, hi: f64 },
    /// An extrapolated quantity failed its self-consistency check.
    Convergence { what: &'static str, change: f64, tol: f64 },
    /// Adaptive quadrature exhausted its refinement budget before reaching
    /// the requested tolerance.
    Quadrature { what: &'static str, error_estimate: f64 },
    /// The profile does not resolve a regular singularity: the one-sided
    /// boundary derivative of φ is zero or divergent.
    NotRegular { dphi: f64 },
    /// Two quantities that must agree by construction do not.
    Mismatch { what: &'static str, expected: f64, got: f64 },
    /// Root bracketing on the monotone area envelope failed.
    Envelope { what: &'static str, level: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => {
                write!(f, "domain error: {what} (offending value {value:e})")
            }
            Error::Interpolation { r, lo, hi } => {
                write!(f, "interpolation error: r = {r:e} outside table [{lo:e}, {hi:e}]")
            }
            Error::Convergence { what, change, tol } => {
                write!(f, "convergence error: {what} still changing by {change:e} (tol {tol:e})")
            }
            Error::Quadrature { what, error_estimate } => {
                write!(f, "quadrature error: {what} stalled at error estimate {error_estimate:e}")
            }
            Error::NotRegular { dphi } => {
                write!(f, "not a regular singularity: boundary dφ/dr = {dphi:e}")
            }
            Error::Mismatch { what, expected, got } => {
                write!(f, "mismatch: {what} expected {expected:e}, got {got:e}")
            }
            Error::Envelope { what, level } => {
                write!(f, "envelope error: {what} at area level {level:e}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
