use core::fmt;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Argument outside the mathematical domain of a function (negative or
    /// non-finite argument).
    Domain { what: &'static str, value: f64 },
    /// Bessel order above [`crate::specfun::MAX_ORDER`].
    UnsupportedOrder(u32),
    /// A precondition on a parameter was violated.
    InvalidArgument(&'static str),
    /// `alpha^2` is beyond the range where the state prefactors can be
    /// assembled in log space.
    OverflowGuard { alpha: f64 },
    /// The grid radius is too small for the requested state.
    Truncation { r_max: f64, required: f64 },
    /// Two states live on different grids.
    GridMismatch,
    /// `sin(kz)` is too close to zero for the numerical kernel.
    SingularPlane { theta: f64 },
    /// A density profile has its maximum on the grid boundary.
    FlatProfile,
    /// Rescaling a state would push norm off the end of the grid.
    InterpolationCoverage { lost_fraction: f64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} = {value}"),
            Error::UnsupportedOrder(q) => write!(
                f,
                "unsupported Bessel order {q} (maximum is {})",
                crate::specfun::MAX_ORDER
            ),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::OverflowGuard { alpha } => write!(
                f,
                "overflow guard: alpha^2 = {} exceeds the supported range (700)",
                alpha * alpha
            ),
            Error::Truncation { r_max, required } => write!(
                f,
                "grid truncation: r_max = {r_max} but the state needs r_max >= {required}"
            ),
            Error::GridMismatch => f.write_str("states are sampled on different grids"),
            Error::SingularPlane { theta } => {
                write!(
                    f,
                    "singular propagation plane: theta = {theta} has sin(theta) ~ 0"
                )
            }
            Error::FlatProfile => f.write_str("density maximum lies on the grid boundary"),
            Error::InterpolationCoverage { lost_fraction } => write!(
                f,
                "interpolation coverage: a norm fraction of {lost_fraction:e} would leave the grid"
            ),
        }
    }
}

impl core::error::Error for Error {}
