use alloc::boxed::Box;
use core::fmt;

/// Errors surfaced by the computation modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The matrix M of the jet transformation law is numerically singular;
    /// the target chart is not admissible for this jet.
    SingularTransition { cond: f64 },
    /// A chart transition was evaluated outside its declared domain.
    DomainError,
    /// The base block of the velocity matrix is singular in this chart;
    /// the section jet has no submanifold-jet representative here.
    NonRegularInChart,
    /// G ≤ 0 at an evaluation site that takes a fractional power of G.
    NonPositiveG { value: f64 },
    /// The mass matrix (coefficient of the acceleration) is singular.
    SingularMassMatrix,
    /// The constraint residual |G - 1| exceeded the configured abort bound.
    DriftExceeded { tau: f64, drift: f64 },
    /// The reduced Ḡ is non-positive: the state lies outside this chart.
    NonPositiveReducedG { value: f64 },
    /// The velocity Hessian of the reduced Lagrangian is singular.
    SingularReducedHessian,
    /// s·det h ≤ 0: the worldsheet jet is degenerate for this signature.
    DegenerateWorldsheet { det: f64 },
    /// Shape of an input does not match the declared dimensions.
    DimensionMismatch,
    /// An error raised at a specific value of the evolution parameter.
    AtTau { tau: f64, source: Box<Error> },
}

impl Error {
    /// Annotate an error with the τ at which it occurred.
    pub fn at_tau(self, tau: f64) -> Error {
        Error::AtTau {
            tau,
            source: Box::new(self),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SingularTransition { cond } => {
                write!(f, "transition matrix M is singular (cond est {cond:.3e})")
            }
            Error::DomainError => write!(f, "transition evaluated outside its domain"),
            Error::NonRegularInChart => {
                write!(f, "base block of the velocity matrix is singular in this chart")
            }
            Error::NonPositiveG { value } => {
                write!(f, "G = {value:.6e} is not positive at this state")
            }
            Error::SingularMassMatrix => write!(f, "mass matrix is singular"),
            Error::DriftExceeded { tau, drift } => {
                write!(f, "constraint drift |G-1| = {drift:.3e} exceeded bound at tau = {tau}")
            }
            Error::NonPositiveReducedG { value } => {
                write!(f, "reduced G = {value:.6e} is not positive: outside chart")
            }
            Error::SingularReducedHessian => {
                write!(f, "velocity Hessian of the reduced Lagrangian is singular")
            }
            Error::DegenerateWorldsheet { det } => {
                write!(f, "degenerate worldsheet: s*det h = {det:.6e}")
            }
            Error::DimensionMismatch => write!(f, "dimension mismatch"),
            Error::AtTau { tau, source } => write!(f, "at tau = {tau}: {source}"),
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::AtTau { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}
