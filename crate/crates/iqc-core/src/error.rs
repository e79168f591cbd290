use core::fmt;

/// Error type shared across the clock modules.
#[derive(Clone, Debug, PartialEq)]
pub enum ClockError {
    /// Construction parameters violate an invariant.
    InvalidParams(&'static str),
    /// Evolution under the truncated propagator lost more norm than allowed.
    LeakageExceeded { defect: f64, threshold: f64 },
    /// The state carries too much coefficient mass near the truncation boundary.
    NotInterior { boundary_mass: f64 },
    /// An expectation value was requested on a (numerically) zero state.
    ZeroState,
    /// A convergence verdict needs at least three truncation sizes.
    InsufficientData,
    /// Operator or state dimensions do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// The clock is disturbed beyond use; no duration can be reported.
    StrongInteraction,
    /// Doubling the quadrature nodes moved some matrix entry too much.
    QuadratureUnconverged { delta: f64 },
    /// A matrix tagged hermitian failed the elementwise symmetry check.
    NotHermitian { defect: f64 },
    /// The external Hamiltonian does not restrict to the clock Hamiltonian.
    Incompatible { defect: f64 },
}

impl fmt::Display for ClockError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClockError::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            ClockError::LeakageExceeded { defect, threshold } => {
                write!(f, "norm defect {defect:e} exceeds leakage threshold {threshold:e}")
            }
            ClockError::NotInterior { boundary_mass } => {
                write!(f, "state is not interior (boundary mass {boundary_mass:e})")
            }
            ClockError::ZeroState => write!(f, "zero state has no expectation values"),
            ClockError::InsufficientData => {
                write!(f, "need at least three truncation sizes for a verdict")
            }
            ClockError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            ClockError::StrongInteraction => {
                write!(f, "strong interaction: the clock cannot work")
            }
            ClockError::QuadratureUnconverged { delta } => {
                write!(f, "quadrature not converged: node doubling moved an entry by {delta:e}")
            }
            ClockError::NotHermitian { defect } => {
                write!(f, "matrix is not hermitian (defect {defect:e})")
            }
            ClockError::Incompatible { defect } => {
                write!(f, "external Hamiltonian incompatible with the clock (defect {defect:e})")
            }
        }
    }
}

impl core::error::Error for ClockError {}
