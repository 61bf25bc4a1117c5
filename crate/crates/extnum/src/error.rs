use thiserror::Error;

/// Errors produced by extended-number operations and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtError {
    /// An operand has a zero extended or complex part, so the shape
    /// parameters φ and θ are undefined and no map solve is possible.
    /// Callers must take the pure-complex / pure-extended branches instead.
    #[error("degenerate operand in {0}: phi and theta are undefined")]
    Degenerate(&'static str),

    /// Every solver start was exhausted without meeting the residual
    /// tolerance; carries the best residual seen across all starts.
    #[error("no convergence: best residual {residual:.3e} after {starts} starts")]
    NoConvergence { residual: f64, starts: usize },

    /// A conjugated operation needed the left operand's map coefficients,
    /// but none were supplied.
    #[error("map coefficients required for the left operand")]
    MapsMissing,

    /// Division by zero, or by a number with no inverse.
    #[error("division by a non-invertible number")]
    DivisionByZero,

    /// A non-finite component entered an operation.
    #[error("non-finite component in {0}")]
    NonFinite(&'static str),

    /// A context parameter is outside its allowed range.
    #[error("invalid parameter {name}: {message}")]
    InvalidParameter {
        name: &'static str,
        message: String,
    },
}
