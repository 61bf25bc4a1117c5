//! Error types for the variational-mechanics layer.

use thiserror::Error;

/// Errors produced by integrators, solvers, and scans.
#[derive(Debug, Error)]
pub enum VarError {
    /// The path cannot supply derivatives of the required order.
    #[error("path supplies derivatives only up to order {available}, need {needed}")]
    InsufficientSmoothness {
        /// Highest derivative order the path can produce.
        available: usize,
        /// Order the operation requires.
        needed: usize,
    },

    /// The second-derivative Hessian is singular where invertibility
    /// is required; the constraint scan handles such Lagrangians.
    #[error("second-derivative Hessian is singular (|det| = {det:.3e})")]
    SingularHessian {
        /// Magnitude of the determinant at the failure point.
        det: f64,
    },

    /// An iterative inversion failed to reach tolerance.
    #[error("no convergence: residual {residual:.3e} after {iters} iterations")]
    NoConvergence {
        /// Best residual reached.
        residual: f64,
        /// Iterations spent.
        iters: usize,
    },

    /// The constraint scan was still finding new constraints when the
    /// level cap was reached.
    #[error("constraint scan exceeded the level cap of {max_levels}")]
    LevelCapExceeded {
        /// Configured maximum number of levels.
        max_levels: usize,
    },

    /// The requested generator needs a correlation family attached.
    #[error("generator requires a correlation family")]
    MissingFamily,

    /// Mismatched dimensions between an input and the Lagrangian.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension {
        /// Dimension required by the receiver.
        expected: usize,
        /// Dimension supplied by the caller.
        got: usize,
    },

    /// Invalid configuration value.
    #[error("invalid configuration: {0}")]
    Config(String),
}
