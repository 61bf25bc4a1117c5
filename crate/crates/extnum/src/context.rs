use crate::error::ExtError;
use crate::scalar::Scalar;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Selects which unit-definition constraint pair anchors the map solve.
///
/// Both definitions agree that `k⊙k = i`; they differ in how the
/// composed maps of `k` are constrained to reach `−i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitDef {
    /// Constrain `k^• ⊙ k^•` to equal `−i` (the default).
    #[default]
    Primary,
    /// Constrain `(k*)^• ⊙ k^•` to equal `−i` instead.
    Alternate,
}

/// Immutable parameters of the algebra: the square-map coefficients
/// (`k² = z₀·k + w₀`), the norm parameter `R`, and solver settings.
///
/// A context never changes after construction, so it can be shared
/// freely across threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraContext<S> {
    z0: Complex<S>,
    w0: Complex<S>,
    r: S,
    solver_tol: f64,
    solver_max_iter: usize,
    multistart_seeds: usize,
    unit_def: UnitDef,
}

impl<S: Scalar> AlgebraContext<S> {
    /// Creates a context for the standard product `k² = z₀·k + w₀`.
    ///
    /// There is no privileged choice of `z₀` and `w₀`; they must always
    /// be given explicitly. The norm parameter defaults to `R = 2`, the
    /// solver tolerance to `1e-10`, with 200 iterations per start and a
    /// 24-point multistart lattice.
    pub fn new(z0: Complex<S>, w0: Complex<S>) -> Self {
        Self {
            z0,
            w0,
            r: S::one() + S::one(),
            solver_tol: 1e-10,
            solver_max_iter: 200,
            multistart_seeds: 24,
            unit_def: UnitDef::Primary,
        }
    }

    /// Replaces the norm parameter; `R` must be nonnegative.
    pub fn with_r(mut self, r: S) -> Result<Self, ExtError> {
        if r < S::zero() {
            return Err(ExtError::InvalidParameter {
                name: "r",
                message: format!("must be nonnegative, got {r:?}"),
            });
        }
        self.r = r;
        Ok(self)
    }

    /// Replaces the solver tolerance; must be strictly positive.
    pub fn with_solver_tol(mut self, tol: f64) -> Result<Self, ExtError> {
        if !(tol > 0.0) {
            return Err(ExtError::InvalidParameter {
                name: "solver_tol",
                message: format!("must be positive, got {tol}"),
            });
        }
        self.solver_tol = tol;
        Ok(self)
    }

    /// Replaces the per-start iteration budget; must be nonzero.
    pub fn with_solver_max_iter(mut self, max_iter: usize) -> Result<Self, ExtError> {
        if max_iter == 0 {
            return Err(ExtError::InvalidParameter {
                name: "solver_max_iter",
                message: "must be at least 1".to_owned(),
            });
        }
        self.solver_max_iter = max_iter;
        Ok(self)
    }

    /// Replaces the number of multistart points; must be nonzero.
    pub fn with_multistart_seeds(mut self, seeds: usize) -> Result<Self, ExtError> {
        if seeds == 0 {
            return Err(ExtError::InvalidParameter {
                name: "multistart_seeds",
                message: "must be at least 1".to_owned(),
            });
        }
        self.multistart_seeds = seeds;
        Ok(self)
    }

    /// Selects the unit-definition constraint pair used by the map solver.
    pub fn with_unit_def(mut self, unit_def: UnitDef) -> Self {
        self.unit_def = unit_def;
        self
    }

    /// The extended coefficient of `k²`.
    pub fn z0(&self) -> &Complex<S> {
        &self.z0
    }

    /// The complex coefficient of `k²`.
    pub fn w0(&self) -> &Complex<S> {
        &self.w0
    }

    /// The norm parameter `R`.
    pub fn r(&self) -> &S {
        &self.r
    }

    /// Residual tolerance for iterative solves.
    pub fn solver_tol(&self) -> f64 {
        self.solver_tol
    }

    /// Iteration budget per solver start.
    pub fn solver_max_iter(&self) -> usize {
        self.solver_max_iter
    }

    /// Number of multistart points tried by the solvers.
    pub fn multistart_seeds(&self) -> usize {
        self.multistart_seeds
    }

    /// Which unit-definition constraint pair the map solver enforces.
    pub fn unit_def(&self) -> UnitDef {
        self.unit_def
    }
}
