//! Variational mechanics for Lagrangians that depend on accelerations.
//!
//! The crate covers the full second-order toolchain:
//!
//! - [`lagrangian`]: scalar Lagrangians `L(t, q, q', q'')` with
//!   analytic or finite-difference partial derivatives, plus a small
//!   library of standard examples;
//! - [`dynamics`]: momenta, the energy function, equation-of-motion
//!   residuals along smooth paths, and direct Runge-Kutta integration
//!   of the fourth-order dynamics;
//! - [`hessian`]: velocity- and acceleration-block Hessians with
//!   ranks and null directions;
//! - [`legendre`]: momentum inversion, the Hamiltonian and its
//!   canonical partial derivatives, and the equivalent two-pair
//!   canonical system;
//! - [`constraint`]: level-by-level detection of gauge identities and
//!   genuine constraints for degenerate Lagrangians;
//! - [`bracket`]: the canonical bracket and the rate functionals used
//!   by constraint-consistency analysis;
//! - [`canonical`]: infinitesimal generator tables and correlation
//!   family validation;
//! - [`action`]: discretized actions and the gradient cross-check
//!   against the equations of motion;
//! - [`dsl`]: a JSON expression language for Lagrangians;
//! - [`io`]: CSV trajectory output.

pub mod action;
pub mod bracket;
pub mod canonical;
pub mod constraint;
pub mod dsl;
pub mod dynamics;
pub mod error;
pub mod hessian;
pub mod io;
pub mod lagrangian;
pub mod legendre;
pub mod state;

pub use action::{action_gradient_check, discrete_action, gradient_convergence_order, GradientCheck};
pub use bracket::{
    bracket_suite, constraint_rate, constraint_rate2, mixed_upsilon, poisson, quad_psi,
    quad_psi_cross, rate_correction, rate_omega, BracketSuite, PhaseFunction, PhaseVar, Rates,
};
pub use canonical::{
    generator_apply, validate_correlation_family, CorrelationFamily, FamilyReport, FlowRates,
    Generator,
};
pub use constraint::{
    constraint_scan, ConstraintScan, ObjectKind, ScanLevel, ScanObject, Termination,
};
pub use dsl::{FactorSpec, FuncKind, LagrangianSpec, TermSpec, VarKind};
pub use dynamics::{
    el_residual, el_residual_augmented, energy_h, euler_affine, euler_k, integrate_el, momenta,
    momentum2_rate, RANK_TOL,
};
pub use error::VarError;
pub use hessian::{hessians, null_space, numerical_rank, HessianReport};
pub use io::write_trajectory_csv;
pub use lagrangian::{
    curvature_difference, free_particle, harmonic, pais_uhlenbeck, pure_curvature, Arg, Gradients,
    SecondOrderLagrangian,
};
pub use legendre::{
    canonical_hamiltonian, canonical_initial, hamiltonian_at, integrate_canonical, invert_momenta,
    legendre_hamiltonian, recover_acceleration, CanonicalState, CanonicalTrajectory,
    HamiltonianReport,
};
pub use state::{AnalyticPath, Path, PathState, PhasePoint, SplinePath, Trajectory};
