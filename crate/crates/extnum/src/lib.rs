//! Arithmetic for extended numbers of the form `x·k + y`, where `x` and
//! `y` are complex and the unit `k` squares to a configurable complex
//! combination `z₀·k + w₀`.
//!
//! The crate provides:
//!
//! - the ordinary (commutative, associative) product, which makes the
//!   numbers a ring with zero divisors along a quadratic locus;
//! - conjugation maps `k ↦ z₁·k + w₁` and `k ↦ z₂·k + w₂` attached to
//!   each number, solved numerically from a four-equation system so that
//!   the induced quartic norm is positive and direction-independent;
//! - the conjugate product and sum built from those maps, their
//!   non-distributivity defects in closed form, quartic norms, square
//!   roots under each product, division, and structural checks
//!   (commutation of pair products, conjugation symmetry, zero-divisor
//!   detection).
//!
//! All core arithmetic is generic over the scalar: exact identities can
//! be exercised over rationals while the solvers run over `f64`/`f32`.
//! Concrete aliases for the common instantiations live at the crate
//! root.

mod algebra;
mod checks;
mod conj;
mod context;
mod defect;
mod divide;
mod error;
mod ext;
mod maps;
mod norm;
mod roots;
mod scalar;
mod solver;

pub use checks::{ConjSymmetryReport, InnerCommutationParts, InnerCommutationReport};
pub use conj::{conj_add, conj_add_with, conj_mul, conj_mul_with};
pub use context::{AlgebraContext, UnitDef};
pub use defect::{conj_mul_rate, d_defect, f_defect, g_defect};
pub use divide::DivisionReport;
pub use error::ExtError;
pub use ext::ExtNumber;
pub use maps::{apply_map, MapCoefficients, MapKind};
pub use norm::{isotropy_scan, phi_theta, IsotropyReport, IsotropyViolation, PhiTheta};
pub use roots::{RootKind, RootSet};
pub use scalar::{FloatScalar, Scalar};
pub use solver::MapSolve;

use num_bigint::BigInt;
use num_rational::Ratio;

/// Extended number over `f64`.
pub type Ext64 = ExtNumber<f64>;
/// Extended number over `f32`.
pub type Ext32 = ExtNumber<f32>;
/// Map coefficients over `f64`.
pub type Maps64 = MapCoefficients<f64>;
/// Algebra context over `f64`.
pub type Context64 = AlgebraContext<f64>;
/// Extended number over arbitrary-precision rationals, for exact
/// verification of ring identities.
pub type ExtRational = ExtNumber<Ratio<BigInt>>;
