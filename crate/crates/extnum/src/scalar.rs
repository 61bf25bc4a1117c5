use num_traits::{Float, FromPrimitive, Num, NumAssign, ToPrimitive};
use std::fmt::Debug;
use std::ops::Neg;

/// Scalars accepted by the polynomial algebra kernel.
///
/// Floating-point types and exact rationals both qualify, so algebraic
/// identities can be exercised without rounding where they hold exactly.
pub trait Scalar: Num + NumAssign + Neg<Output = Self> + Clone + PartialOrd + Debug {}

impl<T> Scalar for T where T: Num + NumAssign + Neg<Output = Self> + Clone + PartialOrd + Debug {}

/// Scalars with floating-point semantics, required by the iterative
/// solvers and by anything that takes roots or evaluates phases.
pub trait FloatScalar: Scalar + Float + FromPrimitive + ToPrimitive {}

impl<T> FloatScalar for T where T: Scalar + Float + FromPrimitive + ToPrimitive {}
