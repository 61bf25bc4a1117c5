use crate::scalar::{FloatScalar, Scalar};
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// A number of the form `x·k + y`, where `k` is the extended unit and
/// `x`, `y` are complex. `x` is called the extended part and `y` the
/// complex part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtNumber<S> {
    /// Coefficient of the extended unit.
    pub x: Complex<S>,
    /// Complex part.
    pub y: Complex<S>,
}

impl<S: Scalar> ExtNumber<S> {
    /// Builds `x·k + y` from its two complex components.
    pub fn new(x: Complex<S>, y: Complex<S>) -> Self {
        Self { x, y }
    }

    /// Builds a number from its four real components `(x.re, x.im, y.re, y.im)`.
    pub fn from_parts(xr: S, xi: S, yr: S, yi: S) -> Self {
        Self::new(Complex::new(xr, xi), Complex::new(yr, yi))
    }

    /// The additive identity.
    pub fn zero() -> Self {
        Self::new(Complex::zero_c(), Complex::zero_c())
    }

    /// The multiplicative identity of the standard product.
    pub fn one() -> Self {
        Self::new(Complex::zero_c(), Complex::one_c())
    }

    /// The extended unit `k`.
    pub fn unit_k() -> Self {
        Self::new(Complex::one_c(), Complex::zero_c())
    }

    /// Embeds a complex number (zero extended part).
    pub fn complex(y: Complex<S>) -> Self {
        Self::new(Complex::zero_c(), y)
    }

    /// Embeds a real scalar (zero extended part, real complex part).
    pub fn real(y: S) -> Self {
        Self::complex(Complex::new(y, S::zero()))
    }

    /// Builds a pure extended number `x·k` (zero complex part).
    pub fn extended(x: Complex<S>) -> Self {
        Self::new(x, Complex::zero_c())
    }

    /// True when both components are zero.
    pub fn is_zero(&self) -> bool {
        self.x.re.is_zero() && self.x.im.is_zero() && self.y.re.is_zero() && self.y.im.is_zero()
    }

    /// True when the extended part is zero.
    pub fn is_pure_complex(&self) -> bool {
        self.x.re.is_zero() && self.x.im.is_zero()
    }

    /// True when the complex part is zero and the extended part is not.
    pub fn is_pure_extended(&self) -> bool {
        !self.is_zero() && self.y.re.is_zero() && self.y.im.is_zero()
    }

    /// Multiplies both components by a complex scalar.
    pub fn scale(&self, c: &Complex<S>) -> Self {
        Self::new(self.x.clone() * c.clone(), self.y.clone() * c.clone())
    }
}

impl<S: FloatScalar> ExtNumber<S> {
    /// Largest absolute value among the four real components.
    pub fn max_abs(&self) -> S {
        self.x
            .re
            .abs()
            .max(self.x.im.abs())
            .max(self.y.re.abs())
            .max(self.y.im.abs())
    }

    /// True when all four real components are finite.
    pub fn is_finite(&self) -> bool {
        self.x.re.is_finite()
            && self.x.im.is_finite()
            && self.y.re.is_finite()
            && self.y.im.is_finite()
    }
}

/// Componentwise sum: the standard addition of the algebra.
impl<S: Scalar> Add for ExtNumber<S> {
    type Output = ExtNumber<S>;

    fn add(self, rhs: Self) -> Self::Output {
        ExtNumber::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<S: Scalar> Sub for ExtNumber<S> {
    type Output = ExtNumber<S>;

    fn sub(self, rhs: Self) -> Self::Output {
        ExtNumber::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<S: Scalar> Neg for ExtNumber<S> {
    type Output = ExtNumber<S>;

    fn neg(self) -> Self::Output {
        ExtNumber::new(-self.x, -self.y)
    }
}

/// Scaling by a complex number acts on both components.
impl<S: Scalar> Mul<Complex<S>> for ExtNumber<S> {
    type Output = ExtNumber<S>;

    fn mul(self, rhs: Complex<S>) -> Self::Output {
        self.scale(&rhs)
    }
}

/// Internal constructors for complex zero/one without extra trait bounds.
trait ComplexConsts<S> {
    fn zero_c() -> Self;
    fn one_c() -> Self;
}

impl<S: Scalar> ComplexConsts<S> for Complex<S> {
    fn zero_c() -> Self {
        Complex::new(S::zero(), S::zero())
    }

    fn one_c() -> Self {
        Complex::new(S::one(), S::zero())
    }
}
