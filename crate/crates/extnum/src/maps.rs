use crate::ext::ExtNumber;
use crate::scalar::Scalar;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Coefficients of the two isomorphism maps attached to one number: the
/// conjugate map `k* = z₁·k + w₁` and the extended map `k^• = z₂·k + w₂`.
///
/// The coefficients depend on the number they belong to (through its
/// shape parameters φ and θ), so they are carried alongside the number
/// rather than being global to the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapCoefficients<S> {
    /// Extended coefficient of the conjugate map.
    pub z1: Complex<S>,
    /// Complex coefficient of the conjugate map.
    pub w1: Complex<S>,
    /// Extended coefficient of the extended map.
    pub z2: Complex<S>,
    /// Complex coefficient of the extended map.
    pub w2: Complex<S>,
    /// Largest equation residual at the solution, when produced by a
    /// solver; `None` for manually assigned coefficients.
    pub residual: Option<f64>,
}

/// Which of the two maps to apply to a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    /// The conjugate map `()*`.
    Star,
    /// The extended map `()^•`.
    Bullet,
}

impl<S: Scalar> MapCoefficients<S> {
    /// Builds coefficients with no recorded residual.
    pub fn new(z1: Complex<S>, w1: Complex<S>, z2: Complex<S>, w2: Complex<S>) -> Self {
        Self {
            z1,
            w1,
            z2,
            w2,
            residual: None,
        }
    }

    /// Attaches a solver residual.
    pub fn with_residual(mut self, residual: f64) -> Self {
        self.residual = Some(residual);
        self
    }

    /// The trivial maps `z₁ = z₂ = 1`, `w₁ = w₂ = 0`: the star map then
    /// conjugates components and the bullet map is the identity, which
    /// is the correct behaviour on pure complex numbers.
    pub fn identity() -> Self {
        let one = Complex::new(S::one(), S::zero());
        let zero = Complex::new(S::zero(), S::zero());
        Self::new(one, zero.clone(), Complex::new(S::one(), S::zero()), zero)
    }

    /// Applies the conjugate map: `α* = (x*·z₁)·k + (x*·w₁ + y*)`.
    pub fn star(&self, a: &ExtNumber<S>) -> ExtNumber<S> {
        let xc = a.x.conj();
        let yc = a.y.conj();
        ExtNumber::new(
            xc.clone() * self.z1.clone(),
            xc * self.w1.clone() + yc,
        )
    }

    /// Applies the extended map: `α^• = (x·z₂)·k + (x·w₂ + y)`.
    pub fn bullet(&self, a: &ExtNumber<S>) -> ExtNumber<S> {
        ExtNumber::new(
            a.x.clone() * self.z2.clone(),
            a.x.clone() * self.w2.clone() + a.y.clone(),
        )
    }
}

/// Applies one of the two maps to a number.
pub fn apply_map<S: Scalar>(
    a: &ExtNumber<S>,
    m: &MapCoefficients<S>,
    which: MapKind,
) -> ExtNumber<S> {
    match which {
        MapKind::Star => m.star(a),
        MapKind::Bullet => m.bullet(a),
    }
}
