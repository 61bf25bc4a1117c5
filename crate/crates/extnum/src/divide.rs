use crate::conj::conj_mul_with;
use crate::context::AlgebraContext;
use crate::error::ExtError;
use crate::ext::ExtNumber;
use crate::maps::MapCoefficients;
use crate::scalar::FloatScalar;
use crate::solver::{inf_norm, s};
use num_complex::Complex;
use serde::Serialize;

/// Quotients under both division constructions, with the residual of
/// the verification identity `q·den = num`.
#[derive(Debug, Clone, Serialize)]
pub struct DivisionReport<S> {
    /// Quotient built from the conjugate square root of the denominator.
    pub primary: ExtNumber<S>,
    /// Quotient built from the extended-conjugate square root, when that
    /// root solve converges.
    pub alternate: Option<ExtNumber<S>>,
    /// ∞-norm gap between the two quotients, when both exist.
    pub disagreement: Option<f64>,
    /// ∞-norm of `primary·den − num` under the ordinary product.
    pub check_residual: f64,
}

impl<S: FloatScalar> AlgebraContext<S> {
    /// Divides under the primary construction: the quotient is
    /// `num·[ρ^•⊙ρ^•]` rescaled by the real quartic norm, where ρ is a
    /// conjugate square root of `den` (so ρ⊙ρ = den).
    pub fn divide(&self, num: &ExtNumber<S>, den: &ExtNumber<S>) -> Result<ExtNumber<S>, ExtError> {
        if !num.is_finite() || !den.is_finite() {
            return Err(ExtError::NonFinite("divide"));
        }
        if den.is_zero() || self.zero_divisor_check(den).is_some() {
            return Err(ExtError::DivisionByZero);
        }
        let set = self.conj_root(den)?;
        let rho = set.roots[0];
        let m = set.maps.unwrap_or_else(MapCoefficients::identity);
        let b = m.bullet(&rho);
        let pair = conj_mul_with(&b, &b, &m);
        self.scale_by_norm(num, den, &pair)
    }

    /// Divides under the alternate construction: ρ is an
    /// extended-conjugate square root of `den` (so ρ^•⊙ρ^• = den) and
    /// the quotient uses the plain pair ρ⊙ρ.
    pub fn divide_alt(
        &self,
        num: &ExtNumber<S>,
        den: &ExtNumber<S>,
    ) -> Result<ExtNumber<S>, ExtError> {
        if !num.is_finite() || !den.is_finite() {
            return Err(ExtError::NonFinite("divide"));
        }
        if den.is_zero() || self.zero_divisor_check(den).is_some() {
            return Err(ExtError::DivisionByZero);
        }
        let set = self.ext_conj_root(den)?;
        let rho = set.roots[0];
        let m = set.maps.unwrap_or_else(MapCoefficients::identity);
        let pair = conj_mul_with(&rho, &rho, &m);
        self.scale_by_norm(num, den, &pair)
    }

    /// Multiplicative inverse: `1/a` under the primary construction.
    pub fn inverse(&self, a: &ExtNumber<S>) -> Result<ExtNumber<S>, ExtError> {
        self.divide(&ExtNumber::one(), a)
    }

    /// Runs both division constructions and verifies the quotient by
    /// multiplying back against the denominator.
    pub fn divide_report(
        &self,
        num: &ExtNumber<S>,
        den: &ExtNumber<S>,
    ) -> Result<DivisionReport<S>, ExtError> {
        let primary = self.divide(num, den)?;
        let alternate = self.divide_alt(num, den).ok();
        let disagreement = alternate.map(|alt| {
            let d = primary - alt;
            inf_norm(&[d.x.re, d.x.im, d.y.re, d.y.im])
                .to_f64()
                .unwrap_or(f64::NAN)
        });
        let back = self.std_mul(&primary, den) - *num;
        let check_residual = inf_norm(&[back.x.re, back.x.im, back.y.re, back.y.im])
            .to_f64()
            .unwrap_or(f64::NAN);
        Ok(DivisionReport {
            primary,
            alternate,
            disagreement,
            check_residual,
        })
    }

    /// Completes a quotient from a conjugate pair of the denominator's
    /// square root: the product `den·pair` is the root's real quartic
    /// norm, which vanishes exactly on zero divisors.
    fn scale_by_norm(
        &self,
        num: &ExtNumber<S>,
        den: &ExtNumber<S>,
        pair: &ExtNumber<S>,
    ) -> Result<ExtNumber<S>, ExtError> {
        let denom = self.std_mul(den, pair);
        let scale = (S::one() + den.max_abs()) * (S::one() + den.max_abs());
        if denom.y.norm() <= s::<S>(self.solver_tol()) * scale {
            return Err(ExtError::DivisionByZero);
        }
        let inv = Complex::new(S::one(), S::zero()) / denom.y;
        Ok(self.std_mul(num, pair).scale(&inv))
    }
}
