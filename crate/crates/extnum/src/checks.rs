use crate::conj::conj_mul_with;
use crate::context::AlgebraContext;
use crate::error::ExtError;
use crate::ext::ExtNumber;
use crate::maps::MapCoefficients;
use crate::scalar::{FloatScalar, Scalar};
use crate::solver::{inf_norm, s};
use num_complex::Complex;
use serde::Serialize;

/// Exact decomposition of the pair-product commutation gap
/// `(γ₁⊙δ₁)(γ₂⊙δ₂) − (γ₂⊙δ₁)(γ₁⊙δ₂)`.
///
/// The gap factors as a complex prefactor built from the δ components
/// times a bracket number built from the γ components and their maps;
/// the identity is exact over any scalar field.
#[derive(Debug, Clone, Serialize)]
pub struct InnerCommutationParts<S> {
    /// `(γ₁⊙δ₁)·(γ₂⊙δ₂)`.
    pub lhs: ExtNumber<S>,
    /// `(γ₂⊙δ₁)·(γ₁⊙δ₂)`.
    pub rhs: ExtNumber<S>,
    /// `lhs − rhs`.
    pub difference: ExtNumber<S>,
    /// `δ₁_I·δ₂_E − δ₁_E·δ₂_I`.
    pub prefactor: Complex<S>,
    /// The bracket factor as an extended number.
    pub bracket: ExtNumber<S>,
    /// `prefactor · bracket`; equals `difference` exactly.
    pub factored: ExtNumber<S>,
}

/// Floating-point commutation check with tolerances applied.
#[derive(Debug, Clone, Serialize)]
pub struct InnerCommutationReport<S> {
    /// `(γ₁⊙δ₁)·(γ₂⊙δ₂)`.
    pub lhs: ExtNumber<S>,
    /// `(γ₂⊙δ₁)·(γ₁⊙δ₂)`.
    pub rhs: ExtNumber<S>,
    /// `lhs − rhs`.
    pub difference: ExtNumber<S>,
    /// `δ₁_I·δ₂_E − δ₁_E·δ₂_I`.
    pub prefactor: Complex<S>,
    /// Extended component of the bracket factor.
    pub bracket_e: Complex<S>,
    /// Complex component of the bracket factor.
    pub bracket_i: Complex<S>,
    /// `prefactor · bracket`.
    pub factored: ExtNumber<S>,
    /// ∞-norm of `difference − factored` (the factorization error).
    pub residual: f64,
    /// Whether the two pair products agree within tolerance.
    pub holds: bool,
}

/// Symmetry probe for the four-slot pairing: compares the two mixed
/// conjugation orders of the square root of `⟨a,b,a,b⟩`.
#[derive(Debug, Clone, Serialize)]
pub struct ConjSymmetryReport<S> {
    /// `⟨a,b,a,b⟩`.
    pub p: ExtNumber<S>,
    /// The chosen standard square root of `p`, preferring a pure
    /// complex root when the sweep finds one.
    pub q: ExtNumber<S>,
    /// Extended-conjugate square root of `q`.
    pub gamma: ExtNumber<S>,
    /// Conjugate square root of `q`.
    pub delta: ExtNumber<S>,
    /// `(γ^•⊙γ^•)·(δ⊙δ)`.
    pub e1: ExtNumber<S>,
    /// `(γ⊙γ)·(δ^•⊙δ^•)`.
    pub e2: ExtNumber<S>,
    /// ∞-norm of `e1 − e2`.
    pub residual: f64,
    /// Whether `e1` and `e2` agree within tolerance.
    pub holds: bool,
    /// `|γ_I|²·|δ_I|²` when both roots are pure complex, where both
    /// sides collapse to this single real value.
    pub pure_reduction: Option<Complex<S>>,
}

impl<S: Scalar> AlgebraContext<S> {
    /// Builds the exact factorization of the commutation gap between
    /// `(γ₁⊙δ₁)(γ₂⊙δ₂)` and its γ-swapped companion. Each conjugate
    /// product uses the left factor's maps.
    pub fn inner_commutation_parts(
        &self,
        g1: &ExtNumber<S>,
        m1: &MapCoefficients<S>,
        g2: &ExtNumber<S>,
        m2: &MapCoefficients<S>,
        d1: &ExtNumber<S>,
        d2: &ExtNumber<S>,
    ) -> InnerCommutationParts<S> {
        let lhs = self.std_mul(&conj_mul_with(g1, d1, m1), &conj_mul_with(g2, d2, m2));
        let rhs = self.std_mul(&conj_mul_with(g2, d1, m2), &conj_mul_with(g1, d2, m1));
        let difference = lhs.clone() - rhs.clone();

        let i = Complex::new(S::zero(), S::one());
        let z0 = self.z0().clone();
        let w0 = self.w0().clone();
        let u = g1.x.conj() * g2.y.conj();
        let v = g1.y.conj() * g2.x.conj();
        let e = g1.x.conj() * g2.x.conj();
        let bracket_e = u.clone() * (m1.w1.clone() + z0.clone() * m1.z1.clone())
            - v.clone() * (m2.w1.clone() + z0 * m2.z1.clone())
            + i.clone() * e.clone() * (m1.z1.clone() - m2.z1.clone());
        let bracket_i = u * (w0.clone() * m1.z1.clone() - i.clone())
            - v * (w0 * m2.z1.clone() - i.clone())
            + i * e * (m1.w1.clone() - m2.w1.clone());
        let prefactor = d1.y.clone() * d2.x.clone() - d1.x.clone() * d2.y.clone();
        let bracket = ExtNumber::new(bracket_e, bracket_i);
        let factored = bracket.scale(&prefactor);
        InnerCommutationParts {
            lhs,
            rhs,
            difference,
            prefactor,
            bracket,
            factored,
        }
    }
}

impl<S: FloatScalar> AlgebraContext<S> {
    /// Commutation check over floating-point scalars: reports both pair
    /// products, the exact factorization of their gap, and whether they
    /// agree within the context tolerance.
    pub fn inner_commutation_check(
        &self,
        g1: &ExtNumber<S>,
        m1: &MapCoefficients<S>,
        g2: &ExtNumber<S>,
        m2: &MapCoefficients<S>,
        d1: &ExtNumber<S>,
        d2: &ExtNumber<S>,
    ) -> InnerCommutationReport<S> {
        let parts = self.inner_commutation_parts(g1, m1, g2, m2, d1, d2);
        let gap = parts.difference - parts.factored;
        let residual = inf_norm(&[gap.x.re, gap.x.im, gap.y.re, gap.y.im])
            .to_f64()
            .unwrap_or(f64::NAN);
        let scale = S::one() + parts.lhs.max_abs().max(parts.rhs.max_abs());
        let diff_norm = inf_norm(&[
            parts.difference.x.re,
            parts.difference.x.im,
            parts.difference.y.re,
            parts.difference.y.im,
        ]);
        let holds = diff_norm <= s::<S>(self.solver_tol()) * scale;
        InnerCommutationReport {
            lhs: parts.lhs,
            rhs: parts.rhs,
            difference: parts.difference,
            prefactor: parts.prefactor,
            bracket_e: parts.bracket.x,
            bracket_i: parts.bracket.y,
            factored: parts.factored,
            residual,
            holds,
        }
    }

    /// Builds `⟨a,b,a,b⟩`, takes a standard square root `Q` of it
    /// (preferring the pure complex branch), extracts γ
    /// (extended-conjugate root of `Q`) and δ (conjugate root of `Q`),
    /// and compares the two mixed conjugation orders of the pairing.
    pub fn conj_symmetry_check(
        &self,
        a: &ExtNumber<S>,
        b: &ExtNumber<S>,
    ) -> Result<ConjSymmetryReport<S>, ExtError> {
        let m_a = self.maps_or_identity(a)?;
        let m_b = self.maps_or_identity(b)?;
        let p = self.inner4(a, &m_a, b, &m_b, a, &m_a, b);
        let sqrt_set = self.std_sqrt(&p)?;
        let near = s::<S>(self.solver_tol()) * (S::one() + p.max_abs());
        let target = *sqrt_set
            .roots
            .iter()
            .find(|r| r.x.norm() <= near && r.y.re > S::zero())
            .or_else(|| sqrt_set.roots.iter().find(|r| r.x.norm() <= near))
            .unwrap_or(&sqrt_set.roots[0]);

        let gamma_set = self.ext_conj_root(&target)?;
        let gamma = gamma_set.roots[0];
        let m_g = gamma_set.maps.unwrap_or_else(MapCoefficients::identity);
        let delta_set = self.conj_root(&target)?;
        let delta = delta_set.roots[0];
        let m_d = delta_set.maps.unwrap_or_else(MapCoefficients::identity);

        let gb = m_g.bullet(&gamma);
        let db = m_d.bullet(&delta);
        let e1 = self.std_mul(
            &conj_mul_with(&gb, &gb, &m_g),
            &conj_mul_with(&delta, &delta, &m_d),
        );
        let e2 = self.std_mul(
            &conj_mul_with(&gamma, &gamma, &m_g),
            &conj_mul_with(&db, &db, &m_d),
        );
        let gap = e1 - e2;
        let residual_s = inf_norm(&[gap.x.re, gap.x.im, gap.y.re, gap.y.im]);
        let scale = S::one() + e1.max_abs().max(e2.max_abs());
        let holds = residual_s <= s::<S>(self.solver_tol()) * scale;
        let pure_reduction = if gamma.is_pure_complex() && delta.is_pure_complex() {
            Some(gamma.y.conj() * gamma.y * delta.y.conj() * delta.y)
        } else {
            None
        };
        Ok(ConjSymmetryReport {
            p,
            q: target,
            gamma,
            delta,
            e1,
            e2,
            residual: residual_s.to_f64().unwrap_or(f64::NAN),
            holds,
            pure_reduction,
        })
    }

    /// Detects whether `b` annihilates some nonzero number under the
    /// ordinary product, returning such a partner when it exists. The
    /// zero divisors are exactly the numbers on the quadratic locus
    /// `v² + u·v·z₀ − u²·w₀ = 0` with nonzero extended part.
    pub fn zero_divisor_check(&self, b: &ExtNumber<S>) -> Option<ExtNumber<S>> {
        if b.x.norm_sqr() == S::zero() {
            return None;
        }
        let conic = self.conic_residual(b);
        let scale = (S::one() + b.max_abs()) * (S::one() + b.max_abs());
        if conic.norm() > s::<S>(self.solver_tol()) * scale {
            return None;
        }
        Some(self.annihilator(b))
    }

    /// Convenience pairing that solves maps for the first three slots
    /// before evaluating `⟨a,b,g,d⟩`.
    pub fn inner4_solved(
        &self,
        a: &ExtNumber<S>,
        b: &ExtNumber<S>,
        g: &ExtNumber<S>,
        d: &ExtNumber<S>,
    ) -> Result<ExtNumber<S>, ExtError> {
        let m_a = self.maps_or_identity(a)?;
        let m_b = self.maps_or_identity(b)?;
        let m_g = self.maps_or_identity(g)?;
        Ok(self.inner4(a, &m_a, b, &m_b, g, &m_g, d))
    }
}

impl<S: Scalar> AlgebraContext<S> {
    /// Value of the zero-divisor locus polynomial at `b`: zero means the
    /// ordinary product with the matching annihilator vanishes exactly.
    pub fn conic_residual(&self, b: &ExtNumber<S>) -> Complex<S> {
        let u = b.x.clone();
        let v = b.y.clone();
        v.clone() * v.clone() + u.clone() * v * self.z0().clone()
            - u.clone() * u * self.w0().clone()
    }

    /// The annihilating partner for a number on the zero-divisor locus:
    /// `u·k − (u·z₀ + v)` multiplies `b = u·k + v` to the conic value.
    pub fn annihilator(&self, b: &ExtNumber<S>) -> ExtNumber<S> {
        let z0 = self.z0().clone();
        ExtNumber::new(b.x.clone(), -(b.x.clone() * z0 + b.y.clone()))
    }
}
