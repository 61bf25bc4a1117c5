use crate::context::AlgebraContext;
use crate::conj::conj_mul_with;
use crate::ext::ExtNumber;
use crate::maps::MapCoefficients;
use crate::scalar::{FloatScalar, Scalar};

impl<S: Scalar> AlgebraContext<S> {
    /// Standard product, obtained by expanding with `k² = z₀·k + w₀`:
    ///
    /// `a·b = (x_a·x_b·z₀ + x_a·y_b + y_a·x_b)·k + (x_a·x_b·w₀ + y_a·y_b)`
    ///
    /// Commutative, associative, and distributive over the standard sum.
    pub fn std_mul(&self, a: &ExtNumber<S>, b: &ExtNumber<S>) -> ExtNumber<S> {
        let xx = a.x.clone() * b.x.clone();
        ExtNumber::new(
            xx.clone() * self.z0().clone() + a.x.clone() * b.y.clone() + a.y.clone() * b.x.clone(),
            xx * self.w0().clone() + a.y.clone() * b.y.clone(),
        )
    }

    /// Fourth power of the absolute value, in closed form:
    ///
    /// `|α|⁴ = |x|⁴ + |y|⁴ + R·|x|²·|y|²`
    ///
    /// Nonnegative for `R ≥ 0`, and zero only at `α = 0`. For `R = 2` it
    /// collapses to `(|x|² + |y|²)²`.
    pub fn abs4(&self, a: &ExtNumber<S>) -> S {
        let nx = a.x.norm_sqr();
        let ny = a.y.norm_sqr();
        nx.clone() * nx.clone() + ny.clone() * ny.clone() + self.r().clone() * nx * ny
    }

    /// Inner product of four numbers with caller-supplied maps:
    ///
    /// `⟨a,b,g,d⟩ = (a^• ⊙ b^•)·(g ⊙ d)`
    ///
    /// composed exactly in that order (extended map, conjugated product,
    /// standard product). The left factor of each conjugated product
    /// supplies the maps; `a^•` inherits `a`'s conjugate map, the
    /// algebra's working simplification (the
    /// `bullet_inheritance_residual` diagnostic measures how
    /// self-consistent that choice is).
    #[allow(clippy::too_many_arguments)]
    pub fn inner4(
        &self,
        a: &ExtNumber<S>,
        m_a: &MapCoefficients<S>,
        b: &ExtNumber<S>,
        m_b: &MapCoefficients<S>,
        g: &ExtNumber<S>,
        m_g: &MapCoefficients<S>,
        d: &ExtNumber<S>,
    ) -> ExtNumber<S> {
        let left = conj_mul_with(&m_a.bullet(a), &m_b.bullet(b), m_a);
        let right = conj_mul_with(g, d, m_g);
        self.std_mul(&left, &right)
    }
}

impl<S: FloatScalar> AlgebraContext<S> {
    /// Absolute value: the fourth root of [`AlgebraContext::abs4`].
    pub fn abs(&self, a: &ExtNumber<S>) -> S {
        self.abs4(a).sqrt().sqrt()
    }
}
