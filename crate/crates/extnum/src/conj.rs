use crate::error::ExtError;
use crate::ext::ExtNumber;
use crate::maps::MapCoefficients;
use crate::scalar::Scalar;
use num_complex::Complex;

/// Conjugated product `a ⊙ b` with explicit maps for the left operand:
///
/// `a ⊙ b = (x_a*·y_b·z₁ + x_b·y_a*)·k + (i·x_a*·x_b + x_a*·y_b·w₁ + y_a*·y_b)`
///
/// The map coefficients are always those of `a`; `k*·k` is kept atomic
/// and replaced by `i`, which is why no `z₀`, `w₀` appear.
pub fn conj_mul_with<S: Scalar>(
    a: &ExtNumber<S>,
    b: &ExtNumber<S>,
    m_a: &MapCoefficients<S>,
) -> ExtNumber<S> {
    let xa = a.x.conj();
    let ya = a.y.conj();
    let i = Complex::new(S::zero(), S::one());
    ExtNumber::new(
        xa.clone() * b.y.clone() * m_a.z1.clone() + b.x.clone() * ya.clone(),
        i * xa.clone() * b.x.clone() + xa * b.y.clone() * m_a.w1.clone() + ya * b.y.clone(),
    )
}

/// Conjugated product `a ⊙ b`.
///
/// Maps may be omitted only when they cannot enter the result: either
/// the left operand is pure complex, or the right operand has a zero
/// complex part (every map term carries the factor `x_a*·y_b`).
pub fn conj_mul<S: Scalar>(
    a: &ExtNumber<S>,
    b: &ExtNumber<S>,
    m_a: Option<&MapCoefficients<S>>,
) -> Result<ExtNumber<S>, ExtError> {
    match m_a {
        Some(m) => Ok(conj_mul_with(a, b, m)),
        None => {
            let maps_enter = !a.is_pure_complex() && !(b.y.re.is_zero() && b.y.im.is_zero());
            if maps_enter {
                Err(ExtError::MapsMissing)
            } else {
                Ok(conj_mul_with(a, b, &MapCoefficients::identity()))
            }
        }
    }
}

/// Conjugated sum `a ⊕ b` with explicit maps for the left operand:
///
/// `a ⊕ b = (x_a*·z₁ + x_b)·k + (x_a*·w₁ + y_a* + y_b)`
///
/// The operation is noncommutative and has no two-sided identity:
/// `0 ⊕ a = a`, but `a ⊕ 0 ≠ a` whenever `a` has a nonzero extended part
/// with nontrivial maps.
pub fn conj_add_with<S: Scalar>(
    a: &ExtNumber<S>,
    b: &ExtNumber<S>,
    m_a: &MapCoefficients<S>,
) -> ExtNumber<S> {
    let xa = a.x.conj();
    let ya = a.y.conj();
    ExtNumber::new(
        xa.clone() * m_a.z1.clone() + b.x.clone(),
        xa * m_a.w1.clone() + ya + b.y.clone(),
    )
}

/// Conjugated sum `a ⊕ b`; maps may be omitted only for a pure complex
/// left operand.
pub fn conj_add<S: Scalar>(
    a: &ExtNumber<S>,
    b: &ExtNumber<S>,
    m_a: Option<&MapCoefficients<S>>,
) -> Result<ExtNumber<S>, ExtError> {
    match m_a {
        Some(m) => Ok(conj_add_with(a, b, m)),
        None => {
            if a.is_pure_complex() {
                Ok(conj_add_with(a, b, &MapCoefficients::identity()))
            } else {
                Err(ExtError::MapsMissing)
            }
        }
    }
}
