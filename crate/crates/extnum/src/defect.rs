use crate::context::AlgebraContext;
use crate::conj::conj_mul_with;
use crate::ext::ExtNumber;
use crate::maps::MapCoefficients;
use crate::scalar::Scalar;
use num_complex::Complex;

/// Left-distributivity defect of the conjugated product:
///
/// `(g1 + g2) ⊙ g3 = g1 ⊙ g3 + g2 ⊙ g3 + 𝒟`
///
/// with
///
/// `𝒟 = [(x₁* + x₂*)·y₃·z₁⁽¹⁺²⁾ − (x₁*·z₁⁽¹⁾ + x₂*·z₁⁽²⁾)·y₃]·k
///    + (x₁* + x₂*)·y₃·w₁⁽¹⁺²⁾ − (x₁*·w₁⁽¹⁾ + x₂*·w₁⁽²⁾)·y₃`
///
/// It measures how much the maps of the sum differ from the maps of the
/// addends, vanishes when all three map sets agree, when `g1` and `g2`
/// are pure complex, or when `g3` has a zero complex part, and is
/// additive in the third argument.
pub fn d_defect<S: Scalar>(
    g1: &ExtNumber<S>,
    m1: &MapCoefficients<S>,
    g2: &ExtNumber<S>,
    m2: &MapCoefficients<S>,
    m12: &MapCoefficients<S>,
    g3: &ExtNumber<S>,
) -> ExtNumber<S> {
    let x1 = g1.x.conj();
    let x2 = g2.x.conj();
    let sum = x1.clone() + x2.clone();
    let y3 = g3.y.clone();
    ExtNumber::new(
        (sum.clone() * m12.z1.clone() - (x1.clone() * m1.z1.clone() + x2.clone() * m2.z1.clone()))
            * y3.clone(),
        (sum * m12.w1.clone() - (x1 * m1.w1.clone() + x2 * m2.w1.clone())) * y3,
    )
}

/// Pair-factorization defect of the conjugated product:
///
/// `(a1·a2)^• ⊙ (b1·b2)^• = (a1^• ⊙ b1^•)·(a2^• ⊙ b2^•) + ℱ`
///
/// computed from the printed component formulas with the roles
/// `Φ = (a1·a2)^•`, `Ψ = (b1·b2)^•`, `Θ = a1^• ⊙ b1^•`, `Γ = a2^• ⊙ b2^•`:
///
/// `ℱ_E = Φ_E*·Ψ_I·z₁⁽ᶲ⁾ + Φ_I*·Ψ_E − Θ_E·Γ_E·z₀ − Θ_E·Γ_I − Θ_I·Γ_E`
/// `ℱ_I = i·Φ_E*·Ψ_E + Φ_E*·Ψ_I·w₁⁽ᶲ⁾ + Φ_I*·Ψ_I − Θ_E·Γ_E·w₀ − Θ_I·Γ_I`
///
/// Each conjugated product takes the maps of its left factor, and the
/// products `a1·a2`, `b1·b2` carry their own maps (`m_prod_a`,
/// `m_prod_b`). The defect vanishes when all four numbers are pure
/// complex, and when the left pair factors are complex scalars.
#[allow(clippy::too_many_arguments)]
pub fn f_defect<S: Scalar>(
    ctx: &AlgebraContext<S>,
    a1: &ExtNumber<S>,
    m_a1: &MapCoefficients<S>,
    b1: &ExtNumber<S>,
    m_b1: &MapCoefficients<S>,
    a2: &ExtNumber<S>,
    m_a2: &MapCoefficients<S>,
    b2: &ExtNumber<S>,
    m_b2: &MapCoefficients<S>,
    m_prod_a: &MapCoefficients<S>,
    m_prod_b: &MapCoefficients<S>,
) -> ExtNumber<S> {
    let phi = m_prod_a.bullet(&ctx.std_mul(a1, a2));
    let psi = m_prod_b.bullet(&ctx.std_mul(b1, b2));
    let theta = conj_mul_with(&m_a1.bullet(a1), &m_b1.bullet(b1), m_a1);
    let gamma = conj_mul_with(&m_a2.bullet(a2), &m_b2.bullet(b2), m_a2);
    let i = Complex::new(S::zero(), S::one());
    let phie = phi.x.conj();
    let phii = phi.y.conj();
    ExtNumber::new(
        phie.clone() * psi.y.clone() * m_prod_a.z1.clone() + phii.clone() * psi.x.clone()
            - theta.x.clone() * gamma.x.clone() * ctx.z0().clone()
            - theta.x.clone() * gamma.y.clone()
            - theta.y.clone() * gamma.x.clone(),
        i * phie.clone() * psi.x.clone()
            + phie * psi.y.clone() * m_prod_a.w1.clone()
            + phii * psi.y
            - theta.x * gamma.x * ctx.w0().clone()
            - theta.y * gamma.y,
    )
}

/// Derivative defect of the conjugated product along a parameter:
///
/// `d(a ⊙ b)/dτ = ȧ ⊙ b + a ⊙ ḃ + 𝒢`
///
/// with
///
/// `𝒢 = [ȧ_E*·b_I·(z₁⁽ᵃ⁾ − z₁⁽ᵃ̇⁾) + a_E*·b_I·ż₁⁽ᵃ⁾]·k
///    + ȧ_E*·b_I·(w₁⁽ᵃ⁾ − w₁⁽ᵃ̇⁾) + a_E*·b_I·ẇ₁⁽ᵃ⁾`
///
/// `𝒢` depends on the rates of `a` and of its conjugate-map
/// coefficients, but not on `ḃ` — both `ḃ` contributions are absorbed
/// exactly by `a ⊙ ḃ`.
pub fn g_defect<S: Scalar>(
    a: &ExtNumber<S>,
    m_a: &MapCoefficients<S>,
    da: &ExtNumber<S>,
    m_da: &MapCoefficients<S>,
    z1_rate: &Complex<S>,
    w1_rate: &Complex<S>,
    b: &ExtNumber<S>,
) -> ExtNumber<S> {
    let dxa = da.x.conj();
    let xa = a.x.conj();
    let by = b.y.clone();
    ExtNumber::new(
        dxa.clone() * by.clone() * (m_a.z1.clone() - m_da.z1.clone())
            + xa.clone() * by.clone() * z1_rate.clone(),
        dxa * by.clone() * (m_a.w1.clone() - m_da.w1.clone()) + xa * by * w1_rate.clone(),
    )
}

/// Total derivative of `a ⊙ b` along a parameter, given component rates
/// `da`, `db` and the rates of `a`'s conjugate-map coefficients.
///
/// Differentiating the product formula termwise gives an expression in
/// `a`'s maps and their rates only; together with [`g_defect`] it
/// satisfies `conj_mul_rate = ȧ ⊙ b + a ⊙ ḃ + 𝒢` exactly.
#[allow(clippy::too_many_arguments)]
pub fn conj_mul_rate<S: Scalar>(
    a: &ExtNumber<S>,
    m_a: &MapCoefficients<S>,
    z1_rate: &Complex<S>,
    w1_rate: &Complex<S>,
    da: &ExtNumber<S>,
    b: &ExtNumber<S>,
    db: &ExtNumber<S>,
) -> ExtNumber<S> {
    let xa = a.x.conj();
    let ya = a.y.conj();
    let dxa = da.x.conj();
    let dya = da.y.conj();
    let i = Complex::new(S::zero(), S::one());
    ExtNumber::new(
        dxa.clone() * b.y.clone() * m_a.z1.clone()
            + xa.clone() * db.y.clone() * m_a.z1.clone()
            + xa.clone() * b.y.clone() * z1_rate.clone()
            + db.x.clone() * ya.clone()
            + b.x.clone() * dya.clone(),
        i.clone() * dxa.clone() * b.x.clone()
            + i * xa.clone() * db.x.clone()
            + dxa * b.y.clone() * m_a.w1.clone()
            + xa.clone() * db.y.clone() * m_a.w1.clone()
            + xa * b.y.clone() * w1_rate.clone()
            + dya * b.y.clone()
            + ya * db.y.clone(),
    )
}
