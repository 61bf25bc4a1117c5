use extnum::{conj_add_with, conj_mul_with, AlgebraContext, ExtNumber, MapCoefficients};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::Ratio;
use proptest::prelude::*;

type Q = Ratio<BigInt>;
type ExtQ = ExtNumber<Q>;

fn q(n: i64, d: i64) -> Q {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn complex_q() -> impl Strategy<Value = Complex<Q>> {
    (rational(), rational()).prop_map(|(re, im)| Complex::new(re, im))
}

fn ext_q() -> impl Strategy<Value = ExtQ> {
    (complex_q(), complex_q()).prop_map(|(x, y)| ExtNumber::new(x, y))
}

fn maps_q() -> impl Strategy<Value = MapCoefficients<Q>> {
    (complex_q(), complex_q(), complex_q(), complex_q())
        .prop_map(|(z1, w1, z2, w2)| MapCoefficients::new(z1, w1, z2, w2))
}

fn ctx_q() -> impl Strategy<Value = AlgebraContext<Q>> {
    (complex_q(), complex_q()).prop_map(|(z0, w0)| AlgebraContext::new(z0, w0))
}

proptest! {
    #[test]
    fn addition_commutes_and_associates(a in ext_q(), b in ext_q(), c in ext_q()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a + (b + c));
    }

    #[test]
    fn zero_and_negation_behave(a in ext_q()) {
        prop_assert_eq!(a.clone() + ExtNumber::zero(), a.clone());
        prop_assert!((a.clone() + (-a)).is_zero());
    }

    #[test]
    fn standard_product_commutes(ctx in ctx_q(), a in ext_q(), b in ext_q()) {
        prop_assert_eq!(ctx.std_mul(&a, &b), ctx.std_mul(&b, &a));
    }

    #[test]
    fn standard_product_associates(ctx in ctx_q(), a in ext_q(), b in ext_q(), c in ext_q()) {
        let left = ctx.std_mul(&ctx.std_mul(&a, &b), &c);
        let right = ctx.std_mul(&a, &ctx.std_mul(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn one_is_the_multiplicative_identity(ctx in ctx_q(), a in ext_q()) {
        prop_assert_eq!(ctx.std_mul(&a, &ExtNumber::one()), a.clone());
        prop_assert_eq!(ctx.std_mul(&ExtNumber::one(), &a), a);
    }

    #[test]
    fn standard_product_distributes(ctx in ctx_q(), a in ext_q(), b in ext_q(), c in ext_q()) {
        let left = ctx.std_mul(&a, &(b.clone() + c.clone()));
        let right = ctx.std_mul(&a, &b) + ctx.std_mul(&a, &c);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unit_squares_to_its_defining_combination(ctx in ctx_q()) {
        let k: ExtQ = ExtNumber::unit_k();
        let square = ctx.std_mul(&k, &k);
        prop_assert_eq!(square, ExtNumber::new(ctx.z0().clone(), ctx.w0().clone()));
    }

    #[test]
    fn quartic_norm_collapses_to_a_perfect_square_at_default_r(ctx in ctx_q(), a in ext_q()) {
        let nx = a.x.norm_sqr();
        let ny = a.y.norm_sqr();
        let sum = nx + ny;
        prop_assert_eq!(ctx.abs4(&a), sum.clone() * sum);
    }

    #[test]
    fn quartic_norm_scales_quartically(ctx in ctx_q(), a in ext_q(), c in complex_q()) {
        let scaled = a.scale(&c);
        let nc = c.norm_sqr();
        prop_assert_eq!(ctx.abs4(&scaled), nc.clone() * nc * ctx.abs4(&a));
    }

    #[test]
    fn conjugate_sum_with_zero_on_the_left_is_identity(a in ext_q(), m in maps_q()) {
        prop_assert_eq!(conj_add_with(&ExtNumber::zero(), &a, &m), a);
    }

    #[test]
    fn conjugate_product_is_linear_in_the_right_factor(
        a in ext_q(), b in ext_q(), c in ext_q(), m in maps_q()
    ) {
        let left = conj_mul_with(&a, &(b.clone() + c.clone()), &m);
        let right = conj_mul_with(&a, &b, &m) + conj_mul_with(&a, &c, &m);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn complex_scalars_factor_out_of_conjugate_pair_products(
        a in ext_q(), b in ext_q(), m_a in maps_q(), m_b in maps_q(),
        c in complex_q(), d in complex_q()
    ) {
        let ca = a.scale(&c);
        let db = b.scale(&d);
        let left = conj_mul_with(&m_a.bullet(&ca), &m_b.bullet(&db), &m_a);
        let base = conj_mul_with(&m_a.bullet(&a), &m_b.bullet(&b), &m_a);
        prop_assert_eq!(left, base.scale(&(c.conj() * d)));
    }

    #[test]
    fn pairing_is_additive_in_the_last_slot(
        ctx in ctx_q(), a in ext_q(), b in ext_q(), g in ext_q(),
        d1 in ext_q(), d2 in ext_q(),
        m_a in maps_q(), m_b in maps_q(), m_g in maps_q()
    ) {
        let joint = ctx.inner4(&a, &m_a, &b, &m_b, &g, &m_g, &(d1.clone() + d2.clone()));
        let split = ctx.inner4(&a, &m_a, &b, &m_b, &g, &m_g, &d1)
            + ctx.inner4(&a, &m_a, &b, &m_b, &g, &m_g, &d2);
        prop_assert_eq!(joint, split);
    }

    #[test]
    fn conic_numbers_annihilate_exactly(u in complex_q()) {
        prop_assume!(u.norm_sqr() != q(0, 1));
        let ctx = AlgebraContext::new(Complex::new(q(0, 1), q(0, 1)), Complex::new(q(1, 1), q(0, 1)));
        let b = ExtNumber::new(u.clone(), u);
        prop_assert_eq!(ctx.conic_residual(&b), Complex::new(q(0, 1), q(0, 1)));
        let partner = ctx.annihilator(&b);
        prop_assert!(!partner.is_zero());
        prop_assert!(ctx.std_mul(&partner, &b).is_zero());
    }
}

#[test]
fn conjugate_sum_with_zero_on_the_right_is_not_identity() {
    // 0 ⊕ α = α always, but α ⊕ 0 rewrites the extended part through
    // the maps: with z₁ = 2 the unit k goes to 2k.
    let m = MapCoefficients::new(
        Complex::new(q(2, 1), q(0, 1)),
        Complex::new(q(0, 1), q(0, 1)),
        Complex::new(q(1, 1), q(0, 1)),
        Complex::new(q(0, 1), q(0, 1)),
    );
    let k: ExtQ = ExtNumber::unit_k();
    let folded = conj_add_with(&k, &ExtNumber::zero(), &m);
    assert_ne!(folded, k);
    assert_eq!(folded, ExtNumber::extended(Complex::new(q(2, 1), q(0, 1))));
}

#[test]
fn conjugate_product_has_no_two_sided_identity_candidate() {
    // e = 1 fails on the left: 1 ⊙ α conjugates nothing but α's parts
    // pass through the left slot's conjugation, so k ⊙ 1 picks up the
    // maps instead. With z₁ = 2, w₁ = 0: k ⊙ 1 = conj-map terms only.
    let m = MapCoefficients::new(
        Complex::new(q(2, 1), q(0, 1)),
        Complex::new(q(0, 1), q(0, 1)),
        Complex::new(q(1, 1), q(0, 1)),
        Complex::new(q(0, 1), q(0, 1)),
    );
    let k: ExtQ = ExtNumber::unit_k();
    let product = conj_mul_with(&k, &ExtNumber::one(), &m);
    assert_ne!(product, k);
}
