//! Reports from the diagnostic checks: commutation gaps, mixed
//! conjugation orders, zero divisors, and the solved four-slot pairing.

use extnum::{conj_mul_with, Context64, Ext64, ExtError, ExtNumber};
use num_complex::Complex;

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn standard_ctx() -> Context64 {
    Context64::new(c(0.0, 0.0), c(1.0, 0.0))
}

fn inf(d: &Ext64) -> f64 {
    d.x.norm().max(d.y.norm())
}

#[test]
fn commutation_holds_when_the_right_slots_are_proportional() {
    let ctx = standard_ctx();
    let g1 = ExtNumber::new(c(1.0, 0.5), c(0.7, -0.2));
    let g2 = ExtNumber::new(c(-0.3, 1.1), c(1.2, 0.4));
    let m1 = ctx.solve_maps(&g1).unwrap();
    let m2 = ctx.solve_maps(&g2).unwrap();
    let d1 = ExtNumber::new(c(0.9, -0.6), c(0.5, 1.0));
    let d2 = d1.scale(&c(2.0, -1.5));
    let report = ctx.inner_commutation_check(&g1, &m1, &g2, &m2, &d1, &d2);
    assert!(report.holds, "residual {}", report.residual);
    assert!(report.prefactor.norm() <= 1e-12);
    assert!(inf(&(report.lhs - report.rhs)) <= 1e-10);
}

#[test]
fn commutation_gap_matches_its_factorization() {
    let ctx = standard_ctx();
    let g1 = ExtNumber::new(c(1.0, 0.5), c(0.7, -0.2));
    let g2 = ExtNumber::new(c(-0.3, 1.1), c(1.2, 0.4));
    let m1 = ctx.solve_maps(&g1).unwrap();
    let m2 = ctx.solve_maps(&g2).unwrap();
    let d1 = ExtNumber::new(c(0.9, -0.6), c(0.5, 1.0));
    let d2 = ExtNumber::new(c(-1.1, 0.3), c(0.2, -0.8));
    let report = ctx.inner_commutation_check(&g1, &m1, &g2, &m2, &d1, &d2);
    // The difference between the two slot orders always equals the
    // prefactor times the bracket, whether or not the swap holds.
    assert!(report.residual <= 1e-10, "residual {}", report.residual);
    let rebuilt = ExtNumber::new(report.bracket_e, report.bracket_i).scale(&report.prefactor);
    assert!(inf(&(rebuilt - report.factored)) <= 1e-12);
}

#[test]
fn commutation_reports_a_genuine_gap_for_generic_slots() {
    let ctx = standard_ctx();
    let g1 = ExtNumber::new(c(1.0, 0.0), c(0.5, 0.5));
    let g2 = ExtNumber::new(c(0.0, 1.0), c(1.0, -0.5));
    let m1 = ctx.solve_maps(&g1).unwrap();
    let m2 = ctx.solve_maps(&g2).unwrap();
    let d1 = ExtNumber::new(c(0.9, -0.6), c(0.5, 1.0));
    let d2 = ExtNumber::new(c(-1.1, 0.3), c(0.2, -0.8));
    let report = ctx.inner_commutation_check(&g1, &m1, &g2, &m2, &d1, &d2);
    assert!(!report.holds);
    assert!(report.prefactor.norm() > 1e-6);
    assert!(inf(&(report.lhs - report.rhs)) > 1e-6);
}

#[test]
fn conj_symmetry_of_a_number_with_itself_reduces_to_its_quartic_norm() {
    let ctx = standard_ctx();
    let a = ExtNumber::new(c(1.0, 1.0), c(2.0, -1.0));
    let report = ctx.conj_symmetry_check(&a, &a).unwrap();
    let norm4 = ctx.abs4(&a);
    // The self-pairing is the real quartic norm, whose roots stay on
    // the pure complex branch, collapsing both conjugation orders.
    assert!((report.p.y - c(norm4, 0.0)).norm() <= 1e-8 * (1.0 + norm4));
    assert!(report.p.x.norm() <= 1e-8 * (1.0 + norm4));
    assert!(report.holds, "residual {}", report.residual);
    let reduction = report.pure_reduction.expect("pure complex roots");
    assert!((reduction - c(norm4, 0.0)).norm() <= 1e-7 * (1.0 + norm4));
    assert!(inf(&(report.e1 - report.e2)) <= 1e-8 * (1.0 + norm4));
}

#[test]
fn conj_symmetry_propagates_divergence_for_an_unreachable_pairing() {
    // For a generic unequal pair the four-slot pairing has a mixed
    // square root, which generally lies outside the image of the
    // self-pairing map; the root solve's divergence must surface.
    let ctx = standard_ctx();
    let a = ExtNumber::new(c(1.0, 0.5), c(0.7, -0.2));
    let b = ExtNumber::new(c(-0.3, 1.1), c(1.2, 0.4));
    match ctx.conj_symmetry_check(&a, &b) {
        Err(ExtError::NoConvergence { residual, starts }) => {
            assert!(residual.is_finite());
            assert!(starts > 0);
        }
        Ok(report) => {
            // If every root solve converged the report must be coherent.
            assert!(report.residual.is_finite());
        }
        Err(other) => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn zero_divisor_partner_annihilates_on_the_locus() {
    let ctx = standard_ctx();
    // v² − u² = 0 with k² = 1: u = 1, v = 1 sits on the locus.
    let on = ExtNumber::new(c(1.0, 0.0), c(1.0, 0.0));
    let partner = ctx.zero_divisor_check(&on).expect("locus member");
    assert!(!partner.is_zero());
    assert!(inf(&ctx.std_mul(&partner, &on)) <= 1e-12);

    let complex_only = ExtNumber::complex(c(3.0, -2.0));
    assert!(ctx.zero_divisor_check(&complex_only).is_none());
    assert!(ctx.zero_divisor_check(&ExtNumber::one()).is_none());
    let unit: Ext64 = ExtNumber::unit_k();
    assert!(ctx.zero_divisor_check(&unit).is_none());
}

#[test]
fn solved_pairing_matches_the_manual_evaluation() {
    let ctx = standard_ctx();
    let a = ExtNumber::new(c(1.0, 0.5), c(0.7, -0.2));
    let b = ExtNumber::new(c(-0.3, 1.1), c(1.2, 0.4));
    let g = ExtNumber::new(c(0.9, -0.6), c(0.5, 1.0));
    let d = ExtNumber::new(c(-1.1, 0.3), c(0.2, -0.8));
    let auto = ctx.inner4_solved(&a, &b, &g, &d).unwrap();
    let m_a = ctx.solve_maps(&a).unwrap();
    let m_b = ctx.solve_maps(&b).unwrap();
    let m_g = ctx.solve_maps(&g).unwrap();
    let manual = ctx.std_mul(
        &conj_mul_with(&m_a.bullet(&a), &m_b.bullet(&b), &m_a),
        &conj_mul_with(&g, &d, &m_g),
    );
    assert!(inf(&(auto - manual)) <= 1e-12);
}
