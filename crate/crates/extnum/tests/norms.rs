use approx::assert_relative_eq;
use extnum::{isotropy_scan, phi_theta, Context64, ExtError, ExtNumber};
use num_complex::Complex;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

proptest! {
    // Integer components keep every product exact in floating point, so
    // the orbit spread must be exactly zero bit-for-bit when R = 2.
    #[test]
    fn default_r_is_isotropic_on_exact_integer_orbits(
        a in -1000i32..=1000, b in -1000i32..=1000,
        g in -1000i32..=1000, d in -1000i32..=1000
    ) {
        let tuple = [a as f64, b as f64, g as f64, d as f64];
        let report = &isotropy_scan(tuple, &[2.0])[0];
        prop_assert_eq!(report.orbit_size, 384);
        prop_assert_eq!(report.max_spread, 0.0);
        prop_assert!(report.violation.is_none());
    }
}

#[test]
fn other_r_values_break_isotropy_with_a_witness_pair() {
    let reports = isotropy_scan([1.0, 0.0, 1.0, 0.0], &[2.0, 3.0]);
    assert_eq!(reports[0].max_spread, 0.0);
    let bad = &reports[1];
    assert!(bad.max_spread > 0.0);
    let witness = bad.violation.as_ref().expect("spread needs a witness");
    // Rearranging (1,0,1,0) into (1,1,0,0) moves a unit between the two
    // complex components: 1 + 1 + R vs 4 + 0 + 0.
    assert_eq!(witness.min_value, 4.0);
    assert_eq!(witness.max_value, 5.0);
}

#[test]
fn quartic_norm_of_a_balanced_mixed_number_is_sixteen() {
    let ctx = Context64::new(c(0.0, 0.0), c(1.0, 0.0));
    let a = ExtNumber::new(c(1.0, 1.0), c(1.0, 1.0));
    assert_eq!(ctx.abs4(&a), 16.0);
    assert_eq!(ctx.abs(&a), 2.0);
}

#[test]
fn shape_parameters_match_their_definitions() {
    let a = ExtNumber::new(c(1.0, 1.0), c(2.0, 0.0));
    let shape = phi_theta(&a).unwrap();
    assert_relative_eq!(shape.phi, 2f64.sqrt() / 2.0, max_relative = 1e-15);
    assert_relative_eq!(shape.theta, std::f64::consts::FRAC_PI_4, max_relative = 1e-15);
}

#[test]
fn shape_parameters_ignore_overall_complex_scale() {
    let a = ExtNumber::new(c(1.3, -0.4), c(0.6, 0.9));
    let base = phi_theta(&a).unwrap();
    for scale in [c(2.0, 0.0), c(0.0, -3.0), c(1.5, 2.5)] {
        let scaled = phi_theta(&a.scale(&scale)).unwrap();
        assert_relative_eq!(scaled.phi, base.phi, max_relative = 1e-12);
        let wrapped = (scaled.theta - base.theta).rem_euclid(2.0 * std::f64::consts::PI);
        let dist = wrapped.min(2.0 * std::f64::consts::PI - wrapped);
        assert!(dist <= 1e-12, "theta moved by {dist}");
    }
}

#[test]
fn degenerate_numbers_have_no_shape() {
    assert!(matches!(
        phi_theta(&ExtNumber::complex(c(1.0, 2.0))),
        Err(ExtError::Degenerate(_))
    ));
    assert!(matches!(
        phi_theta(&ExtNumber::extended(c(1.0, 2.0))),
        Err(ExtError::Degenerate(_))
    ));
}
