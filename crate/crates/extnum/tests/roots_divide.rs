use extnum::{conj_mul_with, Context64, Ext64, ExtError, ExtNumber, RootKind};
use num_complex::Complex;

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn standard_ctx() -> Context64 {
    Context64::new(c(0.0, 0.0), c(1.0, 0.0))
}

fn inf(v: &Ext64) -> f64 {
    v.x.re
        .abs()
        .max(v.x.im.abs())
        .max(v.y.re.abs())
        .max(v.y.im.abs())
}

#[test]
fn standard_square_roots_square_back() {
    let ctx = standard_ctx();
    let a = ExtNumber::new(c(1.0, 2.0), c(3.0, -1.0));
    let set = ctx.std_sqrt(&a).unwrap();
    assert!(!set.roots.is_empty());
    assert!(set.maps.is_none());
    for beta in &set.roots {
        let err = inf(&(ctx.std_mul(beta, beta) - a));
        assert!(err <= 1e-9, "residual {err}");
        // The negation of every root is also present.
        assert!(set.roots.iter().any(|other| inf(&(*other + *beta)) <= 1e-9));
    }
}

#[test]
fn standard_square_root_of_the_unit_exists() {
    let ctx = standard_ctx();
    let k: Ext64 = ExtNumber::unit_k();
    let set = ctx.std_sqrt(&k).unwrap();
    assert!(set.roots.len() >= 2);
    for beta in &set.roots {
        assert!(inf(&(ctx.std_mul(beta, beta) - k)) <= 1e-9);
    }
}

#[test]
fn standard_square_root_of_zero_is_zero() {
    let ctx = standard_ctx();
    let set = ctx.std_sqrt(&ExtNumber::zero()).unwrap();
    assert_eq!(set.roots.len(), 1);
    assert!(set.roots[0].is_zero());
}

#[test]
fn complex_targets_keep_their_complex_square_roots() {
    let ctx = standard_ctx();
    let a = ExtNumber::complex(c(-3.0, 4.0));
    let set = ctx.std_sqrt(&a).unwrap();
    let expected = c(-3.0, 4.0).sqrt();
    assert!(set
        .roots
        .iter()
        .any(|r| r.is_pure_complex() && (r.y - expected).norm() <= 1e-12));
    for beta in &set.roots {
        assert!(inf(&(ctx.std_mul(beta, beta) - a)) <= 1e-9);
    }
}

#[test]
fn conjugate_root_of_a_positive_real_is_its_complex_orbit() {
    let ctx = standard_ctx();
    let set = ctx.conj_root(&ExtNumber::complex(c(4.0, 0.0))).unwrap();
    assert_eq!(set.roots.len(), 4);
    assert!(set.maps.is_none());
    assert_eq!(set.residual, 0.0);
    assert!(set.roots.iter().all(|r| r.is_pure_complex()));
    assert!(set
        .roots
        .iter()
        .any(|r| (r.y - c(2.0, 0.0)).norm() <= 1e-12));
}

#[test]
fn conjugate_root_of_the_imaginary_unit_is_the_extended_unit() {
    let ctx = standard_ctx();
    let set = ctx.conj_root(&ExtNumber::complex(c(0.0, 1.0))).unwrap();
    assert_eq!(set.roots.len(), 4);
    assert!(set.maps.is_none());
    let k: Ext64 = ExtNumber::unit_k();
    assert!(set.roots.iter().any(|r| inf(&(*r - k)) <= 1e-12));
    // Mapless verification: the conjugate square of each orbit member
    // lands back on i.
    let id = extnum::MapCoefficients::identity();
    for r in &set.roots {
        let back = conj_mul_with(r, r, &id);
        assert!(inf(&(back - ExtNumber::complex(c(0.0, 1.0)))) <= 1e-12);
    }
}

/// Builds a target with a nonzero extended part that is known to factor
/// as a conjugate square: the self-pairing of `seed` under one of its
/// own solved map branches.
fn mixed_conj_square(ctx: &Context64, seed: &Ext64) -> Ext64 {
    let all = ctx.solve_maps_all(seed).unwrap();
    let m = all
        .roots
        .iter()
        .find(|m| conj_mul_with(seed, seed, m).x.norm() > 0.1)
        .expect("some map branch pairs the seed to a mixed number");
    conj_mul_with(seed, seed, m)
}

#[test]
fn conjugate_root_of_a_mixed_target_verifies_with_its_maps() {
    let ctx = standard_ctx();
    let a = mixed_conj_square(&ctx, &ExtNumber::new(c(0.9, 0.2), c(1.1, -0.5)));
    assert!(!a.is_pure_complex());
    let set = ctx.conj_root(&a).unwrap();
    assert_eq!(set.roots.len(), 4);
    let maps = set.maps.as_ref().expect("mixed roots carry maps");
    assert!(set.residual <= 1e-8, "recorded residual {}", set.residual);
    for beta in &set.roots {
        let back = conj_mul_with(beta, beta, maps);
        assert!(inf(&(back - a)) <= 1e-8);
    }
    // The shared maps are self-consistent for the first root.
    let m_res = ctx.map_system_residual(&set.roots[0], maps).unwrap();
    assert!(m_res <= 1e-8, "map residual {m_res}");
}

#[test]
fn extended_conjugate_root_of_a_positive_real_is_complex() {
    let ctx = standard_ctx();
    let set = ctx.ext_conj_root(&ExtNumber::complex(c(9.0, 0.0))).unwrap();
    assert!(set.roots.iter().all(|r| r.is_pure_complex()));
    assert!(set
        .roots
        .iter()
        .any(|r| (r.y - c(3.0, 0.0)).norm() <= 1e-12));
}

#[test]
fn extended_conjugate_root_verifies_through_both_map_steps() {
    let ctx = standard_ctx();
    // A target known to factor through the two-step pairing: the
    // bullet-image self-pairing of a seed under its own solved maps.
    let seed = ExtNumber::new(c(0.7, -0.3), c(0.9, 0.4));
    let all = ctx.solve_maps_all(&seed).unwrap();
    let a = all
        .roots
        .iter()
        .map(|m| {
            let b = m.bullet(&seed);
            conj_mul_with(&b, &b, m)
        })
        .find(|pair| pair.x.norm() > 0.1)
        .expect("some map branch gives a mixed two-step pairing");
    let set = ctx.ext_conj_root(&a).unwrap();
    let maps = set.maps.as_ref().expect("mixed roots carry maps");
    for beta in &set.roots {
        let b = maps.bullet(beta);
        let back = conj_mul_with(&b, &b, maps);
        assert!(inf(&(back - a)) <= 1e-8);
    }
}

#[test]
fn root_dispatcher_matches_the_direct_calls() {
    let ctx = standard_ctx();
    let a = ExtNumber::new(c(1.0, 2.0), c(3.0, -1.0));
    let via_kind = ctx.roots(&a, RootKind::Standard).unwrap();
    let direct = ctx.std_sqrt(&a).unwrap();
    assert_eq!(via_kind.roots.len(), direct.roots.len());
}

#[test]
fn division_round_trips_through_the_denominator() {
    let ctx = standard_ctx();
    let num = ExtNumber::new(c(1.0, 1.0), c(-3.0, 0.5));
    let den = mixed_conj_square(&ctx, &ExtNumber::new(c(1.2, -0.4), c(0.8, 0.6)));
    let report = ctx.divide_report(&num, &den).unwrap();
    assert!(
        report.check_residual <= 1e-7,
        "round trip residual {}",
        report.check_residual
    );
    let q = report.primary;
    assert!(inf(&(ctx.std_mul(&q, &den) - num)) <= 1e-7);
}

#[test]
fn both_division_constructions_agree_when_both_converge() {
    // Inverses are unique in a commutative ring, so whenever the
    // alternate root solve converges its quotient must match.
    let ctx = standard_ctx();
    let num = ExtNumber::new(c(0.5, -1.0), c(1.0, 2.0));
    // A positive real denominator is divisible through both
    // constructions via the pure complex root branch.
    let den = ExtNumber::complex(c(2.5, 0.0));
    let report = ctx.divide_report(&num, &den).unwrap();
    let gap = report
        .disagreement
        .expect("both constructions converge for a positive real");
    assert!(gap <= 1e-9, "constructions disagree by {gap}");
    // A mixed conjugate-square denominator: the primary converges, and
    // the alternate must agree whenever it converges too.
    let den = mixed_conj_square(&ctx, &ExtNumber::new(c(0.6, 0.3), c(1.0, -0.2)));
    let report = ctx.divide_report(&num, &den).unwrap();
    if let Some(gap) = report.disagreement {
        assert!(gap <= 1e-6, "constructions disagree by {gap}");
    }
}

#[test]
fn inverse_of_a_real_scalar_is_its_reciprocal() {
    let ctx = standard_ctx();
    let two = ExtNumber::complex(c(2.0, 0.0));
    let inv = ctx.inverse(&two).unwrap();
    assert!(inf(&(inv - ExtNumber::complex(c(0.5, 0.0)))) <= 1e-9);
}

#[test]
fn zero_and_zero_divisor_denominators_are_rejected() {
    let ctx = standard_ctx();
    let num = ExtNumber::one();
    assert!(matches!(
        ctx.divide(&num, &ExtNumber::zero()),
        Err(ExtError::DivisionByZero)
    ));
    // k + 1 lies on the annihilator locus of k² = 1.
    let zd = ExtNumber::new(c(1.0, 0.0), c(1.0, 0.0));
    assert!(ctx.zero_divisor_check(&zd).is_some());
    assert!(matches!(
        ctx.divide(&num, &zd),
        Err(ExtError::DivisionByZero)
    ));
    let zd2 = ExtNumber::new(c(1.0, 1.0), c(-1.0, -1.0));
    assert!(matches!(
        ctx.divide(&num, &zd2),
        Err(ExtError::DivisionByZero)
    ));
}

#[test]
fn dividing_by_a_constructed_invertible_number_round_trips() {
    let ctx = standard_ctx();
    let den = mixed_conj_square(&ctx, &ExtNumber::new(c(-0.5, 0.9), c(1.3, 0.4)));
    assert!(ctx.zero_divisor_check(&den).is_none());
    let inv = ctx.inverse(&den).unwrap();
    assert!(inf(&(ctx.std_mul(&inv, &den) - ExtNumber::one())) <= 1e-7);
}

#[test]
fn denominators_outside_the_pairing_image_report_divergence() {
    // The self-pairing of a number under its own solved maps sweeps a
    // three-parameter cone, so most denominators admit no conjugate
    // root; the solver must say so with diagnostics instead of
    // fabricating a quotient. The pure extended unit is such a case.
    let ctx = standard_ctx();
    let one = ExtNumber::one();
    match ctx.divide(&one, &Ext64::unit_k()) {
        Err(ExtError::NoConvergence { residual, starts }) => {
            assert!(residual.is_finite() && residual > 1e-3);
            assert_eq!(starts, 24);
        }
        other => panic!("expected divergence diagnostics, got {other:?}"),
    }
}
