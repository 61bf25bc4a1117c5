//! Momenta, the energy function, equation-of-motion residuals, and the
//! fourth-order initial-value integrator, checked against closed-form
//! oscillator solutions.

mod common;

use common::TwoModeSolution;
use varcalc::{
    el_residual, el_residual_augmented, energy_h, free_particle, harmonic, integrate_el, momenta,
    pais_uhlenbeck, pure_curvature, AnalyticPath, Gradients, Path, PathState,
    SecondOrderLagrangian, Trajectory, VarError,
};

const W1: f64 = 1.0;
const W2: f64 = std::f64::consts::SQRT_2;

fn pu() -> SecondOrderLagrangian {
    pais_uhlenbeck(W1, W2)
}

fn dyadic_state() -> PathState {
    PathState::new(
        0.25,
        vec![0.5],
        vec![-0.25],
        vec![0.75],
        vec![0.125],
    )
}

#[test]
fn oracle_matches_its_own_initial_data_and_derivatives() {
    let sol = TwoModeSolution::from_initial(W1, W2, 1.0, 0.5, -0.3, 0.2);
    let st = sol.state(0.0);
    assert!((st.q[0] - 1.0).abs() < 1e-13);
    assert!((st.qd[0] - 0.5).abs() < 1e-13);
    assert!((st.qdd[0] + 0.3).abs() < 1e-13);
    assert!((st.qddd[0] - 0.2).abs() < 1e-13);

    // Each closed-form derivative agrees with a finite difference of
    // the order below it.
    let h = 1e-5;
    for order in 1..=4 {
        for &t in &[0.3, 1.7, 4.9] {
            let fd = (sol.eval(t + h, order - 1) - sol.eval(t - h, order - 1)) / (2.0 * h);
            assert!(
                (fd - sol.eval(t, order)).abs() < 1e-8,
                "order {order} at t={t}"
            );
        }
    }
}

#[test]
fn momenta_match_closed_forms() {
    let lag = pu();
    let st = dyadic_state();
    let (p, s) = momenta(&lag, &st);
    let a = W1 * W1 + W2 * W2;
    assert_eq!(p[0], -a * st.qd[0]);
    assert_eq!(s[0], st.qdd[0]);
}

#[test]
fn energy_of_acceleration_only_lagrangian() {
    let lag = pure_curvature();
    let st = dyadic_state();
    // h = q''^2 / 2 - q''' q'.
    let expected = 0.5 * st.qdd[0] * st.qdd[0] - st.qddd[0] * st.qd[0];
    assert!((energy_h(&lag, &st) - expected).abs() < 1e-12);
}

#[test]
fn energy_of_two_frequency_oscillator() {
    let lag = pu();
    let st = dyadic_state();
    let a = W1 * W1 + W2 * W2;
    let b = W1 * W1 * W2 * W2;
    let expected = 0.5 * st.qdd[0] * st.qdd[0] - 0.5 * a * st.qd[0] * st.qd[0]
        - 0.5 * b * st.q[0] * st.q[0]
        - st.qddd[0] * st.qd[0];
    assert!((energy_h(&lag, &st) - expected).abs() < 1e-12);
}

#[test]
fn residual_vanishes_on_single_mode_solution() {
    let lag = pu();
    let path = AnalyticPath::new(
        1,
        vec![
            Box::new(|t: f64| vec![t.sin()]),
            Box::new(|t: f64| vec![t.cos()]),
            Box::new(|t: f64| vec![-t.sin()]),
            Box::new(|t: f64| vec![-t.cos()]),
        ],
    );
    for &t in &[0.1, 1.3, 2.9, 5.4, 8.8] {
        let r = el_residual(&lag, &path, t).unwrap();
        assert!(r[0].abs() < 1e-8, "residual {} at t={t}", r[0]);
    }
}

fn doubled_frequency_path() -> AnalyticPath {
    AnalyticPath::new(
        1,
        vec![
            Box::new(|t: f64| vec![(2.0 * t).sin()]),
            Box::new(|t: f64| vec![2.0 * (2.0 * t).cos()]),
            Box::new(|t: f64| vec![-4.0 * (2.0 * t).sin()]),
            Box::new(|t: f64| vec![-8.0 * (2.0 * t).cos()]),
        ],
    )
}

#[test]
fn residual_detects_off_solution_path() {
    let lag = pu();
    let a = W1 * W1 + W2 * W2;
    let b = W1 * W1 * W2 * W2;
    let path = doubled_frequency_path();
    // For q = sin(2t): q'''' + a q'' + b q = (16 - 4a + b) sin(2t).
    let factor = 16.0 - 4.0 * a + b;
    for &t in &[0.4, 1.1, 2.6] {
        let r = el_residual(&lag, &path, t).unwrap();
        assert!(
            (r[0] - factor * (2.0 * t).sin()).abs() < 1e-7,
            "residual {} at t={t}",
            r[0]
        );
    }
}

#[test]
fn zero_multipliers_reproduce_the_plain_residual_exactly() {
    let lag = pu();
    let path = doubled_frequency_path();
    let kinetic = free_particle(1);
    let zero: &dyn Fn(f64) -> f64 = &|_| 0.0;
    for &t in &[0.4, 1.1, 2.6] {
        let plain = el_residual(&lag, &path, t).unwrap();
        let augmented =
            el_residual_augmented(&lag, &path, t, &[&kinetic], &[zero]).unwrap();
        assert_eq!(plain, augmented);
    }
}

#[test]
fn linear_multiplier_shifts_the_residual_by_its_derivative_terms() {
    let lag = pu();
    let path = doubled_frequency_path();
    let kinetic = free_particle(1);
    let ramp: &dyn Fn(f64) -> f64 = &|t| t;
    for &t in &[0.4, 1.1, 2.6] {
        let plain = el_residual(&lag, &path, t).unwrap();
        let augmented = el_residual_augmented(&lag, &path, t, &[&kinetic], &[ramp]).unwrap();
        // Adding lambda(t) * q'^2 / 2 contributes
        // -d/dt (lambda q') = -(q' + t q'') for lambda = t.
        let st = path.state(t);
        let expected = plain[0] - (st.qd[0] + t * st.qdd[0]);
        assert!((augmented[0] - expected).abs() < 1e-7);
    }
}

struct LowOrderPath;

impl Path for LowOrderPath {
    fn dim(&self) -> usize {
        1
    }
    fn order(&self) -> usize {
        2
    }
    fn eval(&self, t: f64, derivative: usize) -> Vec<f64> {
        match derivative {
            0 => vec![t * t],
            1 => vec![2.0 * t],
            _ => vec![2.0],
        }
    }
}

#[test]
fn residual_requires_fourth_order_smoothness() {
    let lag = pu();
    match el_residual(&lag, &LowOrderPath, 1.0) {
        Err(VarError::InsufficientSmoothness { available, needed }) => {
            assert_eq!(available, 2);
            assert_eq!(needed, 4);
        }
        other => panic!("expected a smoothness error, got {other:?}"),
    }
}

#[test]
fn interpolation_needs_at_least_two_samples() {
    let traj = Trajectory {
        times: vec![0.0],
        states: vec![dyadic_state()],
    };
    match traj.to_path() {
        Err(VarError::InsufficientSmoothness { .. }) => {}
        other => panic!("expected a smoothness error, got {other:?}"),
    }
}

#[test]
fn velocity_only_lagrangians_report_a_singular_hessian() {
    for lag in [harmonic(1, 1.0), free_particle(1)] {
        match integrate_el(&lag, &dyadic_state(), 1.0, 1e-2) {
            Err(VarError::SingularHessian { det }) => assert!(det.abs() < 1e-9),
            other => panic!("expected a singular Hessian, got {other:?}"),
        }
    }
}

#[test]
fn integrator_validates_configuration() {
    let lag = pu();
    assert!(matches!(
        integrate_el(&lag, &dyadic_state(), 1.0, 0.0),
        Err(VarError::Config(_))
    ));
    assert!(matches!(
        integrate_el(&lag, &dyadic_state(), 0.0, 1e-2),
        Err(VarError::Config(_))
    ));
    let bad_dim = PathState::new(0.0, vec![1.0, 2.0], vec![0.0; 2], vec![0.0; 2], vec![0.0; 2]);
    assert!(matches!(
        integrate_el(&lag, &bad_dim, 1.0, 1e-2),
        Err(VarError::Dimension { expected: 1, got: 2 })
    ));
}

#[test]
fn integration_tracks_the_closed_form_solution() {
    let lag = pu();
    let initial = PathState::new(0.0, vec![1.0], vec![0.5], vec![-0.3], vec![0.2]);
    let sol = TwoModeSolution::from_initial(W1, W2, 1.0, 0.5, -0.3, 0.2);
    let traj = integrate_el(&lag, &initial, 10.0, 1e-3).unwrap();
    let mut sup_q = 0.0f64;
    let mut sup_qd = 0.0f64;
    for (t, st) in traj.times.iter().zip(traj.states.iter()) {
        sup_q = sup_q.max((st.q[0] - sol.eval(*t, 0)).abs());
        sup_qd = sup_qd.max((st.qd[0] - sol.eval(*t, 1)).abs());
    }
    assert!(sup_q <= 1e-6, "coordinate deviation {sup_q}");
    assert!(sup_qd <= 1e-6, "velocity deviation {sup_qd}");
}

#[test]
fn integration_conserves_the_energy_function() {
    let lag = pu();
    let initial = PathState::new(0.0, vec![1.0], vec![0.5], vec![-0.3], vec![0.2]);
    let traj = integrate_el(&lag, &initial, 10.0, 1e-3).unwrap();
    let h0 = energy_h(&lag, &traj.states[0]);
    let drift = traj
        .states
        .iter()
        .map(|st| (energy_h(&lag, st) - h0).abs())
        .fold(0.0f64, f64::max);
    assert!(drift <= 1e-8, "energy drift {drift}");
}

#[test]
fn integrated_trajectory_satisfies_its_own_equation() {
    let mut lag = pu();
    let initial = PathState::new(0.0, vec![1.0], vec![0.5], vec![-0.3], vec![0.2]);
    let dt = 1e-3;
    let traj = integrate_el(&lag, &initial, 2.0, dt).unwrap();
    let spline = traj.to_path().unwrap();
    // Align the residual stencil with the sample grid so that every
    // sample the stencil reads is an integrator state rather than an
    // interpolated value.
    lag.set_stencil_step(dt);
    for j in (100..traj.len() - 100).step_by(100) {
        let r = el_residual(&lag, &spline, traj.times[j]).unwrap();
        assert!(
            r[0].abs() <= 1e-6,
            "self-consistency residual {} at t={}",
            r[0],
            traj.times[j]
        );
    }
}

#[test]
fn energy_rate_balances_the_explicit_time_dependence() {
    // L = q''^2 / 2 - q sin(t), whose equation of motion
    // q'''' = sin(t) is solved exactly by q = sin(t).
    let lag = SecondOrderLagrangian::with_gradients(
        1,
        Box::new(|t: f64, q: &[f64], _qd: &[f64], qdd: &[f64]| {
            0.5 * qdd[0] * qdd[0] - q[0] * t.sin()
        }),
        Gradients {
            dq: Box::new(|t, _q, _qd, _qdd| vec![-t.sin()]),
            dqd: Box::new(|_t, _q, _qd, _qdd| vec![0.0]),
            dqdd: Box::new(|_t, _q, _qd, qdd| vec![qdd[0]]),
        },
    );
    let path = AnalyticPath::new(
        1,
        vec![
            Box::new(|t: f64| vec![t.sin()]),
            Box::new(|t: f64| vec![t.cos()]),
            Box::new(|t: f64| vec![-t.sin()]),
            Box::new(|t: f64| vec![-t.cos()]),
        ],
    );
    // The path solves the equation of motion.
    for &t in &[0.7, 1.9, 3.1] {
        let r = el_residual(&lag, &path, t).unwrap();
        assert!(r[0].abs() < 1e-8);
    }
    // d(energy)/dt + dL/dt = 0 along solutions.
    let dt = 1e-3;
    let scale = 1.0;
    for &t in &[0.7, 1.9, 3.1] {
        let h_plus = energy_h(&lag, &path.state(t + dt));
        let h_minus = energy_h(&lag, &path.state(t - dt));
        let rate = (h_plus - h_minus) / (2.0 * dt);
        let st = path.state(t);
        let lt = lag.grad_t(st.t, &st.q, &st.qd, &st.qdd);
        assert!(
            (rate + lt).abs() <= 1e-6 * scale,
            "imbalance {} at t={t}",
            rate + lt
        );
    }
}
