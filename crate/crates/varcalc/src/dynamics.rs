//! Momenta, the energy function, equation-of-motion residuals, and
//! direct integration of the fourth-order dynamics.

use nalgebra::{DMatrix, DVector};

use crate::error::VarError;
use crate::lagrangian::{Arg, SecondOrderLagrangian};
use crate::state::{Path, PathState, Trajectory};

/// First and second momenta at a state: the velocity gradient and the
/// acceleration gradient of the Lagrangian.
pub fn momenta(lag: &SecondOrderLagrangian, state: &PathState) -> (Vec<f64>, Vec<f64>) {
    let p = lag.grad(Arg::Qd, state.t, &state.q, &state.qd, &state.qdd);
    let s = lag.grad(Arg::Qdd, state.t, &state.q, &state.qd, &state.qdd);
    (p, s)
}

/// Five-point central first derivative from samples at
/// `-2h, -h, h, 2h`.
fn d1(m2: f64, m1: f64, p1: f64, p2: f64, h: f64) -> f64 {
    (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h)
}

/// Five-point central second derivative from samples at
/// `-2h, -h, 0, h, 2h`.
fn d2(m2: f64, m1: f64, c0: f64, p1: f64, p2: f64, h: f64) -> f64 {
    (-m2 + 16.0 * m1 - 30.0 * c0 + 16.0 * p1 - p2) / (12.0 * h * h)
}

/// The local polynomial curve through a state with vanishing fourth
/// derivative; total time derivatives at the state are evaluated along
/// it, which is exact because they depend only on the jet the state
/// carries.
pub(crate) fn taylor_state(state: &PathState, tau: f64) -> PathState {
    let n = state.dim();
    let mut q = Vec::with_capacity(n);
    let mut qd = Vec::with_capacity(n);
    let mut qdd = Vec::with_capacity(n);
    let mut qddd = Vec::with_capacity(n);
    for i in 0..n {
        q.push(
            state.q[i]
                + tau * (state.qd[i]
                    + tau * (state.qdd[i] / 2.0 + tau * state.qddd[i] / 6.0)),
        );
        qd.push(state.qd[i] + tau * (state.qdd[i] + tau * state.qddd[i] / 2.0));
        qdd.push(state.qdd[i] + tau * state.qddd[i]);
        qddd.push(state.qddd[i]);
    }
    PathState {
        t: state.t + tau,
        q,
        qd,
        qdd,
        qddd,
    }
}

/// Total time derivative of the second momenta at a state.
pub fn momentum2_rate(lag: &SecondOrderLagrangian, state: &PathState) -> Vec<f64> {
    let h = lag.stencil_step();
    let sample = |tau: f64| {
        let st = taylor_state(state, tau);
        lag.grad(Arg::Qdd, st.t, &st.q, &st.qd, &st.qdd)
    };
    let (m2, m1, p1, p2) = (
        sample(-2.0 * h),
        sample(-h),
        sample(h),
        sample(2.0 * h),
    );
    (0..state.dim())
        .map(|i| d1(m2[i], m1[i], p1[i], p2[i], h))
        .collect()
}

/// The conserved energy function of time-independent second-order
/// dynamics: momenta contracted with velocities and accelerations,
/// corrected by the rate of the second momenta, minus the Lagrangian.
pub fn energy_h(lag: &SecondOrderLagrangian, state: &PathState) -> f64 {
    let (p, s) = momenta(lag, state);
    let sdot = momentum2_rate(lag, state);
    let mut h = -lag.value(state.t, &state.q, &state.qd, &state.qdd);
    for i in 0..state.dim() {
        h += p[i] * state.qd[i] - sdot[i] * state.qd[i] + s[i] * state.qdd[i];
    }
    h
}

/// Shared stencil: residual components
/// `D2[s_i] - D1[p_i] + gq_i`
/// from a sampler returning the velocity- and acceleration-gradients
/// of the integrand at time offsets around the evaluation point.
fn residual_from_samples<F>(n: usize, h: f64, sample: F, gq: &[f64]) -> Vec<f64>
where
    F: Fn(f64) -> (Vec<f64>, Vec<f64>),
{
    let (pm2, sm2) = sample(-2.0 * h);
    let (pm1, sm1) = sample(-h);
    let (_p0, s0) = sample(0.0);
    let (pp1, sp1) = sample(h);
    let (pp2, sp2) = sample(2.0 * h);
    (0..n)
        .map(|i| {
            d2(sm2[i], sm1[i], s0[i], sp1[i], sp2[i], h) - d1(pm2[i], pm1[i], pp1[i], pp2[i], h)
                + gq[i]
        })
        .collect()
}

/// Equation-of-motion residual of a path at time `t`: the second total
/// derivative of the second momenta, minus the first total derivative
/// of the first momenta, plus the coordinate gradient. Zero on
/// solutions.
pub fn el_residual(
    lag: &SecondOrderLagrangian,
    path: &dyn Path,
    t: f64,
) -> Result<Vec<f64>, VarError> {
    if path.order() < 4 {
        return Err(VarError::InsufficientSmoothness {
            available: path.order(),
            needed: 4,
        });
    }
    let h = lag.stencil_step();
    let st0 = path.state(t);
    let gq = lag.grad(Arg::Q, st0.t, &st0.q, &st0.qd, &st0.qdd);
    let sample = |tau: f64| {
        let st = path.state(t + tau);
        (
            lag.grad(Arg::Qd, st.t, &st.q, &st.qd, &st.qdd),
            lag.grad(Arg::Qdd, st.t, &st.q, &st.qd, &st.qdd),
        )
    };
    Ok(residual_from_samples(lag.dim(), h, sample, &gq))
}

/// Residual of the multiplier-augmented integrand: the Lagrangian plus
/// time-dependent multiples of scalar constraint functions. With all
/// multipliers identically zero this equals [`el_residual`] exactly:
/// every constraint sample is scaled to zero, so the added stencil
/// contributions are exact floating-point zeros.
pub fn el_residual_augmented(
    lag: &SecondOrderLagrangian,
    path: &dyn Path,
    t: f64,
    constraints: &[&SecondOrderLagrangian],
    multipliers: &[&dyn Fn(f64) -> f64],
) -> Result<Vec<f64>, VarError> {
    if constraints.len() != multipliers.len() {
        return Err(VarError::Dimension {
            expected: constraints.len(),
            got: multipliers.len(),
        });
    }
    for c in constraints {
        if c.dim() != lag.dim() {
            return Err(VarError::Dimension {
                expected: lag.dim(),
                got: c.dim(),
            });
        }
    }
    let mut residual = el_residual(lag, path, t)?;
    let h = lag.stencil_step();
    let st0 = path.state(t);
    for (c, lambda) in constraints.iter().zip(multipliers.iter()) {
        let gq = c.grad(Arg::Q, st0.t, &st0.q, &st0.qd, &st0.qdd);
        let l0 = lambda(t);
        let sample = |tau: f64| {
            let st = path.state(t + tau);
            let l = lambda(t + tau);
            let mut p = c.grad(Arg::Qd, st.t, &st.q, &st.qd, &st.qdd);
            let mut s = c.grad(Arg::Qdd, st.t, &st.q, &st.qd, &st.qdd);
            for v in p.iter_mut() {
                *v *= l;
            }
            for v in s.iter_mut() {
                *v *= l;
            }
            (p, s)
        };
        let scaled_gq: Vec<f64> = gq.iter().map(|g| l0 * g).collect();
        let extra = residual_from_samples(lag.dim(), h, sample, &scaled_gq);
        for (r, e) in residual.iter_mut().zip(extra.iter()) {
            *r += e;
        }
    }
    Ok(residual)
}

/// The part of the equation of motion that survives when the fourth
/// derivative is set to zero at the state; together with the
/// acceleration Hessian it reconstitutes the full residual.
pub fn euler_k(lag: &SecondOrderLagrangian, state: &PathState) -> DVector<f64> {
    let h = lag.stencil_step();
    let gq = lag.grad(Arg::Q, state.t, &state.q, &state.qd, &state.qdd);
    let sample = |tau: f64| {
        let st = taylor_state(state, tau);
        (
            lag.grad(Arg::Qd, st.t, &st.q, &st.qd, &st.qdd),
            lag.grad(Arg::Qdd, st.t, &st.q, &st.qd, &st.qdd),
        )
    };
    DVector::from_vec(residual_from_samples(lag.dim(), h, sample, &gq))
}

/// Splits the equation of motion at a state into its affine pieces in
/// the fourth derivative: the acceleration Hessian `W2` and the
/// remainder `K`, so that the residual is `W2 * q'''' + K`.
pub fn euler_affine(
    lag: &SecondOrderLagrangian,
    state: &PathState,
) -> (DMatrix<f64>, DVector<f64>) {
    let w2 = lag.w2(state.t, &state.q, &state.qd, &state.qdd);
    (w2, euler_k(lag, state))
}

/// Relative singular-value cutoff below which a Hessian counts as
/// rank-deficient.
pub const RANK_TOL: f64 = 1e-10;

fn solve_fourth(lag: &SecondOrderLagrangian, state: &PathState) -> Result<Vec<f64>, VarError> {
    let (w2, k) = euler_affine(lag, state);
    let svd = w2.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smax <= 0.0 || smin <= RANK_TOL * smax {
        return Err(VarError::SingularHessian {
            det: w2.determinant(),
        });
    }
    let sol = svd
        .solve(&(-k), 0.0)
        .map_err(|e| VarError::Config(e.to_string()))?;
    Ok(sol.iter().copied().collect())
}

#[derive(Clone)]
struct Flow {
    q: Vec<f64>,
    qd: Vec<f64>,
    qdd: Vec<f64>,
    qddd: Vec<f64>,
}

impl Flow {
    fn axpy(&mut self, a: f64, d: &FlowRate) {
        for i in 0..self.q.len() {
            self.q[i] += a * d.dq[i];
            self.qd[i] += a * d.dqd[i];
            self.qdd[i] += a * d.dqdd[i];
            self.qddd[i] += a * d.dqddd[i];
        }
    }

    fn to_state(&self, t: f64) -> PathState {
        PathState {
            t,
            q: self.q.clone(),
            qd: self.qd.clone(),
            qdd: self.qdd.clone(),
            qddd: self.qddd.clone(),
        }
    }
}

struct FlowRate {
    dq: Vec<f64>,
    dqd: Vec<f64>,
    dqdd: Vec<f64>,
    dqddd: Vec<f64>,
}

fn flow_rate(lag: &SecondOrderLagrangian, t: f64, y: &Flow) -> Result<FlowRate, VarError> {
    let state = y.to_state(t);
    let q4 = solve_fourth(lag, &state)?;
    Ok(FlowRate {
        dq: y.qd.clone(),
        dqd: y.qdd.clone(),
        dqdd: y.qddd.clone(),
        dqddd: q4,
    })
}

/// Integrates the fourth-order equations of motion by the classical
/// fourth-order Runge-Kutta scheme, solving the acceleration Hessian
/// for the fourth derivative at every stage.
///
/// Fails with [`VarError::SingularHessian`] when that Hessian is
/// rank-deficient; degenerate Lagrangians should go through the
/// constraint scan instead.
pub fn integrate_el(
    lag: &SecondOrderLagrangian,
    initial: &PathState,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory, VarError> {
    if initial.dim() != lag.dim() {
        return Err(VarError::Dimension {
            expected: lag.dim(),
            got: initial.dim(),
        });
    }
    if !(dt > 0.0) || !(t_end > initial.t) {
        return Err(VarError::Config(
            "need a positive step and an end time after the initial time".into(),
        ));
    }
    let mut y = Flow {
        q: initial.q.clone(),
        qd: initial.qd.clone(),
        qdd: initial.qdd.clone(),
        qddd: initial.qddd.clone(),
    };
    let mut t = initial.t;
    let mut times = vec![t];
    let mut states = vec![initial.clone()];
    let total = t_end - initial.t;
    let steps = (total / dt).round().max(1.0) as usize;
    let step = total / steps as f64;
    for _ in 0..steps {
        let k1 = flow_rate(lag, t, &y)?;
        let mut y2 = y.clone();
        y2.axpy(0.5 * step, &k1);
        let k2 = flow_rate(lag, t + 0.5 * step, &y2)?;
        let mut y3 = y.clone();
        y3.axpy(0.5 * step, &k2);
        let k3 = flow_rate(lag, t + 0.5 * step, &y3)?;
        let mut y4 = y.clone();
        y4.axpy(step, &k3);
        let k4 = flow_rate(lag, t + step, &y4)?;
        y.axpy(step / 6.0, &k1);
        y.axpy(step / 3.0, &k2);
        y.axpy(step / 3.0, &k3);
        y.axpy(step / 6.0, &k4);
        t += step;
        times.push(t);
        states.push(y.to_state(t));
    }
    Ok(Trajectory { times, states })
}
