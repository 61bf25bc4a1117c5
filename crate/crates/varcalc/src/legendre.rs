//! Passage to canonical variables: inversion of the momentum map, the
//! second-order Hamiltonian with its partial derivatives, and the
//! two-pair canonical formulation integrated as a first-order system.

use nalgebra::{DMatrix, DVector};

use crate::dynamics::{momentum2_rate, RANK_TOL};
use crate::error::VarError;
use crate::lagrangian::{Arg, SecondOrderLagrangian};
use crate::state::{PathState, PhasePoint};

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 60;

/// Damped Newton iteration on a square system with a caller-supplied
/// Jacobian. Steps come from a pseudo-inverse solve, so a momentum map
/// with a degenerate block still converges whenever the target is
/// consistent; inconsistent targets stall and report no convergence.
fn damped_newton<F, J>(
    mut x: DVector<f64>,
    residual: F,
    jacobian: J,
    tol: f64,
) -> Result<DVector<f64>, VarError>
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
    J: Fn(&DVector<f64>) -> DMatrix<f64>,
{
    let mut r = residual(&x);
    let mut best = r.amax();
    for iter in 0..NEWTON_MAX_ITER {
        if best <= tol {
            return Ok(x);
        }
        let svd = jacobian(&x).svd(true, true);
        let smax = svd.singular_values.iter().fold(0.0f64, |m, v| m.max(*v));
        let eps = (RANK_TOL * smax).max(f64::MIN_POSITIVE);
        let step = svd.solve(&r, eps).map_err(|_| VarError::NoConvergence {
            residual: best,
            iters: iter,
        })?;
        let mut alpha = 1.0;
        let mut advanced = false;
        for _ in 0..20 {
            let candidate = &x - alpha * &step;
            let rc = residual(&candidate);
            if rc.amax() < best {
                x = candidate;
                r = rc;
                best = r.amax();
                advanced = true;
                break;
            }
            alpha *= 0.5;
        }
        if !advanced {
            return Err(VarError::NoConvergence {
                residual: best,
                iters: iter,
            });
        }
    }
    if best <= tol {
        Ok(x)
    } else {
        Err(VarError::NoConvergence {
            residual: best,
            iters: NEWTON_MAX_ITER,
        })
    }
}

/// Recovers velocities and accelerations from the momenta by solving
/// the two gradient equations with Newton iteration.
pub fn invert_momenta(
    lag: &SecondOrderLagrangian,
    t: f64,
    q: &[f64],
    p: &[f64],
    s: &[f64],
    guess: Option<(&[f64], &[f64])>,
) -> Result<(Vec<f64>, Vec<f64>), VarError> {
    let n = lag.dim();
    let mut x0 = DVector::zeros(2 * n);
    if let Some((gd, gdd)) = guess {
        for i in 0..n {
            x0[i] = gd[i];
            x0[n + i] = gdd[i];
        }
    }
    let split = |x: &DVector<f64>| -> (Vec<f64>, Vec<f64>) {
        (x.as_slice()[..n].to_vec(), x.as_slice()[n..].to_vec())
    };
    let residual = |x: &DVector<f64>| -> DVector<f64> {
        let (qd, qdd) = split(x);
        let gp = lag.grad(Arg::Qd, t, q, &qd, &qdd);
        let gs = lag.grad(Arg::Qdd, t, q, &qd, &qdd);
        DVector::from_fn(2 * n, |i, _| {
            if i < n {
                gp[i] - p[i]
            } else {
                gs[i - n] - s[i - n]
            }
        })
    };
    let jacobian = |x: &DVector<f64>| -> DMatrix<f64> {
        let (qd, qdd) = split(x);
        let mut j = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for jj in 0..n {
                j[(i, jj)] = lag.second(Arg::Qd, i, Arg::Qd, jj, t, q, &qd, &qdd);
                j[(i, n + jj)] = lag.second(Arg::Qd, i, Arg::Qdd, jj, t, q, &qd, &qdd);
                j[(n + i, jj)] = lag.second(Arg::Qdd, i, Arg::Qd, jj, t, q, &qd, &qdd);
                j[(n + i, n + jj)] = lag.second(Arg::Qdd, i, Arg::Qdd, jj, t, q, &qd, &qdd);
            }
        }
        j
    };
    let scale = 1.0
        + p.iter().fold(0.0f64, |m, v| m.max(v.abs()))
        + s.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sol = damped_newton(x0, residual, jacobian, NEWTON_TOL * scale)?;
    Ok(split(&sol))
}

/// The Hamiltonian of the two-momentum formalism at one phase point,
/// with the recovered velocities and the canonical right-hand sides.
#[derive(Debug, Clone)]
pub struct HamiltonianReport {
    /// Hamiltonian value.
    pub h: f64,
    /// Velocities recovered from the momenta.
    pub qd: Vec<f64>,
    /// Accelerations recovered from the momenta.
    pub qdd: Vec<f64>,
    /// Coordinate partials of the Hamiltonian.
    pub dh_dq: Vec<f64>,
    /// First-momentum partials; equal the velocities on consistency.
    pub dh_dp: Vec<f64>,
    /// Second-momentum partials; equal the accelerations.
    pub dh_ds: Vec<f64>,
    /// Explicit time partial; opposite of the Lagrangian's.
    pub dh_dt: f64,
}

fn hamiltonian_value(
    lag: &SecondOrderLagrangian,
    t: f64,
    q: &[f64],
    p: &[f64],
    s: &[f64],
    guess: Option<(&[f64], &[f64])>,
) -> Result<(f64, Vec<f64>, Vec<f64>), VarError> {
    let (qd, qdd) = invert_momenta(lag, t, q, p, s, guess)?;
    let mut h = -lag.value(t, q, &qd, &qdd);
    for i in 0..lag.dim() {
        h += p[i] * qd[i] + s[i] * qdd[i];
    }
    Ok((h, qd, qdd))
}

/// Evaluates the Hamiltonian `sum(p q' + s q'') - L` alone at a phase
/// point, returning its value with the recovered velocities and
/// accelerations. Unlike the full report this never probes shifted
/// momenta, so it also serves degenerate Lagrangians whose momentum
/// map only reaches part of momentum space.
pub fn hamiltonian_at(
    lag: &SecondOrderLagrangian,
    t: f64,
    point: &PhasePoint,
) -> Result<(f64, Vec<f64>, Vec<f64>), VarError> {
    if point.dim() != lag.dim() {
        return Err(VarError::Dimension {
            expected: lag.dim(),
            got: point.dim(),
        });
    }
    hamiltonian_value(lag, t, &point.q, &point.p, &point.s, None)
}

/// Evaluates the Hamiltonian `sum(p q' + s q'') - L` at a phase point
/// and differentiates it numerically in every canonical direction.
pub fn legendre_hamiltonian(
    lag: &SecondOrderLagrangian,
    t: f64,
    point: &PhasePoint,
) -> Result<HamiltonianReport, VarError> {
    let n = lag.dim();
    if point.dim() != n {
        return Err(VarError::Dimension {
            expected: n,
            got: point.dim(),
        });
    }
    let (h, qd, qdd) = hamiltonian_value(lag, t, &point.q, &point.p, &point.s, None)?;
    let warm = Some((qd.as_slice(), qdd.as_slice()));
    let fd = 1e-6;
    let mut dh_dq = Vec::with_capacity(n);
    let mut dh_dp = Vec::with_capacity(n);
    let mut dh_ds = Vec::with_capacity(n);
    let probe = |q: &[f64], p: &[f64], s: &[f64], t: f64| -> Result<f64, VarError> {
        Ok(hamiltonian_value(lag, t, q, p, s, warm)?.0)
    };
    for i in 0..n {
        let step = fd * (1.0 + point.q[i].abs());
        let mut qq = point.q.clone();
        qq[i] = point.q[i] + step;
        let plus = probe(&qq, &point.p, &point.s, t)?;
        qq[i] = point.q[i] - step;
        let minus = probe(&qq, &point.p, &point.s, t)?;
        dh_dq.push((plus - minus) / (2.0 * step));
    }
    for i in 0..n {
        let step = fd * (1.0 + point.p[i].abs());
        let mut pp = point.p.clone();
        pp[i] = point.p[i] + step;
        let plus = probe(&point.q, &pp, &point.s, t)?;
        pp[i] = point.p[i] - step;
        let minus = probe(&point.q, &pp, &point.s, t)?;
        dh_dp.push((plus - minus) / (2.0 * step));
    }
    for i in 0..n {
        let step = fd * (1.0 + point.s[i].abs());
        let mut ss = point.s.clone();
        ss[i] = point.s[i] + step;
        let plus = probe(&point.q, &point.p, &ss, t)?;
        ss[i] = point.s[i] - step;
        let minus = probe(&point.q, &point.p, &ss, t)?;
        dh_ds.push((plus - minus) / (2.0 * step));
    }
    let tstep = fd * (1.0 + t.abs());
    let dh_dt = (probe(&point.q, &point.p, &point.s, t + tstep)?
        - probe(&point.q, &point.p, &point.s, t - tstep)?)
        / (2.0 * tstep);
    Ok(HamiltonianReport {
        h,
        qd,
        qdd,
        dh_dq,
        dh_dp,
        dh_ds,
        dh_dt,
    })
}

/// State of the two-pair canonical system: coordinates, velocities as
/// second coordinates, and their conjugate momenta.
#[derive(Debug, Clone)]
pub struct CanonicalState {
    /// Time.
    pub t: f64,
    /// First canonical coordinates (the configuration).
    pub q1: Vec<f64>,
    /// Second canonical coordinates (the velocities).
    pub q2: Vec<f64>,
    /// Momenta conjugate to `q1`.
    pub p1: Vec<f64>,
    /// Momenta conjugate to `q2`.
    pub p2: Vec<f64>,
}

/// Trajectory of the two-pair canonical system.
#[derive(Debug, Clone)]
pub struct CanonicalTrajectory {
    /// Sample times.
    pub times: Vec<f64>,
    /// One canonical state per time.
    pub states: Vec<CanonicalState>,
}

/// Maps a configuration-space state to canonical two-pair data. The
/// first momentum subtracts the total rate of the second momentum,
/// which uses the third derivative the state carries.
pub fn canonical_initial(lag: &SecondOrderLagrangian, state: &PathState) -> CanonicalState {
    let p = lag.grad(Arg::Qd, state.t, &state.q, &state.qd, &state.qdd);
    let s = lag.grad(Arg::Qdd, state.t, &state.q, &state.qd, &state.qdd);
    let sdot = momentum2_rate(lag, state);
    let p1 = (0..state.dim()).map(|i| p[i] - sdot[i]).collect();
    CanonicalState {
        t: state.t,
        q1: state.q.clone(),
        q2: state.qd.clone(),
        p1,
        p2: s,
    }
}

/// Solves the acceleration from `q1, q2, p2` by Newton iteration on
/// the second-momentum equation.
pub fn recover_acceleration(
    lag: &SecondOrderLagrangian,
    t: f64,
    q1: &[f64],
    q2: &[f64],
    p2: &[f64],
    guess: Option<&[f64]>,
) -> Result<Vec<f64>, VarError> {
    let n = lag.dim();
    let x0 = match guess {
        Some(g) => DVector::from_column_slice(g),
        None => DVector::zeros(n),
    };
    let residual = |x: &DVector<f64>| -> DVector<f64> {
        let a: Vec<f64> = x.iter().copied().collect();
        let gs = lag.grad(Arg::Qdd, t, q1, q2, &a);
        DVector::from_fn(n, |i, _| gs[i] - p2[i])
    };
    let jacobian = |x: &DVector<f64>| -> DMatrix<f64> {
        let a: Vec<f64> = x.iter().copied().collect();
        let mut j = DMatrix::zeros(n, n);
        for i in 0..n {
            for jj in 0..n {
                j[(i, jj)] = lag.second(Arg::Qdd, i, Arg::Qdd, jj, t, q1, q2, &a);
            }
        }
        j
    };
    let scale = 1.0 + p2.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sol = damped_newton(x0, residual, jacobian, NEWTON_TOL * scale)?;
    Ok(sol.iter().copied().collect())
}

/// The two-pair Hamiltonian
/// `p1 . q2 + p2 . a - L(q1, q2, a)` with the acceleration `a`
/// recovered from the second momentum equation.
pub fn canonical_hamiltonian(
    lag: &SecondOrderLagrangian,
    state: &CanonicalState,
    guess: Option<&[f64]>,
) -> Result<f64, VarError> {
    let a = recover_acceleration(lag, state.t, &state.q1, &state.q2, &state.p2, guess)?;
    let mut h = -lag.value(state.t, &state.q1, &state.q2, &a);
    for i in 0..lag.dim() {
        h += state.p1[i] * state.q2[i] + state.p2[i] * a[i];
    }
    Ok(h)
}

struct CanonicalRate {
    dq1: Vec<f64>,
    dq2: Vec<f64>,
    dp1: Vec<f64>,
    dp2: Vec<f64>,
}

/// Canonical right-hand side. Eliminating the acceleration through the
/// second-momentum equation reduces the four gradients of the
/// Hamiltonian to closed forms: the configuration flows with `q2`,
/// `q2` flows with the recovered acceleration, the first momentum
/// flows with the coordinate gradient of the Lagrangian, and the
/// second momentum with the velocity gradient minus `p1`.
fn canonical_rate(
    lag: &SecondOrderLagrangian,
    state: &CanonicalState,
    guess: &mut Vec<f64>,
) -> Result<CanonicalRate, VarError> {
    let a = recover_acceleration(
        lag,
        state.t,
        &state.q1,
        &state.q2,
        &state.p2,
        Some(guess.as_slice()),
    )?;
    *guess = a.clone();
    let gq = lag.grad(Arg::Q, state.t, &state.q1, &state.q2, &a);
    let gqd = lag.grad(Arg::Qd, state.t, &state.q1, &state.q2, &a);
    let n = lag.dim();
    Ok(CanonicalRate {
        dq1: state.q2.clone(),
        dq2: a,
        dp1: gq,
        dp2: (0..n).map(|i| gqd[i] - state.p1[i]).collect(),
    })
}

fn canonical_axpy(state: &CanonicalState, alpha: f64, rate: &CanonicalRate, t: f64) -> CanonicalState {
    let n = state.q1.len();
    let mut out = CanonicalState {
        t,
        q1: state.q1.clone(),
        q2: state.q2.clone(),
        p1: state.p1.clone(),
        p2: state.p2.clone(),
    };
    for i in 0..n {
        out.q1[i] += alpha * rate.dq1[i];
        out.q2[i] += alpha * rate.dq2[i];
        out.p1[i] += alpha * rate.dp1[i];
        out.p2[i] += alpha * rate.dp2[i];
    }
    out
}

/// Integrates the two-pair canonical equations with classical
/// fourth-order Runge-Kutta from the canonical image of a
/// configuration-space initial state.
pub fn integrate_canonical(
    lag: &SecondOrderLagrangian,
    initial: &PathState,
    t_end: f64,
    dt: f64,
) -> Result<CanonicalTrajectory, VarError> {
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
    let mut state = canonical_initial(lag, initial);
    let mut guess = initial.qdd.clone();
    let total = t_end - initial.t;
    let steps = (total / dt).round().max(1.0) as usize;
    let step = total / steps as f64;
    let mut times = vec![state.t];
    let mut states = vec![state.clone()];
    for _ in 0..steps {
        let t = state.t;
        let k1 = canonical_rate(lag, &state, &mut guess)?;
        let s2 = canonical_axpy(&state, 0.5 * step, &k1, t + 0.5 * step);
        let k2 = canonical_rate(lag, &s2, &mut guess)?;
        let s3 = canonical_axpy(&state, 0.5 * step, &k2, t + 0.5 * step);
        let k3 = canonical_rate(lag, &s3, &mut guess)?;
        let s4 = canonical_axpy(&state, step, &k3, t + step);
        let k4 = canonical_rate(lag, &s4, &mut guess)?;
        let mut next = canonical_axpy(&state, step / 6.0, &k1, t + step);
        next = canonical_axpy(&next, step / 3.0, &k2, t + step);
        next = canonical_axpy(&next, step / 3.0, &k3, t + step);
        next = canonical_axpy(&next, step / 6.0, &k4, t + step);
        state = next;
        times.push(state.t);
        states.push(state.clone());
    }
    Ok(CanonicalTrajectory { times, states })
}
