//! Discretized action functional on uniform grids, and the
//! cross-check of its gradient against the equation-of-motion
//! residual.

use crate::dynamics::el_residual;
use crate::error::VarError;
use crate::lagrangian::SecondOrderLagrangian;
use crate::state::Path;

/// Grid derivatives at node `j` by second-order differences: central
/// in the interior, one-sided at the ends.
fn grid_derivatives(q: &[Vec<f64>], dt: f64, j: usize) -> (Vec<f64>, Vec<f64>) {
    let n = q[0].len();
    let last = q.len() - 1;
    let mut qd = Vec::with_capacity(n);
    let mut qdd = Vec::with_capacity(n);
    for i in 0..n {
        let (d1, d2) = if j == 0 {
            (
                (-3.0 * q[0][i] + 4.0 * q[1][i] - q[2][i]) / (2.0 * dt),
                (2.0 * q[0][i] - 5.0 * q[1][i] + 4.0 * q[2][i] - q[3][i]) / (dt * dt),
            )
        } else if j == last {
            (
                (3.0 * q[last][i] - 4.0 * q[last - 1][i] + q[last - 2][i]) / (2.0 * dt),
                (2.0 * q[last][i] - 5.0 * q[last - 1][i] + 4.0 * q[last - 2][i]
                    - q[last - 3][i])
                    / (dt * dt),
            )
        } else {
            (
                (q[j + 1][i] - q[j - 1][i]) / (2.0 * dt),
                (q[j + 1][i] - 2.0 * q[j][i] + q[j - 1][i]) / (dt * dt),
            )
        };
        qd.push(d1);
        qdd.push(d2);
    }
    (qd, qdd)
}

/// Composite-trapezoid action of grid values on a uniform time grid,
/// with velocities and accelerations reconstructed by second-order
/// differences.
pub fn discrete_action(
    lag: &SecondOrderLagrangian,
    t0: f64,
    dt: f64,
    q: &[Vec<f64>],
) -> Result<f64, VarError> {
    if q.len() < 4 {
        return Err(VarError::Config(
            "need at least four grid nodes for second-order differences".into(),
        ));
    }
    for row in q {
        if row.len() != lag.dim() {
            return Err(VarError::Dimension {
                expected: lag.dim(),
                got: row.len(),
            });
        }
    }
    let mut action = 0.0;
    let last = q.len() - 1;
    for j in 0..=last {
        let (qd, qdd) = grid_derivatives(q, dt, j);
        let weight = if j == 0 || j == last { 0.5 } else { 1.0 };
        action += weight * lag.value(t0 + dt * j as f64, &q[j], &qd, &qdd);
    }
    Ok(action * dt)
}

/// One interior node's comparison between the action gradient and the
/// weighted residual.
#[derive(Debug, Clone)]
pub struct GradientEntry {
    /// Node time.
    pub t: f64,
    /// Coordinate index.
    pub coordinate: usize,
    /// Finite-difference gradient of the discrete action.
    pub action_gradient: f64,
    /// Equation-of-motion residual times the quadrature weight.
    pub weighted_residual: f64,
}

/// Outcome of the action-gradient cross-check.
#[derive(Debug, Clone)]
pub struct GradientCheck {
    /// Per-node, per-coordinate comparisons.
    pub entries: Vec<GradientEntry>,
    /// Largest deviation relative to the residual scale.
    pub max_rel_dev: f64,
}

/// Compares the gradient of the discretized action, taken by central
/// finite differences in the interior grid values, against the
/// residual of the continuum equations times the quadrature weight.
/// End nodes and their neighbors stay fixed, which drops the boundary
/// terms of the variation.
pub fn action_gradient_check(
    lag: &SecondOrderLagrangian,
    path: &dyn Path,
    t0: f64,
    t1: f64,
    nodes: usize,
) -> Result<GradientCheck, VarError> {
    if nodes < 9 {
        return Err(VarError::Config(
            "need at least nine nodes to have interior comparisons".into(),
        ));
    }
    let dt = (t1 - t0) / (nodes - 1) as f64;
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(nodes);
    for j in 0..nodes {
        q.push(path.eval(t0 + dt * j as f64, 0));
    }

    // Perturbing one grid value only reaches the Lagrangian at the
    // five nodes whose difference stencils read it, so the gradient
    // needs only that window of the action sum.
    let window_action = |q: &[Vec<f64>], j: usize| -> f64 {
        let last = q.len() - 1;
        let lo = j.saturating_sub(2);
        let hi = (j + 2).min(last);
        let mut acc = 0.0;
        for m in lo..=hi {
            let (qd, qdd) = grid_derivatives(q, dt, m);
            let weight = if m == 0 || m == last { 0.5 } else { 1.0 };
            acc += weight * lag.value(t0 + dt * m as f64, &q[m], &qd, &qdd);
        }
        acc * dt
    };

    let mut entries = Vec::new();
    let mut scale = 0.0f64;
    for j in 3..nodes - 3 {
        let t = t0 + dt * j as f64;
        let residual = el_residual(lag, path, t)?;
        for i in 0..lag.dim() {
            let base = q[j][i];
            let step = 1e-6 * (1.0 + base.abs());
            q[j][i] = base + step;
            let plus = window_action(&q, j);
            q[j][i] = base - step;
            let minus = window_action(&q, j);
            q[j][i] = base;
            let grad = (plus - minus) / (2.0 * step);
            let weighted = residual[i] * dt;
            scale = scale.max(weighted.abs()).max(grad.abs());
            entries.push(GradientEntry {
                t,
                coordinate: i,
                action_gradient: grad,
                weighted_residual: weighted,
            });
        }
    }
    let max_rel_dev = entries
        .iter()
        .map(|e| (e.action_gradient - e.weighted_residual).abs())
        .fold(0.0f64, f64::max)
        / scale.max(f64::MIN_POSITIVE);
    Ok(GradientCheck {
        entries,
        max_rel_dev,
    })
}

/// Runs the gradient check at two resolutions and estimates the
/// convergence order of the deviation.
pub fn gradient_convergence_order(
    lag: &SecondOrderLagrangian,
    path: &dyn Path,
    t0: f64,
    t1: f64,
    nodes: usize,
) -> Result<(f64, f64, f64), VarError> {
    let coarse = action_gradient_check(lag, path, t0, t1, nodes)?;
    let fine = action_gradient_check(lag, path, t0, t1, 2 * nodes - 1)?;
    let order = (coarse.max_rel_dev / fine.max_rel_dev).log2();
    Ok((coarse.max_rel_dev, fine.max_rel_dev, order))
}
