//! Detection of hidden constraints of degenerate Lagrangians: contract
//! null directions of the stacked equations of motion, classify the
//! results numerically, and chase time derivatives of the genuine
//! constraints level by level.

use std::rc::Rc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{euler_k, taylor_state, RANK_TOL};
use crate::error::VarError;
use crate::lagrangian::{fd_probe_step, SecondOrderLagrangian};
use crate::state::PathState;

/// Seed for the randomized off-shell probe states, fixed for
/// reproducible classification.
pub const PROBE_SEED: u64 = 0x7a3d_91c4_55e8_2206;

/// Number of randomized off-shell probe states used to classify
/// candidate constraints.
pub const PROBE_COUNT: usize = 32;

const GAUGE_TOL: f64 = 1e-8;
const DEPENDENCE_TOL: f64 = 1e-6;

/// How a zero-mode contraction classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectKind {
    /// Vanishes identically, on shell and off: an identity among the
    /// equations of motion.
    GaugeIdentity,
    /// Vanishes on solutions only: a genuine constraint; its time
    /// derivative joins the next level.
    Genuine,
    /// Linear combination of content already found; carries nothing
    /// new.
    Reproduced,
}

/// One zero-mode contraction with its classification evidence.
#[derive(Debug, Clone)]
pub struct ScanObject {
    /// Level the object surfaced at.
    pub level: usize,
    /// The left null-space direction that produced it, over the rows
    /// stacked at that level.
    pub mode: Vec<f64>,
    /// Classification.
    pub kind: ObjectKind,
    /// Value of the contraction at the scanned state.
    pub value_at_state: f64,
    /// Largest magnitude over the randomized off-shell probes.
    pub off_shell_max: f64,
}

/// All objects surfaced at one level of the scan.
#[derive(Debug, Clone)]
pub struct ScanLevel {
    /// Level index, starting at zero.
    pub level: usize,
    /// Dimension of the left null space at this level.
    pub zero_mode_count: usize,
    /// One object per null direction.
    pub objects: Vec<ScanObject>,
}

/// Why the scan stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The stacked system had no null directions at all.
    NoZeroModes,
    /// Null directions existed but produced nothing new.
    NoNewConstraints,
}

/// Result of a constraint scan.
#[derive(Debug, Clone)]
pub struct ConstraintScan {
    /// Levels actually processed; empty for a nondegenerate
    /// Lagrangian.
    pub levels: Vec<ScanLevel>,
    /// Why the iteration stopped.
    pub termination: Termination,
}

impl ConstraintScan {
    /// All gauge identities across levels.
    pub fn gauge_identities(&self) -> Vec<&ScanObject> {
        self.levels
            .iter()
            .flat_map(|l| l.objects.iter())
            .filter(|o| o.kind == ObjectKind::GaugeIdentity)
            .collect()
    }

    /// All genuine constraints across levels.
    pub fn genuine_constraints(&self) -> Vec<&ScanObject> {
        self.levels
            .iter()
            .flat_map(|l| l.objects.iter())
            .filter(|o| o.kind == ObjectKind::Genuine)
            .collect()
    }
}

type StateFn<'a> = Rc<dyn Fn(&PathState) -> f64 + 'a>;

/// Total time derivative of a state function with the fourth
/// derivative frozen to zero, by a five-point stencil along the local
/// polynomial curve.
fn rate_at_zero_fourth(f: &StateFn<'_>, state: &PathState, h: f64) -> f64 {
    let m2 = f(&taylor_state(state, -2.0 * h));
    let m1 = f(&taylor_state(state, -h));
    let p1 = f(&taylor_state(state, h));
    let p2 = f(&taylor_state(state, 2.0 * h));
    (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h)
}

/// Gradient of a state function with respect to the third-derivative
/// components; this is the stacked row's coefficient on the fourth
/// derivative.
fn third_derivative_gradient(f: &StateFn<'_>, state: &PathState) -> Vec<f64> {
    let n = state.dim();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let step = fd_probe_step(1e-5, state.qddd[i]);
        let mut st = state.clone();
        st.qddd[i] = state.qddd[i] + step;
        let plus = f(&st);
        st.qddd[i] = state.qddd[i] - step;
        let minus = f(&st);
        out.push((plus - minus) / (2.0 * step));
    }
    out
}

fn random_probe(base: &PathState, rng: &mut ChaCha8Rng) -> PathState {
    let mut st = base.clone();
    let kick = |v: &mut f64, rng: &mut ChaCha8Rng| {
        let u: f64 = rng.gen_range(-1.0..1.0);
        *v += u * (1.0 + v.abs());
    };
    for i in 0..base.dim() {
        kick(&mut st.q[i], rng);
        kick(&mut st.qd[i], rng);
        kick(&mut st.qdd[i], rng);
        kick(&mut st.qddd[i], rng);
    }
    st
}

/// Orthonormal null directions of the row space: eigenvectors of
/// `W W^T` whose eigenvalues are negligible against the largest.
fn left_null_modes(w: &DMatrix<f64>) -> Vec<DVector<f64>> {
    let rows = w.nrows();
    let gram = w * w.transpose();
    let eig = nalgebra::SymmetricEigen::new(gram);
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let thresh = RANK_TOL * RANK_TOL * lmax;
    let mut modes = Vec::new();
    for k in 0..rows {
        if lmax <= 0.0 || eig.eigenvalues[k] <= thresh {
            modes.push(eig.eigenvectors.column(k).into_owned());
        }
    }
    modes
}

/// Scans a degenerate Lagrangian for gauge identities and genuine
/// constraints.
///
/// Level zero contracts the null directions of the acceleration
/// Hessian with the fourth-derivative-free part of the equations of
/// motion. Each genuine constraint contributes its total time
/// derivative as an extra stacked row for the next level. Candidates
/// are classified by evaluation at randomized off-shell states:
/// identically vanishing contractions are gauge identities, values
/// reproducible from already-stacked content are discarded, and the
/// rest are genuine. The scan stops when a level adds no genuine
/// constraint, or fails once `max_levels` levels would be exceeded.
///
/// A nondegenerate Lagrangian yields an empty scan.
pub fn constraint_scan(
    lag: &SecondOrderLagrangian,
    state: &PathState,
    max_levels: usize,
) -> Result<ConstraintScan, VarError> {
    if state.dim() != lag.dim() {
        return Err(VarError::Dimension {
            expected: lag.dim(),
            got: state.dim(),
        });
    }
    let n = lag.dim();
    let h = lag.stencil_step();

    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let probes: Vec<PathState> = (0..PROBE_COUNT)
        .map(|_| random_probe(state, &mut rng))
        .collect();

    // Base-row values of the fourth-derivative-free part at each probe
    // are reused by every candidate evaluation.
    let base_k_state = euler_k(lag, state);
    let base_k_probes: Vec<DVector<f64>> = probes.iter().map(|st| euler_k(lag, st)).collect();

    // Rows beyond the base block: time derivatives of genuine
    // constraints, represented by the constraint functions themselves.
    let mut stacked: Vec<StateFn<'_>> = Vec::new();
    // Values of everything already known (found constraints and
    // stacked-row content) at the probes, for the dependence test.
    let mut known_probe_values: Vec<Vec<f64>> = Vec::new();

    let mut levels: Vec<ScanLevel> = Vec::new();

    for level in 0.. {
        if level >= max_levels {
            return Err(VarError::LevelCapExceeded { max_levels });
        }
        let rows = n + stacked.len();

        // Assemble the coefficient matrix on the fourth derivative at
        // the scanned state.
        let mut w = DMatrix::zeros(rows, n);
        let w2 = lag.w2(state.t, &state.q, &state.qd, &state.qdd);
        w.view_mut((0, 0), (n, n)).copy_from(&w2);
        for (j, phi) in stacked.iter().enumerate() {
            let grad = third_derivative_gradient(phi, state);
            for (c, g) in grad.iter().enumerate() {
                w[(n + j, c)] = *g;
            }
        }

        let modes = left_null_modes(&w);
        if modes.is_empty() {
            return Ok(ConstraintScan {
                levels,
                termination: Termination::NoZeroModes,
            });
        }

        // Row values at a state: base block, then the stacked rates.
        let row_values = |st: &PathState, base: &DVector<f64>| -> Vec<f64> {
            let mut vals: Vec<f64> = base.iter().copied().collect();
            for phi in &stacked {
                vals.push(rate_at_zero_fourth(phi, st, h));
            }
            vals
        };
        let rows_state = row_values(state, &base_k_state);
        let rows_probes: Vec<Vec<f64>> = probes
            .iter()
            .zip(base_k_probes.iter())
            .map(|(st, base)| row_values(st, base))
            .collect();

        // Stacked-row content at the probes joins the dependence basis
        // for this level's candidates.
        let mut basis: Vec<Vec<f64>> = known_probe_values.clone();
        for j in 0..stacked.len() {
            basis.push(rows_probes.iter().map(|r| r[n + j]).collect());
        }

        let mut level_record = ScanLevel {
            level,
            zero_mode_count: modes.len(),
            objects: Vec::new(),
        };
        let mut new_genuine: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();

        for mode in &modes {
            let contract = |row_vals: &[f64]| -> f64 {
                mode.iter().zip(row_vals.iter()).map(|(a, b)| a * b).sum()
            };
            let value_at_state = contract(&rows_state);
            let probe_values: Vec<f64> = rows_probes.iter().map(|r| contract(r)).collect();
            let off_shell_max = probe_values.iter().fold(0.0f64, |m, v| m.max(v.abs()));

            // Magnitude of the terms being combined, as the reference
            // scale for "vanishes identically".
            let reference = rows_probes
                .iter()
                .map(|r| {
                    mode.iter()
                        .zip(r.iter())
                        .map(|(a, b)| (a * b).abs())
                        .sum::<f64>()
                })
                .fold(0.0f64, f64::max);

            let kind = if off_shell_max <= GAUGE_TOL * (1.0 + reference) {
                ObjectKind::GaugeIdentity
            } else if reproducible(&basis, &probe_values) {
                ObjectKind::Reproduced
            } else {
                ObjectKind::Genuine
            };

            if kind == ObjectKind::Genuine {
                new_genuine.push((mode.iter().copied().collect(), probe_values.clone()));
            }
            level_record.objects.push(ScanObject {
                level,
                mode: mode.iter().copied().collect(),
                kind,
                value_at_state,
                off_shell_max,
            });
        }

        levels.push(level_record);
        if new_genuine.is_empty() {
            return Ok(ConstraintScan {
                levels,
                termination: Termination::NoNewConstraints,
            });
        }

        // Stack the new constraints' time derivatives for the next
        // level, snapshotting the rows they contract.
        let stacked_snapshot = stacked.clone();
        for (mode, probe_values) in new_genuine {
            known_probe_values.push(probe_values);
            let snapshot = stacked_snapshot.clone();
            let phi: StateFn<'_> = Rc::new(move |st: &PathState| {
                let base = euler_k(lag, st);
                let mut acc = 0.0;
                for (i, b) in base.iter().enumerate() {
                    acc += mode[i] * b;
                }
                for (j, prev) in snapshot.iter().enumerate() {
                    acc += mode[n + j] * rate_at_zero_fourth(prev, st, h);
                }
                acc
            });
            stacked.push(phi);
        }
    }
    unreachable!("the level loop always returns");
}

/// Least-squares test of whether candidate values over the probes are
/// a linear combination of the basis rows' values.
fn reproducible(basis: &[Vec<f64>], candidate: &[f64]) -> bool {
    if basis.is_empty() {
        return false;
    }
    let m = candidate.len();
    let cols = basis.len();
    let a = DMatrix::from_fn(m, cols, |r, c| basis[c][r]);
    let b = DVector::from_column_slice(candidate);
    let svd = a.svd(true, true);
    match svd.solve(&b, 1e-12) {
        Ok(coeff) => {
            let residual = &DMatrix::from_fn(m, cols, |r, c| basis[c][r]) * coeff - &b;
            residual.amax() <= DEPENDENCE_TOL * (1.0 + b.amax())
        }
        Err(_) => false,
    }
}
