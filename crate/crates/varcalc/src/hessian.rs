//! Velocity- and acceleration-block Hessians of a Lagrangian, their
//! numerical ranks, and the null directions that signal degeneracy.

use nalgebra::{DMatrix, DVector};

use crate::dynamics::RANK_TOL;
use crate::lagrangian::SecondOrderLagrangian;
use crate::state::PathState;

/// Both block Hessians at a state, with numerical ranks and an
/// orthonormal basis of the acceleration Hessian's null space.
#[derive(Debug, Clone)]
pub struct HessianReport {
    /// Velocity-block Hessian.
    pub w1: DMatrix<f64>,
    /// Acceleration-block Hessian.
    pub w2: DMatrix<f64>,
    /// Numerical rank of `w1`.
    pub rank1: usize,
    /// Numerical rank of `w2`.
    pub rank2: usize,
    /// Orthonormal null-space basis of `w2`; empty when `w2` has full
    /// rank.
    pub zero_modes2: Vec<DVector<f64>>,
}

/// Numerical rank: singular values above `RANK_TOL` times the largest.
pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.max();
    if smax <= 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|s| **s > RANK_TOL * smax)
        .count()
}

/// Orthonormal basis of the (right) null space of a symmetric matrix,
/// from its singular vectors with relatively negligible singular
/// values.
pub fn null_space(m: &DMatrix<f64>) -> Vec<DVector<f64>> {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let smax = svd.singular_values.max();
    let vt = svd.v_t.expect("requested right singular vectors");
    let mut modes = Vec::new();
    for (k, s) in svd.singular_values.iter().enumerate() {
        if smax <= 0.0 || *s <= RANK_TOL * smax {
            modes.push(vt.row(k).transpose());
        }
    }
    // A zero matrix yields fewer singular triples than columns in the
    // wide case; pad via the remaining canonical directions if the
    // decomposition returned an incomplete basis.
    if smax <= 0.0 && modes.len() < n {
        modes = (0..n).map(|i| DVector::from_fn(n, |r, _| f64::from(u8::from(r == i)))).collect();
    }
    modes
}

/// Builds the Hessian report of a Lagrangian at a state.
pub fn hessians(lag: &SecondOrderLagrangian, state: &PathState) -> HessianReport {
    let w1 = lag.w1(state.t, &state.q, &state.qd, &state.qdd);
    let w2 = lag.w2(state.t, &state.q, &state.qd, &state.qdd);
    let rank1 = numerical_rank(&w1);
    let rank2 = numerical_rank(&w2);
    let zero_modes2 = null_space(&w2);
    HessianReport {
        w1,
        w2,
        rank1,
        rank2,
        zero_modes2,
    }
}
