//! Shared fixture: the closed-form two-frequency oscillation used as an
//! independent oracle for the fourth-order dynamics.

#![allow(dead_code)]

use varcalc::{AnalyticPath, PathState};

/// Closed-form superposition of two cosine modes,
/// `q(t) = c1 cos(w1 t) + c2 sin(w1 t) + c3 cos(w2 t) + c4 sin(w2 t)`,
/// the general solution of
/// `q'''' + (w1^2 + w2^2) q'' + w1^2 w2^2 q = 0`.
#[derive(Debug, Clone, Copy)]
pub struct TwoModeSolution {
    pub w1: f64,
    pub w2: f64,
    pub c: [f64; 4],
}

impl TwoModeSolution {
    /// Coefficients matching the four initial data at `t = 0`.
    pub fn from_initial(w1: f64, w2: f64, q0: f64, qd0: f64, qdd0: f64, qddd0: f64) -> Self {
        assert!(w1 > 0.0 && w2 > 0.0 && w1 != w2, "need two distinct positive modes");
        let d = w2 * w2 - w1 * w1;
        let c1 = (qdd0 + w2 * w2 * q0) / d;
        let c3 = q0 - c1;
        let c2 = (qddd0 + w2 * w2 * qd0) / (w1 * d);
        let c4 = (qd0 - c2 * w1) / w2;
        TwoModeSolution {
            w1,
            w2,
            c: [c1, c2, c3, c4],
        }
    }

    /// The `order`-th time derivative at `t`.
    pub fn eval(&self, t: f64, order: usize) -> f64 {
        let mode = |c_cos: f64, c_sin: f64, w: f64| -> f64 {
            let amp = w.powi(order as i32);
            let (st, ct) = (w * t).sin_cos();
            // Differentiating the trigonometric pair cycles with period
            // four; matching on the remainder keeps the forms exact.
            match order % 4 {
                0 => amp * (c_cos * ct + c_sin * st),
                1 => amp * (-c_cos * st + c_sin * ct),
                2 => amp * (-c_cos * ct - c_sin * st),
                _ => amp * (c_cos * st - c_sin * ct),
            }
        };
        mode(self.c[0], self.c[1], self.w1) + mode(self.c[2], self.c[3], self.w2)
    }

    /// Derivatives 0..=3 bundled as a state.
    pub fn state(&self, t: f64) -> PathState {
        PathState::new(
            t,
            vec![self.eval(t, 0)],
            vec![self.eval(t, 1)],
            vec![self.eval(t, 2)],
            vec![self.eval(t, 3)],
        )
    }

    /// Path with closed-form derivatives through third order.
    pub fn path(&self) -> AnalyticPath {
        let closures = (0..4usize)
            .map(|order| {
                let sol = *self;
                Box::new(move |t: f64| vec![sol.eval(t, order)])
                    as Box<dyn Fn(f64) -> Vec<f64> + Send + Sync>
            })
            .collect();
        AnalyticPath::new(1, closures)
    }
}
