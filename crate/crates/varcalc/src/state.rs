//! Path and phase-space state containers, plus smooth path providers.

use crate::error::VarError;

/// Configuration-space state with derivatives up to third order.
#[derive(Debug, Clone, PartialEq)]
pub struct PathState {
    /// Time.
    pub t: f64,
    /// Coordinates.
    pub q: Vec<f64>,
    /// First derivatives.
    pub qd: Vec<f64>,
    /// Second derivatives.
    pub qdd: Vec<f64>,
    /// Third derivatives.
    pub qddd: Vec<f64>,
}

impl PathState {
    /// Builds a state, checking that all vectors share one dimension.
    pub fn new(t: f64, q: Vec<f64>, qd: Vec<f64>, qdd: Vec<f64>, qddd: Vec<f64>) -> Self {
        let n = q.len();
        assert!(
            qd.len() == n && qdd.len() == n && qddd.len() == n,
            "state vectors must share one dimension"
        );
        PathState { t, q, qd, qdd, qddd }
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.q.len()
    }
}

/// Phase-space point of the second-order canonical formalism:
/// coordinates, first and second momenta, and the auxiliary
/// coordinates paired with the second momenta.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    /// Coordinates.
    pub q: Vec<f64>,
    /// First-order momenta.
    pub p: Vec<f64>,
    /// Second-order momenta.
    pub s: Vec<f64>,
    /// Auxiliary coordinates paired with the second momenta.
    pub f: Vec<f64>,
}

impl PhasePoint {
    /// Builds a point, checking that all vectors share one dimension.
    pub fn new(q: Vec<f64>, p: Vec<f64>, s: Vec<f64>, f: Vec<f64>) -> Self {
        let n = q.len();
        assert!(
            p.len() == n && s.len() == n && f.len() == n,
            "phase vectors must share one dimension"
        );
        PhasePoint { q, p, s, f }
    }

    /// Number of coordinate pairs.
    pub fn dim(&self) -> usize {
        self.q.len()
    }
}

/// Sampled trajectory on a uniform or non-uniform time grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// Sample times, strictly increasing.
    pub times: Vec<f64>,
    /// One state per sample time.
    pub states: Vec<PathState>,
}

impl Trajectory {
    /// Number of samples.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// True when the trajectory holds no samples.
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Builds a smooth interpolating path through the samples.
    pub fn to_path(&self) -> Result<SplinePath, VarError> {
        SplinePath::from_trajectory(self)
    }
}

/// A smooth curve in configuration space that can produce coordinate
/// derivatives up to `order()`.
pub trait Path {
    /// Number of coordinates.
    fn dim(&self) -> usize;

    /// Highest derivative order this path can evaluate.
    fn order(&self) -> usize;

    /// The `derivative`-th time derivative of the coordinates at `t`
    /// (0 gives the coordinates themselves).
    fn eval(&self, t: f64, derivative: usize) -> Vec<f64>;

    /// Bundles derivatives 0..=3 into a state.
    fn state(&self, t: f64) -> PathState {
        PathState {
            t,
            q: self.eval(t, 0),
            qd: self.eval(t, 1),
            qdd: self.eval(t, 2),
            qddd: self.eval(t, 3),
        }
    }
}

type VecFn = Box<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

/// Path given by closed-form derivative closures. Derivatives above the
/// highest supplied order fall back to central finite differences of
/// the highest closure.
pub struct AnalyticPath {
    dim: usize,
    derivatives: Vec<VecFn>,
}

impl AnalyticPath {
    /// Builds a path from closures for the derivative orders
    /// `0..derivatives.len()`; at least the coordinates are required.
    pub fn new(dim: usize, derivatives: Vec<VecFn>) -> Self {
        assert!(!derivatives.is_empty(), "need at least the coordinate closure");
        AnalyticPath { dim, derivatives }
    }
}

impl Path for AnalyticPath {
    fn dim(&self) -> usize {
        self.dim
    }

    fn order(&self) -> usize {
        5
    }

    fn eval(&self, t: f64, derivative: usize) -> Vec<f64> {
        if let Some(f) = self.derivatives.get(derivative) {
            return f(t);
        }
        // Five-point first derivative of the next-lower order.
        let h = 1e-3;
        let lower = |t: f64| self.eval(t, derivative - 1);
        let (m2, m1, p1, p2) = (lower(t - 2.0 * h), lower(t - h), lower(t + h), lower(t + 2.0 * h));
        (0..self.dim)
            .map(|i| (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * h))
            .collect()
    }
}

/// Coefficient rows of the degree-5 interpolation basis on [0, 1]:
/// value, slope, and curvature at each end of a segment.
const QUINTIC_BASIS: [[f64; 6]; 6] = [
    [1.0, 0.0, 0.0, -10.0, 15.0, -6.0],
    [0.0, 1.0, 0.0, -6.0, 8.0, -3.0],
    [0.0, 0.0, 0.5, -1.5, 1.5, -0.5],
    [0.0, 0.0, 0.0, 10.0, -15.0, 6.0],
    [0.0, 0.0, 0.0, -4.0, 7.0, -3.0],
    [0.0, 0.0, 0.0, 0.5, -1.0, 0.5],
];

/// Piecewise degree-5 interpolant matching coordinates, velocities, and
/// accelerations at every sample; its fourth derivative exists inside
/// each segment, which the residual evaluators require.
#[derive(Debug, Clone)]
pub struct SplinePath {
    times: Vec<f64>,
    dim: usize,
    /// Per segment, per coordinate: polynomial coefficients in the
    /// normalized segment variable.
    segments: Vec<Vec<[f64; 6]>>,
}

impl SplinePath {
    /// Interpolates the trajectory samples. At least two samples are
    /// needed to define a segment.
    pub fn from_trajectory(traj: &Trajectory) -> Result<Self, VarError> {
        if traj.times.len() < 2 {
            return Err(VarError::InsufficientSmoothness {
                available: 0,
                needed: 4,
            });
        }
        let dim = traj.states[0].dim();
        let mut segments = Vec::with_capacity(traj.times.len() - 1);
        for k in 0..traj.times.len() - 1 {
            let h = traj.times[k + 1] - traj.times[k];
            let (a, b) = (&traj.states[k], &traj.states[k + 1]);
            let mut seg = Vec::with_capacity(dim);
            for i in 0..dim {
                let weights = [
                    a.q[i],
                    h * a.qd[i],
                    h * h * a.qdd[i],
                    b.q[i],
                    h * b.qd[i],
                    h * h * b.qdd[i],
                ];
                let mut coeff = [0.0; 6];
                for (w, basis) in weights.iter().zip(QUINTIC_BASIS.iter()) {
                    for (c, b) in coeff.iter_mut().zip(basis.iter()) {
                        *c += w * b;
                    }
                }
                seg.push(coeff);
            }
            segments.push(seg);
        }
        Ok(SplinePath {
            times: traj.times.clone(),
            dim,
            segments,
        })
    }

    fn segment_at(&self, t: f64) -> (usize, f64, f64) {
        let last = self.segments.len() - 1;
        let k = match self.times.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(last),
            Err(i) => i.saturating_sub(1).min(last),
        };
        let h = self.times[k + 1] - self.times[k];
        let u = (t - self.times[k]) / h;
        // Snap evaluation times within a few ulps of a knot onto the
        // knot itself: sample times built by accumulated arithmetic
        // then reproduce the stored data exactly instead of exciting
        // the cancellation noise of the high-order coefficients.
        let tol = 8.0 * f64::EPSILON * t.abs().max(1.0) / h;
        if u.abs() <= tol {
            return (k, 0.0, h);
        }
        if (u - 1.0).abs() <= tol {
            return if k < last {
                (k + 1, 0.0, self.times[k + 2] - self.times[k + 1])
            } else {
                (k, 1.0, h)
            };
        }
        (k, u, h)
    }
}

impl Path for SplinePath {
    fn dim(&self) -> usize {
        self.dim
    }

    fn order(&self) -> usize {
        5
    }

    fn eval(&self, t: f64, derivative: usize) -> Vec<f64> {
        let (k, u, h) = self.segment_at(t);
        let scale = h.powi(-(derivative as i32));
        self.segments[k]
            .iter()
            .map(|coeff| {
                let mut acc = 0.0;
                for j in (derivative..6).rev() {
                    let mut fall = 1.0;
                    for m in 0..derivative {
                        fall *= (j - m) as f64;
                    }
                    acc = acc * u + coeff[j] * fall;
                }
                acc * scale
            })
            .collect()
    }
}
