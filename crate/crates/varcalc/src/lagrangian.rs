//! Second-order Lagrangians: scalar functions of time, coordinates,
//! velocities, and accelerations, with analytic or finite-difference
//! first partial derivatives.

use crate::error::VarError;

/// Which argument block of `L(t, q, q', q'')` a partial derivative
/// targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arg {
    /// Coordinates.
    Q,
    /// Velocities.
    Qd,
    /// Accelerations.
    Qdd,
}

type ScalarFn = Box<dyn Fn(f64, &[f64], &[f64], &[f64]) -> f64 + Send + Sync>;
type GradFn = Box<dyn Fn(f64, &[f64], &[f64], &[f64]) -> Vec<f64> + Send + Sync>;

/// Scales a finite-difference step by `1 + |base|` and snaps the result
/// to the nearest power of two, so probes of polynomial functions at
/// coordinates with short binary expansions stay exact.
pub(crate) fn fd_probe_step(h: f64, base: f64) -> f64 {
    (h * (1.0 + base.abs())).log2().round().exp2()
}

/// Optional closed-form first partial derivatives of a Lagrangian.
pub struct Gradients {
    /// Partial derivatives with respect to the coordinates.
    pub dq: GradFn,
    /// Partial derivatives with respect to the velocities.
    pub dqd: GradFn,
    /// Partial derivatives with respect to the accelerations.
    pub dqdd: GradFn,
}

/// A Lagrangian depending on accelerations as well as velocities.
///
/// First partial derivatives come from supplied closures when present,
/// otherwise from central finite differences with a configurable step.
/// Second partials are always finite differences of the first partials.
pub struct SecondOrderLagrangian {
    dim: usize,
    eval: ScalarFn,
    gradients: Option<Gradients>,
    fd_step: f64,
    stencil_step: Option<f64>,
}

const FD_STEP_MIN: f64 = 1e-8;
const FD_STEP_MAX: f64 = 1e-3;
const FD_STEP_DEFAULT: f64 = 1e-5;

impl SecondOrderLagrangian {
    /// Builds a Lagrangian that differentiates by finite differences.
    pub fn new(dim: usize, eval: ScalarFn) -> Self {
        SecondOrderLagrangian {
            dim,
            eval,
            gradients: None,
            fd_step: FD_STEP_DEFAULT,
            stencil_step: None,
        }
    }

    /// Builds a Lagrangian with closed-form first partials.
    pub fn with_gradients(dim: usize, eval: ScalarFn, gradients: Gradients) -> Self {
        SecondOrderLagrangian {
            dim,
            eval,
            gradients: Some(gradients),
            fd_step: FD_STEP_DEFAULT,
            stencil_step: None,
        }
    }

    /// Sets the finite-difference step for first partials; it must lie
    /// in `[1e-8, 1e-3]`.
    pub fn set_fd_step(&mut self, step: f64) -> Result<(), VarError> {
        if !(FD_STEP_MIN..=FD_STEP_MAX).contains(&step) {
            return Err(VarError::Config(format!(
                "finite-difference step {step:e} outside [{FD_STEP_MIN:e}, {FD_STEP_MAX:e}]"
            )));
        }
        self.fd_step = step;
        Ok(())
    }

    /// Overrides the time step used by total-time-derivative stencils.
    pub fn set_stencil_step(&mut self, step: f64) {
        self.stencil_step = Some(step);
    }

    /// Time step for total-time-derivative stencils.
    pub fn stencil_step(&self) -> f64 {
        self.stencil_step.unwrap_or(3e-3)
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True when closed-form first partials are attached.
    pub fn has_gradients(&self) -> bool {
        self.gradients.is_some()
    }

    /// Evaluates the Lagrangian.
    pub fn value(&self, t: f64, q: &[f64], qd: &[f64], qdd: &[f64]) -> f64 {
        (self.eval)(t, q, qd, qdd)
    }

    /// First partials with respect to one argument block.
    pub fn grad(&self, arg: Arg, t: f64, q: &[f64], qd: &[f64], qdd: &[f64]) -> Vec<f64> {
        if let Some(g) = &self.gradients {
            return match arg {
                Arg::Q => (g.dq)(t, q, qd, qdd),
                Arg::Qd => (g.dqd)(t, q, qd, qdd),
                Arg::Qdd => (g.dqdd)(t, q, qd, qdd),
            };
        }
        let h = self.fd_step;
        let mut out = Vec::with_capacity(self.dim);
        let mut bq = q.to_vec();
        let mut bqd = qd.to_vec();
        let mut bqdd = qdd.to_vec();
        for i in 0..self.dim {
            let slot: &mut f64 = match arg {
                Arg::Q => &mut bq[i],
                Arg::Qd => &mut bqd[i],
                Arg::Qdd => &mut bqdd[i],
            };
            let base = *slot;
            let step = fd_probe_step(h, base);
            *slot = base + step;
            let plus = (self.eval)(t, &bq, &bqd, &bqdd);
            let slot: &mut f64 = match arg {
                Arg::Q => &mut bq[i],
                Arg::Qd => &mut bqd[i],
                Arg::Qdd => &mut bqdd[i],
            };
            *slot = base - step;
            let minus = (self.eval)(t, &bq, &bqd, &bqdd);
            let slot: &mut f64 = match arg {
                Arg::Q => &mut bq[i],
                Arg::Qd => &mut bqd[i],
                Arg::Qdd => &mut bqdd[i],
            };
            *slot = base;
            out.push((plus - minus) / (2.0 * step));
        }
        out
    }

    /// Partial derivative of the Lagrangian with respect to explicit
    /// time, holding all other arguments fixed.
    pub fn grad_t(&self, t: f64, q: &[f64], qd: &[f64], qdd: &[f64]) -> f64 {
        let h = self.fd_step * (1.0 + t.abs());
        let plus = (self.eval)(t + h, q, qd, qdd);
        let minus = (self.eval)(t - h, q, qd, qdd);
        (plus - minus) / (2.0 * h)
    }

    /// One second partial: derivative of `grad(row_arg)[i]` in the
    /// `col_arg[j]` direction, by central differences over the first
    /// partials.
    pub fn second(
        &self,
        row_arg: Arg,
        i: usize,
        col_arg: Arg,
        j: usize,
        t: f64,
        q: &[f64],
        qd: &[f64],
        qdd: &[f64],
    ) -> f64 {
        let h = if self.has_gradients() { 1e-6 } else { 1e-4 };
        let mut bq = q.to_vec();
        let mut bqd = qd.to_vec();
        let mut bqdd = qdd.to_vec();
        let base = match col_arg {
            Arg::Q => bq[j],
            Arg::Qd => bqd[j],
            Arg::Qdd => bqdd[j],
        };
        let step = fd_probe_step(h, base);
        let probe = |v: f64, bq: &mut Vec<f64>, bqd: &mut Vec<f64>, bqdd: &mut Vec<f64>| {
            match col_arg {
                Arg::Q => bq[j] = v,
                Arg::Qd => bqd[j] = v,
                Arg::Qdd => bqdd[j] = v,
            }
            self.grad(row_arg, t, bq, bqd, bqdd)[i]
        };
        let plus = probe(base + step, &mut bq, &mut bqd, &mut bqdd);
        let minus = probe(base - step, &mut bq, &mut bqd, &mut bqdd);
        (plus - minus) / (2.0 * step)
    }

    /// Velocity-block Hessian `d^2 L / (dq'_i dq'_j)` as a row-major
    /// matrix.
    pub fn w1(&self, t: f64, q: &[f64], qd: &[f64], qdd: &[f64]) -> nalgebra::DMatrix<f64> {
        self.block_hessian(Arg::Qd, t, q, qd, qdd)
    }

    /// Acceleration-block Hessian `d^2 L / (dq''_i dq''_j)`.
    pub fn w2(&self, t: f64, q: &[f64], qd: &[f64], qdd: &[f64]) -> nalgebra::DMatrix<f64> {
        self.block_hessian(Arg::Qdd, t, q, qd, qdd)
    }

    fn block_hessian(
        &self,
        arg: Arg,
        t: f64,
        q: &[f64],
        qd: &[f64],
        qdd: &[f64],
    ) -> nalgebra::DMatrix<f64> {
        let n = self.dim;
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.second(arg, i, arg, j, t, q, qd, qdd);
            }
        }
        // Symmetrize to wash out finite-difference asymmetry.
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (m[(i, j)] + m[(j, i)]);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }
}

/// `L = sum of squared velocities / 2`: no acceleration dependence.
pub fn free_particle(dim: usize) -> SecondOrderLagrangian {
    SecondOrderLagrangian::with_gradients(
        dim,
        Box::new(|_t, _q, qd, _qdd| 0.5 * qd.iter().map(|v| v * v).sum::<f64>()),
        Gradients {
            dq: Box::new(|_t, q, _qd, _qdd| vec![0.0; q.len()]),
            dqd: Box::new(|_t, _q, qd, _qdd| qd.to_vec()),
            dqdd: Box::new(|_t, q, _qd, _qdd| vec![0.0; q.len()]),
        },
    )
}

/// `L = (velocity^2 - omega^2 coordinate^2) / 2` in each coordinate:
/// first-order dynamics with a vanishing acceleration Hessian.
pub fn harmonic(dim: usize, omega: f64) -> SecondOrderLagrangian {
    let w2 = omega * omega;
    SecondOrderLagrangian::with_gradients(
        dim,
        Box::new(move |_t, q, qd, _qdd| {
            0.5 * qd.iter().map(|v| v * v).sum::<f64>()
                - 0.5 * w2 * q.iter().map(|x| x * x).sum::<f64>()
        }),
        Gradients {
            dq: Box::new(move |_t, q, _qd, _qdd| q.iter().map(|x| -w2 * x).collect()),
            dqd: Box::new(|_t, _q, qd, _qdd| qd.to_vec()),
            dqdd: Box::new(|_t, q, _qd, _qdd| vec![0.0; q.len()]),
        },
    )
}

/// One-coordinate fourth-order oscillator
/// `L = (q''^2 - (w1^2 + w2^2) q'^2 + w1^2 w2^2 q^2) / 2`,
/// whose motions superpose two frequencies.
pub fn pais_uhlenbeck(omega1: f64, omega2: f64) -> SecondOrderLagrangian {
    let a = omega1 * omega1 + omega2 * omega2;
    let b = omega1 * omega1 * omega2 * omega2;
    SecondOrderLagrangian::with_gradients(
        1,
        Box::new(move |_t, q, qd, qdd| {
            0.5 * (qdd[0] * qdd[0] - a * qd[0] * qd[0] + b * q[0] * q[0])
        }),
        Gradients {
            dq: Box::new(move |_t, q, _qd, _qdd| vec![b * q[0]]),
            dqd: Box::new(move |_t, _q, qd, _qdd| vec![-a * qd[0]]),
            dqdd: Box::new(|_t, _q, _qd, qdd| vec![qdd[0]]),
        },
    )
}

/// `L = q''^2 / 2` for one coordinate: acceleration-only dynamics.
pub fn pure_curvature() -> SecondOrderLagrangian {
    SecondOrderLagrangian::with_gradients(
        1,
        Box::new(|_t, _q, _qd, qdd| 0.5 * qdd[0] * qdd[0]),
        Gradients {
            dq: Box::new(|_t, _q, _qd, _qdd| vec![0.0]),
            dqd: Box::new(|_t, _q, _qd, _qdd| vec![0.0]),
            dqdd: Box::new(|_t, _q, _qd, qdd| vec![qdd[0]]),
        },
    )
}

/// Two coordinates coupled only through the squared difference of
/// their accelerations, `L = (q1'' - q2'')^2 / 2`; its acceleration
/// Hessian has a one-dimensional null space along `(1, 1)`.
pub fn curvature_difference() -> SecondOrderLagrangian {
    SecondOrderLagrangian::with_gradients(
        2,
        Box::new(|_t, _q, _qd, qdd| {
            let d = qdd[0] - qdd[1];
            0.5 * d * d
        }),
        Gradients {
            dq: Box::new(|_t, _q, _qd, _qdd| vec![0.0, 0.0]),
            dqd: Box::new(|_t, _q, _qd, _qdd| vec![0.0, 0.0]),
            dqdd: Box::new(|_t, _q, _qd, qdd| {
                let d = qdd[0] - qdd[1];
                vec![d, -d]
            }),
        },
    )
}
