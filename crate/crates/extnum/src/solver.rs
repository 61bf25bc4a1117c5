use crate::context::{AlgebraContext, UnitDef};
use crate::error::ExtError;
use crate::ext::ExtNumber;
use crate::maps::MapCoefficients;
use crate::norm::phi_theta;
use crate::scalar::FloatScalar;
use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Base seed for the deterministic multistart stream. Fixed so that a
/// given context always explores the same starts in the same order.
const START_STREAM_SEED: u64 = 0x5e7e_11ed_c0ff_ee01;

/// Every distinct map solution found for one number.
#[derive(Debug, Clone, Serialize)]
pub struct MapSolve<S> {
    /// The first solution found, in deterministic start order.
    pub best: MapCoefficients<S>,
    /// All distinct solutions, in discovery order.
    pub roots: Vec<MapCoefficients<S>>,
    /// Number of starts attempted.
    pub starts: usize,
}

impl<S: FloatScalar> AlgebraContext<S> {
    /// Solves the four-equation system for the map coefficients of `a`
    /// and returns the first solution found.
    ///
    /// The system couples the unit-definition constraint pair with the
    /// two positive-definiteness equations in φ, θ, `R`, `z₀`, `w₀`. It
    /// is solved by damped Newton iteration over ℝ⁸ from a deterministic
    /// multistart lattice.
    pub fn solve_maps(&self, a: &ExtNumber<S>) -> Result<MapCoefficients<S>, ExtError> {
        Ok(self.solve_maps_all(a)?.best)
    }

    /// Solves the map system and returns every distinct root found
    /// across the multistart lattice.
    pub fn solve_maps_all(&self, a: &ExtNumber<S>) -> Result<MapSolve<S>, ExtError> {
        if !a.is_finite() {
            return Err(ExtError::NonFinite("solve_maps"));
        }
        let shape = phi_theta(a).map_err(|_| ExtError::Degenerate("solve_maps"))?;
        let tol = s::<S>(self.solver_tol());
        let mut best_residual = S::infinity();
        let mut roots: Vec<[S; 8]> = Vec::new();
        let mut residuals: Vec<S> = Vec::new();
        let starts = self.start_lattice();
        for start in &starts {
            let mut eval = |v: &[S; 8]| Some(self.system_residual_at(shape.phi, shape.theta, v));
            let (x, res, converged) =
                damped_newton(&mut eval, *start, tol, self.solver_max_iter());
            if res < best_residual {
                best_residual = res;
            }
            if converged && !roots.iter().any(|r| same_root(r, &x)) {
                roots.push(x);
                residuals.push(res);
            }
        }
        if roots.is_empty() {
            return Err(ExtError::NoConvergence {
                residual: best_residual.to_f64().unwrap_or(f64::NAN),
                starts: starts.len(),
            });
        }
        let coeffs: Vec<MapCoefficients<S>> = roots
            .iter()
            .zip(&residuals)
            .map(|(v, res)| unpack(v).with_residual(res.to_f64().unwrap_or(f64::NAN)))
            .collect();
        Ok(MapSolve {
            best: coeffs[0].clone(),
            roots: coeffs,
            starts: starts.len(),
        })
    }

    /// Largest absolute residual of the four-equation system for `a`
    /// evaluated at the given coefficients.
    pub fn map_system_residual(
        &self,
        a: &ExtNumber<S>,
        m: &MapCoefficients<S>,
    ) -> Result<S, ExtError> {
        let shape = phi_theta(a).map_err(|_| ExtError::Degenerate("map_system_residual"))?;
        let res = self.system_residual_at(shape.phi, shape.theta, &pack(m));
        Ok(inf_norm(&res))
    }

    /// Diagnostic for the working simplification that `a^•` inherits
    /// `a`'s maps: evaluates the map system of `a^•` at `a`'s
    /// coefficients and returns the residual. A large value means the
    /// inherited maps are far from self-consistent for `a^•`.
    pub fn bullet_inheritance_residual(
        &self,
        a: &ExtNumber<S>,
        m: &MapCoefficients<S>,
    ) -> Result<S, ExtError> {
        let bullet = m.bullet(a);
        self.map_system_residual(&bullet, m)
    }

    /// Solved maps for a general number, or the identity coefficients
    /// for a pure complex number, where no map terms survive in any
    /// product.
    pub fn maps_or_identity(&self, a: &ExtNumber<S>) -> Result<MapCoefficients<S>, ExtError> {
        if a.is_pure_complex() {
            Ok(MapCoefficients::identity())
        } else {
            self.solve_maps(a)
        }
    }

    /// The 8 real residual components at coefficient vector `v`
    /// (layout `[z1.re, z1.im, w1.re, w1.im, z2.re, z2.im, w2.re, w2.im]`).
    fn system_residual_at(&self, phi: S, theta: S, v: &[S; 8]) -> [S; 8] {
        let ep = Complex::from_polar(S::one(), theta);
        self.system_residual_dir(phi, ep, &unpack(v))
    }

    /// The 8 real residual components, taking the phase factor
    /// `e^{iθ}` directly so callers can stay clear of angle branch
    /// cuts.
    pub(crate) fn system_residual_dir(
        &self,
        phi: S,
        ep: Complex<S>,
        m: &MapCoefficients<S>,
    ) -> [S; 8] {
        let (z1, w1, z2, w2) = (m.z1, m.w1, m.z2, m.w2);
        let z0 = self.z0().clone();
        let w0 = self.w0().clone();
        let i = Complex::new(S::zero(), S::one());
        let ic = Complex::new(S::zero(), -S::one());
        let one = Complex::new(S::one(), S::zero());

        let (e1, e2) = match self.unit_def() {
            UnitDef::Primary => {
                // k^• ⊙ k^• = −i, expanded with the inherited maps.
                let e1 = z1 * z2.conj() * w2 + z2 * w2.conj();
                let e2 = i * z2.norm_sqr() + z2.conj() * w1 * w2 + one * w2.norm_sqr() - ic;
                (e1, e2)
            }
            UnitDef::Alternate => {
                // (k*)^• ⊙ k^• = −i with (k*)^• = z₁z₂·k + (z₁w₂ + w₁).
                let xa = z1 * z2;
                let ya = z1 * w2 + w1;
                let e1 = xa.conj() * w2 * z1 + z2 * ya.conj();
                let e2 = i * xa.conj() * z2 + xa.conj() * w2 * w1 + ya.conj() * w2 - ic;
                (e1, e2)
            }
        };

        let em = ep.conj();
        let e2p = ep * ep;
        let e2m = e2p.conj();
        let f = Complex::new(phi, S::zero());
        let fi = Complex::new(S::one() / phi, S::zero());
        let two = S::one() + S::one();

        let e3 = z2.conj() * w1
            + w2.conj()
            + z1 * w2
            + z0 * z1 * z2.conj()
            + z0 * z1 * z2
            + z2 * w1
            + f * em * (i * z1 * z2.conj() + ic * z1)
            + f * ep * (i * z2 + ic)
            + fi * em * (z1 * z2.conj() + z1)
            + fi * ep * (z2 + one)
            + e2p * (z0 * z2 + w2)
            + e2m * (z0 * z1 * z1 * z2.conj() + z1 * z2.conj() * w1 * two + z1 * w2.conj());

        let e4 = z1 * z2.conj() * w0 + z1 * z2 * w0 + w1 * w2
            + f * em * (i * z2.conj() * w1 + i * w2.conj() + ic * w1)
            + f * ep * (i * w2)
            + fi * ep * w2
            + fi * em * (z2.conj() * w1 + w2.conj() + w1)
            + e2m * (z2.conj() * w1 * w1 + w1 * w2.conj() + z1 * z1 * z2.conj() * w0)
            + e2p * (z2 * w0)
            - Complex::new(self.r().clone(), S::zero());

        [e1.re, e1.im, e2.re, e2.im, e3.re, e3.im, e4.re, e4.im]
    }

    /// Deterministic multistart points: an exact-constraint lattice
    /// first (each point solves the primary unit pair in closed form),
    /// then pseudo-random fills up to `multistart_seeds` points.
    fn start_lattice(&self) -> Vec<[S; 8]> {
        let total = self.multistart_seeds();
        let mut starts = Vec::with_capacity(total);
        // With |z₂| = |w₂| = 1 and phases A, B, the pair z₁ = −e^{2i(A−B)},
        // w₁ = √5·e^{i(A−B + arg(−1−2i))} satisfies equations 1–2 exactly.
        let w1_mod = s::<S>(5.0).sqrt();
        let w1_arg = s::<S>(-2.0).atan2(s::<S>(-1.0));
        let quarter = s::<S>(std::f64::consts::FRAC_PI_2);
        'lattice: for qa in 0..4 {
            for qb in 0..4 {
                if starts.len() >= total {
                    break 'lattice;
                }
                let a = quarter * s::<S>(qa as f64);
                let b = quarter * s::<S>(qb as f64);
                let z2 = Complex::from_polar(S::one(), a);
                let w2 = Complex::from_polar(S::one(), b);
                let z1 = -Complex::from_polar(S::one(), (a - b) + (a - b));
                let w1 = Complex::from_polar(w1_mod, (a - b) + w1_arg);
                starts.push([z1.re, z1.im, w1.re, w1.im, z2.re, z2.im, w2.re, w2.im]);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(START_STREAM_SEED);
        while starts.len() < total {
            let mut v = [S::zero(); 8];
            for slot in &mut v {
                *slot = s::<S>(rng.gen_range(-2.0..2.0));
            }
            starts.push(v);
        }
        starts
    }
}

pub(crate) fn pack<S: FloatScalar>(m: &MapCoefficients<S>) -> [S; 8] {
    [
        m.z1.re, m.z1.im, m.w1.re, m.w1.im, m.z2.re, m.z2.im, m.w2.re, m.w2.im,
    ]
}

pub(crate) fn unpack<S: FloatScalar>(v: &[S; 8]) -> MapCoefficients<S> {
    MapCoefficients::new(
        Complex::new(v[0], v[1]),
        Complex::new(v[2], v[3]),
        Complex::new(v[4], v[5]),
        Complex::new(v[6], v[7]),
    )
}

fn same_root<S: FloatScalar, const N: usize>(a: &[S; N], b: &[S; N]) -> bool {
    let tol = s::<S>(1e-6);
    let mut scale = S::one();
    for k in 0..N {
        scale = scale.max(a[k].abs()).max(b[k].abs());
    }
    (0..N).all(|k| (a[k] - b[k]).abs() <= tol * scale)
}

pub(crate) fn inf_norm<S: FloatScalar, const N: usize>(v: &[S; N]) -> S {
    v.iter().fold(S::zero(), |acc, x| acc.max(x.abs()))
}

fn norm2_sq<S: FloatScalar, const N: usize>(v: &[S; N]) -> S {
    v.iter().fold(S::zero(), |acc, x| acc + *x * *x)
}

/// Damped Newton iteration with a finite-difference Jacobian and Armijo
/// backtracking. The evaluation closure may return `None` to signal a
/// failed residual evaluation, which aborts the current line search.
///
/// Returns the final iterate, its residual ∞-norm, and whether the
/// tolerance was met.
pub(crate) fn damped_newton<S: FloatScalar, const N: usize>(
    eval: &mut dyn FnMut(&[S; N]) -> Option<[S; N]>,
    x0: [S; N],
    tol: S,
    max_iter: usize,
) -> ([S; N], S, bool) {
    let mut x = x0;
    let Some(mut f) = eval(&x) else {
        return (x, S::infinity(), false);
    };
    let mut best_x = x;
    let mut best = inf_norm(&f);
    let fd_scale = s::<S>(1e-6);
    let armijo = s::<S>(1e-4);
    let min_step = s::<S>(1e-12);

    for _ in 0..max_iter {
        let fnorm = inf_norm(&f);
        if fnorm < best {
            best = fnorm;
            best_x = x;
        }
        if fnorm <= tol {
            return (x, fnorm, true);
        }

        // Central-difference Jacobian, column by column.
        let mut jac = [[S::zero(); N]; N];
        let mut singular = false;
        for j in 0..N {
            let h = fd_scale * (S::one() + x[j].abs());
            let mut xp = x;
            let mut xm = x;
            xp[j] = xp[j] + h;
            xm[j] = xm[j] - h;
            let (Some(fp), Some(fm)) = (eval(&xp), eval(&xm)) else {
                singular = true;
                break;
            };
            for i in 0..N {
                jac[i][j] = (fp[i] - fm[i]) / (h + h);
            }
        }
        if singular {
            break;
        }

        let mut rhs = [S::zero(); N];
        for i in 0..N {
            rhs[i] = -f[i];
        }
        let Some(step) = solve_linear(&mut jac, rhs) else {
            break;
        };

        // Armijo backtracking on the squared residual norm.
        let phi0 = norm2_sq(&f);
        let mut t = S::one();
        let mut accepted = false;
        while t >= min_step {
            let mut xt = x;
            for k in 0..N {
                xt[k] = xt[k] + t * step[k];
            }
            if let Some(ft) = eval(&xt) {
                if norm2_sq(&ft) <= (S::one() - armijo * t) * phi0 {
                    x = xt;
                    f = ft;
                    accepted = true;
                    break;
                }
            }
            t = t * s::<S>(0.5);
        }
        if !accepted {
            break;
        }
    }
    let fnorm = inf_norm(&f);
    if fnorm < best {
        best = fnorm;
        best_x = x;
    }
    (best_x, best, best <= tol)
}

/// Levenberg–Marquardt iteration for a possibly overdetermined system of
/// `M` residuals in `N` unknowns, with a finite-difference Jacobian and
/// multiplicative damping on the normal equations. The evaluation closure
/// may return `None` to signal an invalid iterate, which rejects the step.
///
/// Returns the best iterate, its residual ∞-norm, and whether the
/// tolerance was met.
pub(crate) fn damped_least_squares<S: FloatScalar, const M: usize, const N: usize>(
    eval: &mut dyn FnMut(&[S; N]) -> Option<[S; M]>,
    x0: [S; N],
    tol: S,
    max_iter: usize,
) -> ([S; N], S, bool) {
    let mut x = x0;
    let Some(mut f) = eval(&x) else {
        return (x, S::infinity(), false);
    };
    let fd_scale = s::<S>(1e-6);
    let mut lambda = s::<S>(1e-3);
    let lambda_cap = s::<S>(1e12);
    let mut best_x = x;
    let mut best = inf_norm(&f);

    for _ in 0..max_iter {
        let fnorm = inf_norm(&f);
        if fnorm < best {
            best = fnorm;
            best_x = x;
        }
        if fnorm <= tol {
            return (x, fnorm, true);
        }

        // Central-difference Jacobian, column by column.
        let mut jac = [[S::zero(); N]; M];
        let mut broken = false;
        for j in 0..N {
            let h = fd_scale * (S::one() + x[j].abs());
            let mut xp = x;
            let mut xm = x;
            xp[j] = xp[j] + h;
            xm[j] = xm[j] - h;
            let (Some(fp), Some(fm)) = (eval(&xp), eval(&xm)) else {
                broken = true;
                break;
            };
            for i in 0..M {
                jac[i][j] = (fp[i] - fm[i]) / (h + h);
            }
        }
        if broken {
            break;
        }

        // Normal-equation pieces: JᵀJ and −JᵀF.
        let mut jtj = [[S::zero(); N]; N];
        let mut jtf = [S::zero(); N];
        for r in 0..N {
            for c in 0..N {
                let mut acc = S::zero();
                for i in 0..M {
                    acc = acc + jac[i][r] * jac[i][c];
                }
                jtj[r][c] = acc;
            }
            let mut acc = S::zero();
            for i in 0..M {
                acc = acc + jac[i][r] * f[i];
            }
            jtf[r] = -acc;
        }
        let diag_floor = {
            let mut m = S::zero();
            for r in 0..N {
                m = m.max(jtj[r][r]);
            }
            m * s::<S>(1e-12) + s::<S>(1e-30)
        };

        let phi0 = norm2_sq(&f);
        let mut moved = false;
        while lambda <= lambda_cap {
            let mut lhs = jtj;
            for r in 0..N {
                lhs[r][r] = lhs[r][r] + lambda * jtj[r][r].max(diag_floor);
            }
            if let Some(step) = solve_linear(&mut lhs, jtf) {
                let mut xt = x;
                for k in 0..N {
                    xt[k] = xt[k] + step[k];
                }
                if let Some(ft) = eval(&xt) {
                    if norm2_sq(&ft) < phi0 {
                        x = xt;
                        f = ft;
                        lambda = (lambda * s::<S>(0.33)).max(s::<S>(1e-12));
                        moved = true;
                        break;
                    }
                }
            }
            lambda = lambda * s::<S>(8.0);
        }
        if !moved {
            break;
        }
    }
    let fnorm = inf_norm(&f);
    if fnorm < best {
        best = fnorm;
        best_x = x;
    }
    (best_x, best, best <= tol)
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_linear<S: FloatScalar, const N: usize>(
    a: &mut [[S; N]; N],
    mut b: [S; N],
) -> Option<[S; N]> {
    for col in 0..N {
        let mut pivot = col;
        for row in col + 1..N {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        if a[pivot][col].abs() < s::<S>(1e-300) {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..N {
            let factor = a[row][col] / a[col][col];
            for k in col..N {
                a[row][k] = a[row][k] - factor * a[col][k];
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = [S::zero(); N];
    for col in (0..N).rev() {
        let mut acc = b[col];
        for k in col + 1..N {
            acc = acc - a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

/// Converts an `f64` constant into the working scalar type.
pub(crate) fn s<S: FloatScalar>(x: f64) -> S {
    S::from_f64(x).expect("scalar conversion from f64")
}

