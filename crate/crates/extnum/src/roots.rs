use crate::conj::conj_mul_with;
use crate::context::AlgebraContext;
use crate::error::ExtError;
use crate::ext::ExtNumber;
use crate::maps::MapCoefficients;
use crate::scalar::FloatScalar;
use crate::solver::{damped_least_squares, inf_norm, pack, s, unpack};
use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Which square-root equation a root set solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    /// β·β = a under the ordinary product.
    Standard,
    /// β⊙β = a under the conjugate product.
    Conjugate,
    /// β^•⊙β^• = a under the conjugate product of extended conjugates.
    Extended,
}

/// The roots of one square-root problem, together with the map
/// coefficients shared by the whole set when a map solve was needed.
#[derive(Debug, Clone, Serialize)]
pub struct RootSet<S> {
    /// Which equation the roots satisfy.
    pub kind: RootKind,
    /// All roots found; sign/phase companions of one another where the
    /// defining equation is phase-insensitive.
    pub roots: Vec<ExtNumber<S>>,
    /// Map coefficients shared by every root, when applicable.
    pub maps: Option<MapCoefficients<S>>,
    /// Largest verification residual across the returned roots.
    pub residual: f64,
}

/// Seed for the nested root solver's random starts.
const ROOT_STREAM_SEED: u64 = 0x9d42_ab01_37cc_51f7;

impl<S: FloatScalar> AlgebraContext<S> {
    /// Closed-form square roots under the ordinary product: all β with
    /// β·β = a. Returns sign pairs; an empty candidate sweep is an error.
    pub fn std_sqrt(&self, a: &ExtNumber<S>) -> Result<RootSet<S>, ExtError> {
        if !a.is_finite() {
            return Err(ExtError::NonFinite("std_sqrt"));
        }
        if a.is_zero() {
            return Ok(RootSet {
                kind: RootKind::Standard,
                roots: vec![ExtNumber::zero()],
                maps: None,
                residual: 0.0,
            });
        }
        let z0 = self.z0().clone();
        let w0 = self.w0().clone();
        let four = Complex::new(s::<S>(4.0), S::zero());
        let two = Complex::new(s::<S>(2.0), S::zero());

        // β = u·k + v squares to (u²z₀ + 2uv)·k + (u²w₀ + v²); eliminating
        // v gives a quadratic in t = u² for the u ≠ 0 branch. The u = 0
        // branch (β = v with v² = y) is swept first so that deduplication
        // keeps the exactly-pure form when a mixed candidate collapses
        // onto it up to rounding noise.
        let mut candidates: Vec<ExtNumber<S>> = Vec::new();
        let v = a.y.sqrt();
        candidates.push(ExtNumber::new(Complex::new(S::zero(), S::zero()), v));
        candidates.push(ExtNumber::new(Complex::new(S::zero(), S::zero()), -v));
        let qa = four * w0 + z0 * z0;
        let qb = -(two * a.x * z0 + four * a.y);
        let qc = a.x * a.x;
        for t in complex_quadratic(qa, qb, qc) {
            let u = t.sqrt();
            if u.norm_sqr() > S::zero() {
                for uu in [u, -u] {
                    let v = (a.x - uu * uu * z0) / (two * uu);
                    candidates.push(ExtNumber::new(uu, v));
                }
            }
        }

        let scale = S::one() + a.max_abs();
        let tol = s::<S>(self.solver_tol()) * scale;
        let mut roots: Vec<ExtNumber<S>> = Vec::new();
        let mut worst = S::zero();
        let mut best_rejected = S::infinity();
        let tried = candidates.len();
        for beta in candidates {
            let err = residual_inf(&(self.std_mul(&beta, &beta) - *a));
            if err <= tol {
                if !roots.iter().any(|r| same_number(r, &beta)) {
                    roots.push(beta);
                    worst = worst.max(err);
                }
            } else if err < best_rejected {
                best_rejected = err;
            }
        }
        if roots.is_empty() {
            return Err(ExtError::NoConvergence {
                residual: best_rejected.to_f64().unwrap_or(f64::NAN),
                starts: tried,
            });
        }
        Ok(RootSet {
            kind: RootKind::Standard,
            roots,
            maps: None,
            residual: worst.to_f64().unwrap_or(f64::NAN),
        })
    }

    /// Square roots under the conjugate product: all β with β⊙β = a,
    /// where β's own solved maps drive the product.
    pub fn conj_root(&self, a: &ExtNumber<S>) -> Result<RootSet<S>, ExtError> {
        self.nested_root(a, RootKind::Conjugate)
    }

    /// Square roots of the extended-conjugate pair: all β with
    /// β^•⊙β^• = a, where β's own solved maps drive both steps.
    pub fn ext_conj_root(&self, a: &ExtNumber<S>) -> Result<RootSet<S>, ExtError> {
        self.nested_root(a, RootKind::Extended)
    }

    /// Dispatches to the square-root solver selected by `kind`.
    pub fn roots(&self, a: &ExtNumber<S>, kind: RootKind) -> Result<RootSet<S>, ExtError> {
        match kind {
            RootKind::Standard => self.std_sqrt(a),
            RootKind::Conjugate => self.conj_root(a),
            RootKind::Extended => self.ext_conj_root(a),
        }
    }

    fn nested_root(&self, a: &ExtNumber<S>, kind: RootKind) -> Result<RootSet<S>, ExtError> {
        if !a.is_finite() {
            return Err(ExtError::NonFinite("conj_root"));
        }
        if a.is_zero() {
            return Ok(RootSet {
                kind,
                roots: vec![ExtNumber::zero()],
                maps: None,
                residual: 0.0,
            });
        }
        // A positive real target is solved by pure complex numbers, for
        // which both pairings collapse to |v|² with no map dependence.
        // The gate is tolerance-based so that computed near-real targets
        // stay on this branch instead of degenerating the general chart.
        let near = s::<S>(self.solver_tol()) * (S::one() + a.max_abs());
        if a.x.norm() <= near && a.y.im.abs() <= near && a.y.re > S::zero() {
            let m = a.y.re.sqrt();
            let roots = phase_orbit(&ExtNumber::complex(Complex::new(m, S::zero())));
            let residual = inf_norm(&[a.x.re, a.x.im, a.y.im]);
            return Ok(RootSet {
                kind,
                roots,
                maps: None,
                residual: residual.to_f64().unwrap_or(f64::NAN),
            });
        }
        // A positive imaginary target is solved by pure extended numbers
        // under the conjugate pairing, again with no surviving map terms.
        if kind == RootKind::Conjugate
            && a.x.norm() <= near
            && a.y.re.abs() <= near
            && a.y.im > S::zero()
        {
            let m = a.y.im.sqrt();
            let roots = phase_orbit(&ExtNumber::extended(Complex::new(m, S::zero())));
            let residual = inf_norm(&[a.x.re, a.x.im, a.y.re]);
            return Ok(RootSet {
                kind,
                roots,
                maps: None,
                residual: residual.to_f64().unwrap_or(f64::NAN),
            });
        }

        // The defining equation is invariant under unit-phase scaling of
        // the root, so solutions come in one-parameter families and a
        // square Newton stalls on the degenerate Jacobian. Quotient the
        // phase out instead: with β = y·(p·k + 1) the pairing becomes
        // |y|²·Π(p, maps), leaving 11 unknowns (p, |y|², maps) against
        // 12 residuals (pair match and map system), solved by damped
        // least squares.
        let scale = S::one() + a.max_abs();
        let tol = s::<S>(self.solver_tol());
        let use_bullet = kind == RootKind::Extended;
        let tiny = s::<S>(1e-12);
        let huge = s::<S>(1e12);
        let mut eval = |v: &[S; 11]| -> Option<[S; 12]> {
            let p = Complex::new(v[0], v[1]);
            let t = v[2];
            let m = unpack(&[v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10]]);
            let np = p.norm();
            if !(np > tiny) || !(np < huge) || !(t > tiny * tiny) || !(t < huge) {
                return None;
            }
            let sys = self.system_residual_dir(np, p / Complex::new(np, S::zero()), &m);
            let chi = ExtNumber::new(p, Complex::new(S::one(), S::zero()));
            let pair = if use_bullet {
                let b = m.bullet(&chi);
                conj_mul_with(&b, &b, &m)
            } else {
                conj_mul_with(&chi, &chi, &m)
            };
            let d = pair.scale(&Complex::new(t, S::zero())) - *a;
            Some([
                d.x.re / scale,
                d.x.im / scale,
                d.y.re / scale,
                d.y.im / scale,
                sys[0],
                sys[1],
                sys[2],
                sys[3],
                sys[4],
                sys[5],
                sys[6],
                sys[7],
            ])
        };

        let mut beta_starts: Vec<ExtNumber<S>> = Vec::new();
        if let Ok(set) = self.std_sqrt(a) {
            for r in set.roots {
                if !r.is_pure_complex() && !r.is_pure_extended() {
                    beta_starts.push(r);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(ROOT_STREAM_SEED);
        while beta_starts.len() < self.multistart_seeds() {
            let mag: f64 = rng.gen_range(-1.2..1.2);
            let ang: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let ty: f64 = rng.gen_range(0.2..1.4);
            let y = ty.sqrt() * (S::one() + a.max_abs()).sqrt().to_f64().unwrap_or(1.0);
            beta_starts.push(ExtNumber::new(
                Complex::from_polar(s::<S>(mag.exp() * y), s::<S>(ang)),
                Complex::new(s::<S>(y), S::zero()),
            ));
        }

        // Coefficients solving the unit constraint pair exactly, as the
        // map seed when the start number's own solve fails.
        let exact_pair_maps = MapCoefficients::new(
            Complex::new(-S::one(), S::zero()),
            Complex::new(-S::one(), -(S::one() + S::one())),
            Complex::new(S::one(), S::zero()),
            Complex::new(S::one(), S::zero()),
        );

        let mut best_residual = S::infinity();
        let total = beta_starts.len();
        for beta0 in beta_starts {
            if beta0.x.norm() <= tiny || beta0.y.norm() <= tiny {
                continue;
            }
            let m0 = self
                .solve_maps(&beta0)
                .unwrap_or_else(|_| exact_pair_maps.clone());
            let pm = pack(&m0);
            let p0 = beta0.x / beta0.y;
            let t0 = beta0.y.norm_sqr();
            let start = [
                p0.re, p0.im, t0, pm[0], pm[1], pm[2], pm[3], pm[4], pm[5], pm[6], pm[7],
            ];
            let (x, res, converged) =
                damped_least_squares(&mut eval, start, tol, self.solver_max_iter());
            if res < best_residual {
                best_residual = res;
            }
            if !converged {
                continue;
            }
            let y = x[2].sqrt();
            let beta = ExtNumber::new(
                Complex::new(x[0] * y, x[1] * y),
                Complex::new(y, S::zero()),
            );
            let maps = unpack(&[x[3], x[4], x[5], x[6], x[7], x[8], x[9], x[10]])
                .with_residual(res.to_f64().unwrap_or(f64::NAN));
            // The defining equation is invariant under unit-phase scaling
            // of β, and the maps depend only on φ and θ, so the whole
            // phase orbit shares the converged coefficients.
            let roots = phase_orbit(&beta);
            let mut worst = S::zero();
            for r in &roots {
                let lhs = if use_bullet {
                    let b = maps.bullet(r);
                    conj_mul_with(&b, &b, &maps)
                } else {
                    conj_mul_with(r, r, &maps)
                };
                worst = worst.max(residual_inf(&(lhs - *a)));
            }
            return Ok(RootSet {
                kind,
                roots,
                maps: Some(maps),
                residual: worst.to_f64().unwrap_or(f64::NAN),
            });
        }
        Err(ExtError::NoConvergence {
            residual: best_residual.to_f64().unwrap_or(f64::NAN),
            starts: total,
        })
    }
}

/// β, −β, iβ, −iβ.
fn phase_orbit<S: FloatScalar>(beta: &ExtNumber<S>) -> Vec<ExtNumber<S>> {
    let i = Complex::new(S::zero(), S::one());
    vec![*beta, -*beta, beta.scale(&i), -beta.scale(&i)]
}

fn residual_inf<S: FloatScalar>(d: &ExtNumber<S>) -> S {
    inf_norm(&[d.x.re, d.x.im, d.y.re, d.y.im])
}

fn same_number<S: FloatScalar>(a: &ExtNumber<S>, b: &ExtNumber<S>) -> bool {
    let scale = S::one() + a.max_abs().max(b.max_abs());
    residual_inf(&(*a - *b)) <= s::<S>(1e-9) * scale
}

/// Roots of a·t² + b·t + c over ℂ, handling degenerate leading terms.
fn complex_quadratic<S: FloatScalar>(
    a: Complex<S>,
    b: Complex<S>,
    c: Complex<S>,
) -> Vec<Complex<S>> {
    let scale = a.norm().max(b.norm()).max(c.norm());
    if scale == S::zero() {
        return Vec::new();
    }
    let tiny = s::<S>(1e-14) * scale;
    if a.norm() <= tiny {
        if b.norm() <= tiny {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let four = Complex::new(s::<S>(4.0), S::zero());
    let two = Complex::new(s::<S>(2.0), S::zero());
    let mut sq = (b * b - four * a * c).sqrt();
    // Align the branch with b to avoid cancellation in b + sq.
    if (b.conj() * sq).re < S::zero() {
        sq = -sq;
    }
    let q = -(b + sq) / two;
    if q.norm() <= tiny * tiny {
        let r = -b / (two * a);
        return vec![r, r];
    }
    vec![q / a, c / q]
}
