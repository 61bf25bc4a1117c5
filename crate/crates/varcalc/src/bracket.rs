//! Bracket algebra on second-order phase space: the canonical bracket,
//! the rate correction for the non-coordinate variables, and the
//! bilinear and quadratic functionals entering first and second
//! consistency rates of constraints.

use crate::lagrangian::fd_probe_step;
use crate::state::PhasePoint;

/// Which phase-space block a partial derivative targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseVar {
    /// Coordinates.
    Q,
    /// First momenta.
    P,
    /// Second momenta.
    S,
    /// Auxiliary coordinates.
    F,
}

type PointFn<'a> = Box<dyn Fn(&PhasePoint) -> f64 + 'a>;

/// Scalar function on second-order phase space with finite-difference
/// derivative access.
pub struct PhaseFunction<'a> {
    dim: usize,
    f: PointFn<'a>,
}

const FD1: f64 = 1e-5;
const FD2: f64 = 1e-4;

fn component<'p>(pt: &'p mut PhasePoint, var: PhaseVar, i: usize) -> &'p mut f64 {
    match var {
        PhaseVar::Q => &mut pt.q[i],
        PhaseVar::P => &mut pt.p[i],
        PhaseVar::S => &mut pt.s[i],
        PhaseVar::F => &mut pt.f[i],
    }
}

impl<'a> PhaseFunction<'a> {
    /// Wraps a closure over phase points.
    pub fn new(dim: usize, f: PointFn<'a>) -> Self {
        PhaseFunction { dim, f }
    }

    /// The coordinate projection `q[i]`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        PhaseFunction::new(dim, Box::new(move |pt: &PhasePoint| pt.q[i]))
    }

    /// The first-momentum projection `p[i]`.
    pub fn momentum(dim: usize, i: usize) -> Self {
        PhaseFunction::new(dim, Box::new(move |pt: &PhasePoint| pt.p[i]))
    }

    /// Number of coordinate pairs.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates the function.
    pub fn value(&self, pt: &PhasePoint) -> f64 {
        (self.f)(pt)
    }

    /// Central-difference first partial.
    pub fn d(&self, var: PhaseVar, i: usize, pt: &PhasePoint) -> f64 {
        let mut work = pt.clone();
        let base = *component(&mut work, var, i);
        let h = fd_probe_step(FD1, base);
        *component(&mut work, var, i) = base + h;
        let plus = (self.f)(&work);
        *component(&mut work, var, i) = base - h;
        let minus = (self.f)(&work);
        (plus - minus) / (2.0 * h)
    }

    /// Central-difference second partial.
    pub fn d2(
        &self,
        var_a: PhaseVar,
        i: usize,
        var_b: PhaseVar,
        j: usize,
        pt: &PhasePoint,
    ) -> f64 {
        let mut work = pt.clone();
        if var_a == var_b && i == j {
            let base = *component(&mut work, var_a, i);
            let h = fd_probe_step(FD2, base);
            let c0 = (self.f)(&work);
            *component(&mut work, var_a, i) = base + h;
            let plus = (self.f)(&work);
            *component(&mut work, var_a, i) = base - h;
            let minus = (self.f)(&work);
            return (plus - 2.0 * c0 + minus) / (h * h);
        }
        let base_a = *component(&mut work, var_a, i);
        let base_b = *component(&mut work, var_b, j);
        let ha = fd_probe_step(FD2, base_a);
        let hb = fd_probe_step(FD2, base_b);
        let at = |da: f64, db: f64, work: &mut PhasePoint| {
            *component(work, var_a, i) = base_a + da;
            *component(work, var_b, j) = base_b + db;
            (self.f)(work)
        };
        let pp = at(ha, hb, &mut work);
        let pm = at(ha, -hb, &mut work);
        let mp = at(-ha, hb, &mut work);
        let mm = at(-ha, -hb, &mut work);
        (pp - pm - mp + mm) / (4.0 * ha * hb)
    }
}

/// Prescribed rates of the non-coordinate variables along the flow,
/// which the bracket-based consistency formulas take as inputs.
#[derive(Debug, Clone)]
pub struct Rates {
    /// First rate of the second momenta.
    pub sdot: Vec<f64>,
    /// Second rate of the second momenta.
    pub sddot: Vec<f64>,
    /// First rate of the auxiliary coordinates.
    pub fdot: Vec<f64>,
    /// Second rate of the auxiliary coordinates.
    pub fddot: Vec<f64>,
    /// Second rate of the first momenta.
    pub pddot: Vec<f64>,
}

/// Canonical bracket over the coordinate-momentum pairs.
pub fn poisson(a: &PhaseFunction<'_>, b: &PhaseFunction<'_>, pt: &PhasePoint) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        acc += a.d(PhaseVar::Q, i, pt) * b.d(PhaseVar::P, i, pt)
            - a.d(PhaseVar::P, i, pt) * b.d(PhaseVar::Q, i, pt);
    }
    acc
}

/// Rate correction: gradients along the non-coordinate directions
/// contracted with their prescribed rates. Vanishes for functions of
/// the coordinates alone.
pub fn rate_correction(a: &PhaseFunction<'_>, pt: &PhasePoint, rates: &Rates) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        acc += a.d(PhaseVar::P, i, pt) * rates.sddot[i]
            + a.d(PhaseVar::F, i, pt) * rates.fdot[i]
            + a.d(PhaseVar::S, i, pt) * rates.sdot[i];
    }
    acc
}

/// Quadratic-in-gradients functional with second partials of the first
/// argument contracted against first partials of the other two.
pub fn quad_psi(
    a: &PhaseFunction<'_>,
    b: &PhaseFunction<'_>,
    c: &PhaseFunction<'_>,
    pt: &PhasePoint,
) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += a.d2(PhaseVar::Q, i, PhaseVar::Q, j, pt)
                * b.d(PhaseVar::P, i, pt)
                * c.d(PhaseVar::P, j, pt)
                + a.d2(PhaseVar::P, i, PhaseVar::P, j, pt)
                    * b.d(PhaseVar::Q, i, pt)
                    * c.d(PhaseVar::Q, j, pt)
                - 2.0
                    * a.d2(PhaseVar::Q, i, PhaseVar::P, j, pt)
                    * b.d(PhaseVar::P, i, pt)
                    * c.d(PhaseVar::Q, j, pt);
        }
    }
    acc
}

/// Polarized companion of [`quad_psi`] for sums: the cross term in
/// `quad_psi(a, b1 + b2, c1 + c2)`.
pub fn quad_psi_cross(
    a: &PhaseFunction<'_>,
    b1: &PhaseFunction<'_>,
    b2: &PhaseFunction<'_>,
    c1: &PhaseFunction<'_>,
    c2: &PhaseFunction<'_>,
    pt: &PhasePoint,
) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += a.d2(PhaseVar::Q, i, PhaseVar::Q, j, pt)
                * b1.d(PhaseVar::P, i, pt)
                * c2.d(PhaseVar::P, j, pt)
                + a.d2(PhaseVar::P, i, PhaseVar::P, j, pt)
                    * b2.d(PhaseVar::Q, i, pt)
                    * c1.d(PhaseVar::Q, j, pt)
                - a.d2(PhaseVar::Q, i, PhaseVar::P, j, pt)
                    * b1.d(PhaseVar::P, i, pt)
                    * c2.d(PhaseVar::Q, j, pt)
                - a.d2(PhaseVar::Q, i, PhaseVar::P, j, pt)
                    * b2.d(PhaseVar::P, i, pt)
                    * c1.d(PhaseVar::Q, j, pt);
        }
    }
    acc
}

/// Mixed first-and-second-rate functional pairing gradients of the
/// first argument with rates and gradients of the second.
pub fn mixed_upsilon(
    a: &PhaseFunction<'_>,
    b: &PhaseFunction<'_>,
    pt: &PhasePoint,
    rates: &Rates,
) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        acc += 0.5 * a.d(PhaseVar::Q, i, pt) * b.d(PhaseVar::S, i, pt);
        for j in 0..n {
            acc += -a.d2(PhaseVar::P, i, PhaseVar::P, j, pt)
                * b.d(PhaseVar::Q, i, pt)
                * rates.sddot[j]
                + a.d2(PhaseVar::Q, i, PhaseVar::P, j, pt)
                    * b.d(PhaseVar::P, i, pt)
                    * rates.sddot[j]
                + a.d2(PhaseVar::Q, i, PhaseVar::F, j, pt)
                    * b.d(PhaseVar::P, i, pt)
                    * rates.fdot[j]
                + a.d2(PhaseVar::Q, i, PhaseVar::S, j, pt)
                    * b.d(PhaseVar::P, i, pt)
                    * rates.sdot[j]
                - a.d2(PhaseVar::P, i, PhaseVar::F, j, pt)
                    * b.d(PhaseVar::Q, i, pt)
                    * rates.fdot[j]
                - a.d2(PhaseVar::P, i, PhaseVar::S, j, pt)
                    * b.d(PhaseVar::Q, i, pt)
                    * rates.sdot[j];
        }
    }
    acc
}

/// Pure-rate functional: first partials against second rates plus
/// second partials against products of first rates.
pub fn rate_omega(a: &PhaseFunction<'_>, pt: &PhasePoint, rates: &Rates) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for j in 0..n {
        acc += a.d(PhaseVar::P, j, pt) * rates.pddot[j]
            + a.d(PhaseVar::F, j, pt) * rates.fddot[j]
            + a.d(PhaseVar::S, j, pt) * rates.sddot[j];
    }
    for i in 0..n {
        for j in 0..n {
            acc += a.d2(PhaseVar::P, i, PhaseVar::P, j, pt) * rates.sddot[i] * rates.sddot[j]
                + a.d2(PhaseVar::F, i, PhaseVar::F, j, pt) * rates.fdot[i] * rates.fdot[j]
                + a.d2(PhaseVar::S, i, PhaseVar::S, j, pt) * rates.sdot[i] * rates.sdot[j]
                + a.d2(PhaseVar::P, i, PhaseVar::S, j, pt) * rates.sddot[i] * rates.sdot[j]
                + a.d2(PhaseVar::F, i, PhaseVar::S, j, pt) * rates.fdot[i] * rates.sdot[j];
        }
    }
    acc
}

/// First consistency rate of a constraint against a total Hamiltonian:
/// the canonical bracket plus the rate correction.
pub fn constraint_rate(
    phi: &PhaseFunction<'_>,
    h_total: &PhaseFunction<'_>,
    pt: &PhasePoint,
    rates: &Rates,
) -> f64 {
    poisson(phi, h_total, pt) + rate_correction(phi, pt, rates)
}

/// Second consistency rate of a constraint against a total
/// Hamiltonian: the quadratic functional plus twice the mixed one plus
/// the pure-rate one.
pub fn constraint_rate2(
    phi: &PhaseFunction<'_>,
    h_total: &PhaseFunction<'_>,
    pt: &PhasePoint,
    rates: &Rates,
) -> f64 {
    quad_psi(phi, h_total, h_total, pt)
        + 2.0 * mixed_upsilon(phi, h_total, pt, rates)
        + rate_omega(phi, pt, rates)
}

/// Every functional of the suite evaluated at one point.
#[derive(Debug, Clone)]
pub struct BracketSuite {
    /// Canonical bracket of the first two functions.
    pub poisson_ab: f64,
    /// Rate correction of the first function.
    pub rate_correction_a: f64,
    /// Quadratic functional over the triple.
    pub quad_psi_abc: f64,
    /// Mixed functional of the first two.
    pub mixed_upsilon_ab: f64,
    /// Pure-rate functional of the first.
    pub rate_omega_a: f64,
    /// Cross term of the quadratic functional for sums, with the
    /// second and third functions in both slots.
    pub quad_psi_cross_abcbc: f64,
    /// First consistency rate of the first function against the
    /// second.
    pub rate1: f64,
    /// Second consistency rate of the first function against the
    /// second.
    pub rate2: f64,
}

/// Evaluates the full suite: brackets, rate functionals, and both
/// consistency rates of `a` against `b` (with `c` filling the third
/// slot of the quadratic functional).
pub fn bracket_suite(
    a: &PhaseFunction<'_>,
    b: &PhaseFunction<'_>,
    c: &PhaseFunction<'_>,
    pt: &PhasePoint,
    rates: &Rates,
) -> BracketSuite {
    BracketSuite {
        poisson_ab: poisson(a, b, pt),
        rate_correction_a: rate_correction(a, pt, rates),
        quad_psi_abc: quad_psi(a, b, c, pt),
        mixed_upsilon_ab: mixed_upsilon(a, b, pt, rates),
        rate_omega_a: rate_omega(a, pt, rates),
        quad_psi_cross_abcbc: quad_psi_cross(a, b, c, b, c, pt),
        rate1: constraint_rate(a, b, pt, rates),
        rate2: constraint_rate2(a, b, pt, rates),
    }
}
