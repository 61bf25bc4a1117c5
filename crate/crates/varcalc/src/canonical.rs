//! Infinitesimal canonical transformations of second-order phase
//! space, the displacement tables of the standard generators, and
//! validation of velocity-correlation families.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::VarError;
use crate::state::PhasePoint;

/// Generators of the canonical displacement tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// The identity transformation.
    Identity,
    /// First momentum of one coordinate: displaces that coordinate.
    Momentum(usize),
    /// Second momentum of one coordinate: displaces the paired
    /// auxiliary coordinate negatively.
    SecondMomentum(usize),
    /// Time evolution: displaces every variable along its flow rate.
    Time,
}

/// Flow rates the time generator displaces along.
#[derive(Debug, Clone)]
pub struct FlowRates {
    /// Coordinate rates.
    pub qdot: Vec<f64>,
    /// First-momentum rates.
    pub pdot: Vec<f64>,
    /// Second-momentum rates.
    pub sdot: Vec<f64>,
    /// Auxiliary-coordinate rates.
    pub fdot: Vec<f64>,
}

type FamilyFn<'a> = Box<dyn Fn(usize, &[f64]) -> f64 + 'a>;
type TableFn<'a> = Box<dyn Fn(usize, usize, &[f64]) -> f64 + 'a>;

/// A family of velocity-correlation functions: one scalar per
/// coordinate, each a function of all velocities, with an optional
/// pairing table for the normalization identity.
pub struct CorrelationFamily<'a> {
    dim: usize,
    f2: FamilyFn<'a>,
    table: Option<TableFn<'a>>,
}

impl<'a> CorrelationFamily<'a> {
    /// Builds a family from the component closure.
    pub fn new(dim: usize, f2: FamilyFn<'a>) -> Self {
        CorrelationFamily {
            dim,
            f2,
            table: None,
        }
    }

    /// Attaches a pairing table for the normalization identity.
    pub fn with_table(mut self, table: TableFn<'a>) -> Self {
        self.table = Some(table);
        self
    }

    /// Number of components.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates component `i` at the velocities.
    pub fn value(&self, i: usize, qdot: &[f64]) -> f64 {
        (self.f2)(i, qdot)
    }
}

/// Applies one infinitesimal generator to a phase point.
///
/// The displacement tables: the identity changes nothing; the first
/// momentum of coordinate `i` adds `eps` to that coordinate only; the
/// second momentum of coordinate `i` subtracts `eps` from the paired
/// auxiliary coordinate only; the time generator adds `eps` times the
/// flow rate to coordinates and momenta and subtracts `eps` times the
/// auxiliary rate from the auxiliary coordinates.
///
/// Generators that touch the auxiliary coordinates require a
/// correlation family; the time generator additionally needs the flow
/// rates.
pub fn generator_apply(
    kind: Generator,
    eps: f64,
    point: &PhasePoint,
    family: Option<&CorrelationFamily<'_>>,
    rates: Option<&FlowRates>,
) -> Result<PhasePoint, VarError> {
    let n = point.dim();
    let mut out = point.clone();
    match kind {
        Generator::Identity => {}
        Generator::Momentum(i) => {
            if i >= n {
                return Err(VarError::Dimension { expected: n, got: i });
            }
            out.q[i] += eps;
        }
        Generator::SecondMomentum(i) => {
            if family.is_none() {
                return Err(VarError::MissingFamily);
            }
            if i >= n {
                return Err(VarError::Dimension { expected: n, got: i });
            }
            out.f[i] -= eps;
        }
        Generator::Time => {
            if family.is_none() {
                return Err(VarError::MissingFamily);
            }
            let rates = rates.ok_or_else(|| {
                VarError::Config("time generator needs flow rates".into())
            })?;
            if rates.qdot.len() != n
                || rates.pdot.len() != n
                || rates.sdot.len() != n
                || rates.fdot.len() != n
            {
                return Err(VarError::Dimension {
                    expected: n,
                    got: rates.qdot.len(),
                });
            }
            for i in 0..n {
                out.q[i] += eps * rates.qdot[i];
                out.p[i] += eps * rates.pdot[i];
                out.s[i] += eps * rates.sdot[i];
                out.f[i] -= eps * rates.fdot[i];
            }
        }
    }
    Ok(out)
}

/// Outcome of validating a correlation family at one velocity point on
/// its value surface.
#[derive(Debug, Clone)]
pub struct FamilyReport {
    /// Largest deviation of the velocity Jacobian from the identity.
    pub derivative_max_dev: f64,
    /// Whether the Jacobian condition holds to tolerance.
    pub derivative_ok: bool,
    /// Gap between the family values and the supplied surface values.
    pub surface_residual: Vec<f64>,
    /// Largest deviation of the pairing-table normalization from the
    /// identity, when a table is attached.
    pub normalization_max_dev: Option<f64>,
    /// Whether the normalization holds, when a table is attached.
    pub normalization_ok: Option<bool>,
    /// Per component, the largest observed variation of the family
    /// value minus the velocity across perturbed velocity points.
    pub nonconstancy_witness: Vec<f64>,
    /// Whether any component shows genuine velocity dependence beyond
    /// a constant shift.
    pub nonconstant: bool,
}

const DERIVATIVE_TOL: f64 = 1e-6;
const NORMALIZATION_TOL: f64 = 1e-10;
const CONSTANCY_TOL: f64 = 1e-9;
const WITNESS_SEED: u64 = 0x33aa_17f0_9b1d_c42e;
const WITNESS_SAMPLES: usize = 8;

/// Checks a correlation family at a velocity point: the velocity
/// Jacobian must be the identity there, the optional pairing table
/// must satisfy its quadratic normalization, and the family should
/// differ from a constant shift of the velocities somewhere nearby.
pub fn validate_correlation_family(
    family: &CorrelationFamily<'_>,
    qdot: &[f64],
    f_surface: &[f64],
) -> FamilyReport {
    let n = family.dim();
    assert!(
        qdot.len() == n && f_surface.len() == n,
        "velocity and surface points must match the family dimension"
    );

    // Velocity Jacobian against the identity.
    let mut derivative_max_dev = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let h = 1e-6 * (1.0 + qdot[j].abs());
            let mut v = qdot.to_vec();
            v[j] = qdot[j] + h;
            let plus = family.value(i, &v);
            v[j] = qdot[j] - h;
            let minus = family.value(i, &v);
            let deriv = (plus - minus) / (2.0 * h);
            let target = f64::from(u8::from(i == j));
            derivative_max_dev = derivative_max_dev.max((deriv - target).abs());
        }
    }
    let derivative_ok = derivative_max_dev <= DERIVATIVE_TOL;

    let surface_residual: Vec<f64> = (0..n)
        .map(|i| family.value(i, qdot) - f_surface[i])
        .collect();

    // Quadratic normalization of the pairing table.
    let (normalization_max_dev, normalization_ok) = match &family.table {
        Some(table) => {
            let mut dev = 0.0f64;
            for i in 0..n {
                for k in 0..n {
                    let mut acc = 0.0;
                    for j in 0..n {
                        acc += table(j, k, qdot) * table(i, j, qdot);
                    }
                    let target = f64::from(u8::from(i == k));
                    dev = dev.max((acc - target).abs());
                }
            }
            (Some(dev), Some(dev <= NORMALIZATION_TOL))
        }
        None => (None, None),
    };

    // Non-constancy witness: the family minus the velocities must vary
    // across nearby velocity points, otherwise the family is the
    // rejected constant-shift solution.
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    let base_shift: Vec<f64> = (0..n).map(|i| family.value(i, qdot) - qdot[i]).collect();
    let mut nonconstancy_witness = vec![0.0f64; n];
    for _ in 0..WITNESS_SAMPLES {
        let v: Vec<f64> = qdot
            .iter()
            .map(|x| {
                let u: f64 = rng.gen_range(-1.0..1.0);
                x + u * (1.0 + x.abs())
            })
            .collect();
        for i in 0..n {
            let shift = family.value(i, &v) - v[i];
            nonconstancy_witness[i] =
                nonconstancy_witness[i].max((shift - base_shift[i]).abs());
        }
    }
    let scale = 1.0 + qdot.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let nonconstant = nonconstancy_witness
        .iter()
        .any(|w| *w > CONSTANCY_TOL * scale);

    FamilyReport {
        derivative_max_dev,
        derivative_ok,
        surface_residual,
        normalization_max_dev,
        normalization_ok,
        nonconstancy_witness,
        nonconstant,
    }
}
