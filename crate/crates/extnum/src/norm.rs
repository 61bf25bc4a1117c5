use crate::error::ExtError;
use crate::ext::ExtNumber;
use crate::scalar::FloatScalar;
use serde::Serialize;

/// The shape parameters of a number: `φ = |x|/|y|` and `θ = θ_x − θ_y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiTheta<S> {
    /// Modulus ratio of the extended to the complex part.
    pub phi: S,
    /// Argument difference between the extended and the complex part.
    pub theta: S,
}

/// Computes φ and θ; both parts must be nonzero for them to exist.
pub fn phi_theta<S: FloatScalar>(a: &ExtNumber<S>) -> Result<PhiTheta<S>, ExtError> {
    let nx = a.x.norm_sqr();
    let ny = a.y.norm_sqr();
    if nx.is_zero() || ny.is_zero() {
        return Err(ExtError::Degenerate("phi_theta"));
    }
    let phi = (nx / ny).sqrt();
    let theta = a.x.im.atan2(a.x.re) - a.y.im.atan2(a.y.re);
    Ok(PhiTheta { phi, theta })
}

/// One isotropy scan result for a single value of `R`.
#[derive(Debug, Clone, Serialize)]
pub struct IsotropyReport {
    /// The norm parameter scanned.
    pub r: f64,
    /// Number of orbit elements evaluated (24 permutations × 16 signs).
    pub orbit_size: usize,
    /// Largest minus smallest norm value over the orbit.
    pub max_spread: f64,
    /// A witness pair attaining the spread, when it is nonzero.
    pub violation: Option<IsotropyViolation>,
}

/// Two component arrangements whose norms disagree.
#[derive(Debug, Clone, Serialize)]
pub struct IsotropyViolation {
    pub min_tuple: [f64; 4],
    pub min_value: f64,
    pub max_tuple: [f64; 4],
    pub max_value: f64,
}

/// Evaluates `|α|⁴` over the full component orbit of `(a, b, c, d)` —
/// all 24 orderings combined with all 16 sign choices — for each `R`,
/// and reports the spread.
///
/// A rotationally indifferent norm must give the same value for every
/// arrangement; with exact inputs (integers small enough for exact
/// float arithmetic) the spread is exactly zero when `R = 2` and a
/// violating pair exists for any other `R`, provided the components are
/// not too symmetric to tell apart.
pub fn isotropy_scan(tuple: [f64; 4], r_values: &[f64]) -> Vec<IsotropyReport> {
    let perms = permutations_of_four();
    r_values
        .iter()
        .map(|&r| {
            let mut min_v = f64::INFINITY;
            let mut max_v = f64::NEG_INFINITY;
            let mut min_t = tuple;
            let mut max_t = tuple;
            let mut count = 0usize;
            for perm in &perms {
                for signs in 0u8..16 {
                    let mut t = [0.0f64; 4];
                    for (slot, &src) in perm.iter().enumerate() {
                        let sign = if signs & (1 << slot) != 0 { -1.0 } else { 1.0 };
                        t[slot] = sign * tuple[src];
                    }
                    let v = quartic_norm(&t, r);
                    if v < min_v {
                        min_v = v;
                        min_t = t;
                    }
                    if v > max_v {
                        max_v = v;
                        max_t = t;
                    }
                    count += 1;
                }
            }
            let max_spread = max_v - min_v;
            IsotropyReport {
                r,
                orbit_size: count,
                max_spread,
                violation: (max_spread != 0.0).then_some(IsotropyViolation {
                    min_tuple: min_t,
                    min_value: min_v,
                    max_tuple: max_t,
                    max_value: max_v,
                }),
            }
        })
        .collect()
}

/// `|α|⁴` for components `(a, b, c, d) = (x.re, x.im, y.re, y.im)`.
fn quartic_norm(t: &[f64; 4], r: f64) -> f64 {
    let nx = t[0] * t[0] + t[1] * t[1];
    let ny = t[2] * t[2] + t[3] * t[3];
    nx * nx + ny * ny + r * nx * ny
}

/// All 24 orderings of four indices.
fn permutations_of_four() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    let mut idx = [0usize, 1, 2, 3];
    heap_permute(&mut idx, 4, &mut out);
    out
}

fn heap_permute(idx: &mut [usize; 4], n: usize, out: &mut Vec<[usize; 4]>) {
    if n == 1 {
        out.push(*idx);
        return;
    }
    for i in 0..n {
        heap_permute(idx, n - 1, out);
        if n % 2 == 0 {
            idx.swap(i, n - 1);
        } else {
            idx.swap(0, n - 1);
        }
    }
}
