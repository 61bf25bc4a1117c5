//! A small JSON-loadable expression language for Lagrangians: sums of
//! coefficient-weighted products of powers of `t`, coordinates,
//! velocities, and accelerations, each optionally wrapped in sine or
//! cosine.

use serde::{Deserialize, Serialize};

use crate::error::VarError;
use crate::lagrangian::SecondOrderLagrangian;

/// Variable a factor reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    /// Time.
    T,
    /// Coordinate `q[index]`.
    Q,
    /// Velocity `qd[index]`.
    Qd,
    /// Acceleration `qdd[index]`.
    Qdd,
}

/// Pointwise function applied to the variable before exponentiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FuncKind {
    /// Leave the value unchanged.
    #[default]
    Id,
    /// Sine.
    Sin,
    /// Cosine.
    Cos,
}

fn default_power() -> u32 {
    1
}

/// One multiplicative factor: `func(variable) ^ power`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorSpec {
    /// Which variable to read.
    pub var: VarKind,
    /// Coordinate index; ignored for time.
    #[serde(default)]
    pub index: usize,
    /// Exponent, at least 1.
    #[serde(default = "default_power")]
    pub power: u32,
    /// Wrapping function, identity by default.
    #[serde(default)]
    pub func: FuncKind,
}

/// One additive term: a coefficient times a product of factors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermSpec {
    /// Multiplicative coefficient.
    pub coeff: f64,
    /// Factors multiplied together; empty means the constant term.
    #[serde(default)]
    pub factors: Vec<FactorSpec>,
}

/// Serializable description of a Lagrangian as a polynomial-with-trig
/// expression.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LagrangianSpec {
    /// Number of coordinates.
    pub dim: usize,
    /// Additive terms.
    pub terms: Vec<TermSpec>,
    /// Optional finite-difference step override.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
}

impl LagrangianSpec {
    /// Parses a spec from JSON text.
    pub fn from_json(text: &str) -> Result<Self, VarError> {
        serde_json::from_str(text).map_err(|e| VarError::Config(e.to_string()))
    }

    /// Serializes the spec to JSON text.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Validates the spec and builds the evaluating Lagrangian.
    pub fn build(&self) -> Result<SecondOrderLagrangian, VarError> {
        if self.dim == 0 {
            return Err(VarError::Config("dimension must be positive".into()));
        }
        for term in &self.terms {
            for factor in &term.factors {
                if factor.var != VarKind::T && factor.index >= self.dim {
                    return Err(VarError::Dimension {
                        expected: self.dim,
                        got: factor.index,
                    });
                }
                if factor.power == 0 {
                    return Err(VarError::Config(
                        "factor powers must be at least 1".into(),
                    ));
                }
            }
        }
        let terms = self.terms.clone();
        let mut lag = SecondOrderLagrangian::new(
            self.dim,
            Box::new(move |t: f64, q: &[f64], qd: &[f64], qdd: &[f64]| {
                let mut total = 0.0;
                for term in &terms {
                    let mut prod = term.coeff;
                    for factor in &term.factors {
                        let raw = match factor.var {
                            VarKind::T => t,
                            VarKind::Q => q[factor.index],
                            VarKind::Qd => qd[factor.index],
                            VarKind::Qdd => qdd[factor.index],
                        };
                        let wrapped = match factor.func {
                            FuncKind::Id => raw,
                            FuncKind::Sin => raw.sin(),
                            FuncKind::Cos => raw.cos(),
                        };
                        prod *= wrapped.powi(factor.power as i32);
                    }
                    total += prod;
                }
                total
            }),
        );
        if let Some(step) = self.fd_step {
            lag.set_fd_step(step)?;
        }
        Ok(lag)
    }
}
