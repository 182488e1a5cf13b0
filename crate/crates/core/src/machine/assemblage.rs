use nalgebra::Vector3;

use crate::error::{Error, Result, VALIDITY_TOL};
use crate::qubit::{BlochVector, MeasurementDirection, QubitState, TwoQubitState};

/// Branches whose normalization `1 ± n·b` falls below this never occur.
const NULL_BRANCH: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }
}

/// One conditional state `ρ_a` together with its probability `p_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub outcome: Outcome,
    pub probability: f64,
    pub bloch: BlochVector,
}

impl Branch {
    pub fn state(&self) -> QubitState {
        QubitState::from_bloch(self.bloch)
    }
}

/// The ensemble `{p_a, ρ_a}` that one environment measurement prepares on
/// the system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assemblage {
    measurement: MeasurementDirection,
    branches: [Branch; 2],
}

impl Assemblage {
    /// Validates nonnegative probabilities summing to one.
    pub fn new(measurement: MeasurementDirection, plus: Branch, minus: Branch) -> Result<Self> {
        for b in [&plus, &minus] {
            if b.probability.is_nan() || b.probability < -VALIDITY_TOL {
                return Err(Error::InvalidParameter {
                    name: "probability",
                    value: b.probability,
                    reason: "branch probabilities must be nonnegative",
                });
            }
        }
        let total = plus.probability + minus.probability;
        if (total - 1.0).abs() > VALIDITY_TOL {
            return Err(Error::InvalidParameter {
                name: "probability",
                value: total,
                reason: "branch probabilities must sum to 1",
            });
        }
        Ok(Self {
            measurement,
            branches: [
                Branch {
                    outcome: Outcome::Plus,
                    ..plus
                },
                Branch {
                    outcome: Outcome::Minus,
                    ..minus
                },
            ],
        })
    }

    pub fn measurement(&self) -> MeasurementDirection {
        self.measurement
    }

    pub fn branches(&self) -> &[Branch; 2] {
        &self.branches
    }

    /// `Σ_a p_a r_a`, the system marginal.
    pub fn marginal(&self) -> Vector3<f64> {
        self.branches
            .iter()
            .map(|b| b.bloch.vector() * b.probability)
            .sum()
    }

    /// `p₊ − p₋`, which equals `n·b` for a two-qubit source.
    pub fn outcome_bias(&self) -> f64 {
        self.branches[0].probability - self.branches[1].probability
    }

    /// `p₊r₊ − p₋r₋`, which equals `T n` for a two-qubit source.
    pub fn correlation(&self) -> Vector3<f64> {
        self.branches[0].bloch.vector() * self.branches[0].probability
            - self.branches[1].bloch.vector() * self.branches[1].probability
    }

    /// `Σ_a p_a |r_a|`.
    pub fn mean_bloch_length(&self) -> f64 {
        self.branches.iter().map(|b| b.probability * b.bloch.norm()).sum()
    }
}

/// Conditional system states after measuring `n·σ` on the environment:
/// `p± = (1 ± n·b)/2`, `r± = (a ± T n)/(1 ± n·b)`.
///
/// A branch with `1 ± n·b = 0` gets probability zero and reports the
/// marginal `a` as a placeholder Bloch vector.
pub fn assemblage(rho: &TwoQubitState, n: &MeasurementDirection) -> Assemblage {
    let a = rho.a();
    let nb = n.vector().dot(&rho.b());
    let tn = rho.t() * n.vector();
    let placeholder = BlochVector::clamped(a);

    let branch = |outcome: Outcome| {
        let s = outcome.sign();
        let weight = 1.0 + s * nb;
        if weight <= NULL_BRANCH {
            Branch {
                outcome,
                probability: 0.0,
                bloch: placeholder,
            }
        } else {
            Branch {
                outcome,
                probability: weight / 2.0,
                bloch: BlochVector::clamped((a + tn * s) / weight),
            }
        }
    };
    let (mut plus, mut minus) = (branch(Outcome::Plus), branch(Outcome::Minus));
    if plus.probability == 0.0 {
        minus.probability = 1.0;
    } else if minus.probability == 0.0 {
        plus.probability = 1.0;
    }
    Assemblage {
        measurement: *n,
        branches: [plus, minus],
    }
}
