//! Local-hidden-state models for two measurements in deterministic-response
//! form.
//!
//! A general response function `f(n_j, λ) ∈ [−1, 1]` is split into four
//! nonnegative sub-densities `μ_c(λ)`, one per response class
//! `c = (c₁, c₂) ∈ {±1}²`. Then `ω(λ) = Σ_c μ_c(λ)` and
//! `ω(λ) f(n_j, λ) = Σ_c c_j μ_c(λ)`, so every moment the model must match
//! is linear in `μ`.

use nalgebra::Vector3;

use crate::error::{Error, Result, VALIDITY_TOL};
use crate::machine::{Assemblage, Branch, Outcome};
use crate::qubit::{BlochVector, MeasurementDirection};

/// Number of linear moments a two-measurement model has to reproduce:
/// normalization, `Σμλ`, and for each measurement `Σ c_j μ` and `Σ c_j μ λ`.
pub const MOMENT_COUNT: usize = 12;

/// Deterministic outcomes `(c₁, c₂)` for the two measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResponseClass {
    pub first: Outcome,
    pub second: Outcome,
}

impl ResponseClass {
    pub const ALL: [ResponseClass; 4] = [
        ResponseClass::new(Outcome::Plus, Outcome::Plus),
        ResponseClass::new(Outcome::Plus, Outcome::Minus),
        ResponseClass::new(Outcome::Minus, Outcome::Plus),
        ResponseClass::new(Outcome::Minus, Outcome::Minus),
    ];

    pub const fn new(first: Outcome, second: Outcome) -> Self {
        Self { first, second }
    }

    pub fn signs(&self) -> [f64; 2] {
        [self.first.sign(), self.second.sign()]
    }

    pub fn outcome(&self, measurement: usize) -> Outcome {
        match measurement {
            0 => self.first,
            1 => self.second,
            _ => panic!("two-measurement model has no measurement {measurement}"),
        }
    }
}

fn flip(o: Outcome) -> Outcome {
    match o {
        Outcome::Plus => Outcome::Minus,
        Outcome::Minus => Outcome::Plus,
    }
}

/// Moment vector contributed by unit weight at hidden state `λ` in class `c`:
/// `[1, λ, c₁, c₁λ, c₂, c₂λ]`.
pub fn moment_column(lambda: &Vector3<f64>, class: ResponseClass) -> [f64; MOMENT_COUNT] {
    let [c1, c2] = class.signs();
    [
        1.0,
        lambda.x,
        lambda.y,
        lambda.z,
        c1,
        c1 * lambda.x,
        c1 * lambda.y,
        c1 * lambda.z,
        c2,
        c2 * lambda.x,
        c2 * lambda.y,
        c2 * lambda.z,
    ]
}

/// The same moments read off a pair of assemblages.
pub fn assemblage_moments(assemblages: &[Assemblage; 2]) -> [f64; MOMENT_COUNT] {
    let a = assemblages[0].marginal();
    let mut m = [0.0; MOMENT_COUNT];
    m[0] = 1.0;
    m[1..4].copy_from_slice(a.as_slice());
    for (j, asm) in assemblages.iter().enumerate() {
        let base = 4 + 4 * j;
        m[base] = asm.outcome_bias();
        m[base + 1..base + 4].copy_from_slice(asm.correlation().as_slice());
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhsAtom {
    pub lambda: Vector3<f64>,
    pub class: ResponseClass,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LhsModel {
    atoms: Vec<LhsAtom>,
}

impl LhsModel {
    /// Weights must be nonnegative and sum to one; hidden states must be
    /// inside the Bloch ball.
    pub fn new(atoms: Vec<LhsAtom>) -> Result<Self> {
        for atom in &atoms {
            if atom.weight.is_nan() || atom.weight < -VALIDITY_TOL {
                return Err(Error::InvalidParameter {
                    name: "weight",
                    value: atom.weight,
                    reason: "hidden-state weights must be nonnegative",
                });
            }
            let norm = atom.lambda.norm();
            if norm.is_nan() || norm > 1.0 + VALIDITY_TOL {
                return Err(Error::UnphysicalBloch { norm });
            }
        }
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter {
                name: "weight",
                value: total,
                reason: "hidden-state weights must sum to 1",
            });
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[LhsAtom] {
        &self.atoms
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn moments(&self) -> [f64; MOMENT_COUNT] {
        let mut m = [0.0; MOMENT_COUNT];
        for atom in &self.atoms {
            for (acc, v) in m.iter_mut().zip(moment_column(&atom.lambda, atom.class)) {
                *acc += atom.weight * v;
            }
        }
        m
    }

    /// `Σ μ λ`.
    pub fn bloch_mean(&self) -> Vector3<f64> {
        self.atoms.iter().map(|a| a.lambda * a.weight).sum()
    }

    /// `Σ c_j μ`.
    pub fn response_mean(&self, measurement: usize) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.class.signs()[measurement] * a.weight)
            .sum()
    }

    /// `Σ c_j μ λ`.
    pub fn response_moment(&self, measurement: usize) -> Vector3<f64> {
        self.atoms
            .iter()
            .map(|a| a.lambda * (a.class.signs()[measurement] * a.weight))
            .sum()
    }

    /// Adds the mirror images of every atom in the planes orthogonal to `e1`
    /// and `e2`, each at a quarter of the weight. Reflecting through the
    /// `e1` plane flips the first response, through the `e2` plane the
    /// second, so `Σ c₁μλ ∥ e₁`, `Σ c₂μλ ∥ e₂` and both response means
    /// vanish.
    pub fn symmetrized(&self, e1: &Vector3<f64>, e2: &Vector3<f64>) -> Self {
        let reflect = |v: Vector3<f64>, e: &Vector3<f64>| v - e * (2.0 * v.dot(e));
        let atoms = self
            .atoms
            .iter()
            .flat_map(|atom| {
                let w = atom.weight / 4.0;
                let ResponseClass { first, second } = atom.class;
                let l1 = reflect(atom.lambda, e1);
                [
                    LhsAtom { lambda: atom.lambda, class: atom.class, weight: w },
                    LhsAtom { lambda: l1, class: ResponseClass::new(flip(first), second), weight: w },
                    LhsAtom { lambda: reflect(atom.lambda, e2), class: ResponseClass::new(first, flip(second)), weight: w },
                    LhsAtom { lambda: reflect(l1, e2), class: ResponseClass::new(flip(first), flip(second)), weight: w },
                ]
            })
            .collect();
        Self { atoms }
    }

    /// The assemblages the model prepares for the two measurements:
    /// `p_a ρ_a = Σ_{c_j = a} μ_c(λ) (1 + λ·σ)/2`.
    pub fn assemblages(&self, n1: MeasurementDirection, n2: MeasurementDirection) -> Result<[Assemblage; 2]> {
        let marginal = self.bloch_mean();
        let build = |j: usize, n: MeasurementDirection| {
            let branch = |outcome: Outcome| {
                let (p, pr) = self
                    .atoms
                    .iter()
                    .filter(|a| a.class.outcome(j) == outcome)
                    .fold((0.0, Vector3::zeros()), |(p, pr), a| (p + a.weight, pr + a.lambda * a.weight));
                let bloch = if p > 0.0 { BlochVector::clamped(pr / p) } else { BlochVector::clamped(marginal) };
                Branch { outcome, probability: p, bloch }
            };
            Assemblage::new(n, branch(Outcome::Plus), branch(Outcome::Minus))
        };
        Ok([build(0, n1)?, build(1, n2)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn atom(lambda: Vector3<f64>, c1: Outcome, c2: Outcome, weight: f64) -> LhsAtom {
        LhsAtom { lambda, class: ResponseClass::new(c1, c2), weight }
    }

    #[test]
    fn rejects_bad_weights() {
        let a = atom(Vector3::z(), Outcome::Plus, Outcome::Plus, 0.5);
        assert!(LhsModel::new(vec![a]).is_err());
        let neg = atom(Vector3::z(), Outcome::Plus, Outcome::Plus, -0.5);
        let big = atom(Vector3::z(), Outcome::Plus, Outcome::Plus, 1.5);
        assert!(LhsModel::new(vec![neg, big]).is_err());
        let long = atom(Vector3::new(1.0, 1.0, 0.0), Outcome::Plus, Outcome::Plus, 1.0);
        assert!(LhsModel::new(vec![long]).is_err());
    }

    #[test]
    fn symmetrized_moments_are_aligned() {
        let model = LhsModel::new(vec![
            atom(Vector3::new(0.6, 0.0, 0.8), Outcome::Plus, Outcome::Minus, 0.3),
            atom(Vector3::new(0.36, 0.48, 0.8), Outcome::Minus, Outcome::Plus, 0.7),
        ])
        .unwrap();
        let sym = model.symmetrized(&Vector3::x(), &Vector3::y());
        assert_eq!(sym.atoms().len(), 8);
        assert_abs_diff_eq!(sym.total_weight(), 1.0, epsilon = 1e-15);
        let mean = sym.bloch_mean();
        assert_abs_diff_eq!(mean.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mean.y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sym.response_mean(0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sym.response_mean(1), 0.0, epsilon = 1e-15);
        let m1 = sym.response_moment(0);
        let m2 = sym.response_moment(1);
        assert_abs_diff_eq!(m1.y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m1.z, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m2.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m2.z, 0.0, epsilon = 1e-15);
        // c₁λ·x̂ = 0.6·0.3 − 0.36·0.7.
        assert_abs_diff_eq!(m1.x, 0.18 - 0.252, epsilon = 1e-15);
    }

    #[test]
    fn assemblages_reproduce_moments() {
        let model = LhsModel::new(vec![
            atom(Vector3::z(), Outcome::Plus, Outcome::Plus, 0.375),
            atom(Vector3::z(), Outcome::Plus, Outcome::Minus, 0.375),
            atom(-Vector3::z(), Outcome::Minus, Outcome::Plus, 0.125),
            atom(-Vector3::z(), Outcome::Minus, Outcome::Minus, 0.125),
        ])
        .unwrap();
        let asm = model.assemblages(MeasurementDirection::x(), MeasurementDirection::z()).unwrap();
        let from_asm = assemblage_moments(&asm);
        let from_model = model.moments();
        for (a, b) in from_asm.iter().zip(&from_model) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(asm[0].branches()[0].bloch.vector(), Vector3::z(), epsilon = 1e-15);
        assert_abs_diff_eq!(asm[1].branches()[0].bloch.vector(), Vector3::new(0.0, 0.0, 0.5), epsilon = 1e-15);
    }
}
