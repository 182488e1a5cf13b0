use nalgebra::{Matrix4, Vector2, Vector4};

use crate::error::{Error, Result};
use crate::qubit::{pauli_decompose, TwoQubitState, C64};

/// Mixing weight `p ∈ [0, 1]` and thermal parameter `η ∈ [−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateFamilyParams {
    p: f64,
    eta: f64,
}

impl StateFamilyParams {
    pub fn new(p: f64, eta: f64) -> Result<Self> {
        if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "must lie in [0, 1]",
            });
        }
        if !(eta.is_finite() && (-1.0..=1.0).contains(&eta)) {
            return Err(Error::InvalidParameter {
                name: "eta",
                value: eta,
                reason: "must lie in [-1, 1]",
            });
        }
        Ok(Self { p, eta })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

fn ket(s: Vector2<C64>, e: Vector2<C64>) -> Vector4<C64> {
    Vector4::from_fn(|i, _| s[i / 2] * e[i % 2])
}

/// `p ρ_qu + (1 − p) ρ_cl` with
/// `ρ_qu = |ψ⟩⟨ψ|`, `|ψ⟩ = √((1+η)/2)|11⟩ + √((1−η)/2)|00⟩`, and
/// `ρ_cl = ((1+η)/2)|1⟩⟨1|⊗|−⟩⟨−| + ((1−η)/2)|0⟩⟨0|⊗|+⟩⟨+|`.
///
/// Both components have the thermal system marginal with Bloch vector
/// `(0, 0, −η)`.
pub fn state_family(params: StateFamilyParams) -> TwoQubitState {
    let StateFamilyParams { p, eta } = params;
    let w1 = (1.0 + eta) / 2.0;
    let w0 = (1.0 - eta) / 2.0;
    let r = |x: f64| C64::from(x);
    let zero = Vector2::new(r(1.0), r(0.0));
    let one = Vector2::new(r(0.0), r(1.0));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = Vector2::new(r(h), r(h));
    let minus = Vector2::new(r(h), r(-h));

    let psi = ket(one, one) * r(w1.sqrt()) + ket(zero, zero) * r(w0.sqrt());
    let quantum = psi * psi.adjoint();
    let a = ket(one, minus);
    let b = ket(zero, plus);
    let classical: Matrix4<C64> = a * a.adjoint() * r(w1) + b * b.adjoint() * r(w0);

    let rho = quantum * r(p) + classical * r(1.0 - p);
    pauli_decompose(&rho).expect("family members are valid density matrices")
}
