//! Work extraction from a single qubit by a local unitary.

use nalgebra::{Matrix2, Vector3};

use crate::error::{Error, Result};
use crate::qubit::{pauli, BlochVector, Hamiltonian, QubitState, C64};

/// Thermal state with populations `(1+η)/2` on `|1⟩` and `(1−η)/2` on `|0⟩`,
/// i.e. Bloch vector `(0, 0, −η)`.
pub fn thermal_state(eta: f64) -> Result<QubitState> {
    if !(eta.is_finite() && eta.abs() <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: eta,
            reason: "must lie in [-1, 1]",
        });
    }
    Ok(QubitState::from_bloch(BlochVector::clamped(Vector3::new(0.0, 0.0, -eta))))
}

/// The unitary `|0⟩⟨φ₀| + |1⟩⟨φ₁|` that rotates the Bloch vector onto `+ẑ`
/// with its length unchanged. Identity when `r = 0`.
pub fn extraction_unitary(rho: &QubitState) -> Matrix2<C64> {
    let (phi0, phi1) = rho.eigenvectors();
    Matrix2::from_rows(&[phi0.adjoint(), phi1.adjoint()])
}

/// Ergotropy `ω₀(−r_z + |r|)/2`.
pub fn extractable_work(rho: &QubitState, h: &Hamiltonian) -> f64 {
    let r = rho.bloch();
    h.omega0() * (r.norm() - r.z()) / 2.0
}

/// Best work over conjugation by `{1, σ_x, σ_y, σ_z}`.
pub fn pauli_restricted_work(rho: &QubitState, h: &Hamiltonian) -> f64 {
    let hm = h.matrix();
    let before = (hm * rho.matrix()).trace().re;
    let mut best = 0.0_f64;
    for axis in 0..3 {
        let u = pauli(axis);
        let after = (hm * u * rho.matrix() * u.adjoint()).trace().re;
        best = best.max(before - after);
    }
    best
}
