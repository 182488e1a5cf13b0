//! Entanglement preparable from a qubit and a pure ancilla, and the
//! Wootters concurrence used to check it.

use nalgebra::{DMatrix, Matrix4, SymmetricEigen, Vector2, Vector4};

use crate::error::{Error, Result, VALIDITY_TOL};
use crate::qubit::{kron, pauli, validate_two_qubit, QubitState, C64};

/// Eigenvalues of `ρ` below this are treated as exact zeros when forming
/// the concurrence; eigensolver noise is ~1e-16.
const RANK_CUTOFF: f64 = 1e-13;

/// `(1 + |r|)/2`.
pub fn max_entanglement(rho: &QubitState) -> f64 {
    (1.0 + rho.bloch().norm()) / 2.0
}

fn ket(s: &Vector2<C64>, c: &Vector2<C64>) -> Vector4<C64> {
    Vector4::from_fn(|i, _| s[i / 2] * c[i % 2])
}

fn basis(i: usize) -> Vector4<C64> {
    let mut v = Vector4::zeros();
    v[i] = C64::from(1.0);
    v
}

/// `|Φ±⟩ = (|00⟩ ± |11⟩)/√2`.
pub fn bell_phi(sign: f64) -> Vector4<C64> {
    (basis(0) + basis(3) * C64::from(sign)) * C64::from(std::f64::consts::FRAC_1_SQRT_2)
}

/// `ρ ⊗ |1⟩⟨1|`.
pub fn with_ancilla(rho: &QubitState) -> Matrix4<C64> {
    let mut one = nalgebra::Matrix2::zeros();
    one[(1, 1)] = C64::from(1.0);
    kron(&rho.matrix(), &one)
}

/// The rank-preserving global unitary
/// `|Φ+⟩⟨φ₀1| + |Φ−⟩⟨φ₁0| + |01⟩⟨φ₀0| + |10⟩⟨φ₁1|`,
/// where `φ₀` (`φ₁`) is the eigenvector of `ρ` for the larger (smaller)
/// eigenvalue.
pub fn entangling_unitary(rho: &QubitState) -> Matrix4<C64> {
    let (phi0, phi1) = rho.eigenvectors();
    let zero = Vector2::new(C64::from(1.0), C64::from(0.0));
    let one = Vector2::new(C64::from(0.0), C64::from(1.0));
    bell_phi(1.0) * ket(&phi0, &one).adjoint()
        + bell_phi(-1.0) * ket(&phi1, &zero).adjoint()
        + basis(1) * ket(&phi0, &zero).adjoint()
        + basis(2) * ket(&phi1, &one).adjoint()
}

/// `𝒰 (ρ ⊗ |1⟩⟨1|) 𝒰†`.
pub fn entangled_output(rho: &QubitState) -> Matrix4<C64> {
    let u = entangling_unitary(rho);
    u * with_ancilla(rho) * u.adjoint()
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`.
///
/// The `λ_i` are the square roots of the eigenvalues of `ρ ρ̃`, obtained as
/// the singular values of `τ = Wᵀ (σ_y⊗σ_y) W` for `ρ = W W†`. Working with
/// `τ` avoids taking square roots of near-zero eigenvalues.
pub fn concurrence(rho: &Matrix4<C64>) -> Result<f64> {
    validate_two_qubit(rho)?;
    let eig = SymmetricEigen::new(*rho);
    if eig.eigenvalues.min() < -VALIDITY_TOL {
        return Err(Error::NotPositive {
            min_eigenvalue: eig.eigenvalues.min(),
        });
    }
    let kept: Vec<usize> = (0..4).filter(|&i| eig.eigenvalues[i] > RANK_CUTOFF).collect();
    let w = DMatrix::from_fn(4, kept.len(), |r, c| {
        eig.eigenvectors[(r, kept[c])] * C64::from(eig.eigenvalues[kept[c]].sqrt())
    });
    let yy = kron(&pauli(1), &pauli(1));
    let yy = DMatrix::from_column_slice(4, 4, yy.as_slice());
    let tau = w.transpose() * yy * &w;
    let mut lambdas: Vec<f64> = tau.singular_values().iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas.first().copied().unwrap_or(0.0) - lambdas.iter().skip(1).sum::<f64>();
    Ok(c.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::work::thermal_state;
    use crate::qubit::bloch_to_density;
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector3;

    fn projector(v: &Vector4<C64>) -> Matrix4<C64> {
        v * v.adjoint()
    }

    /// Independent route: `R = sqrt(sqrt(ρ) ρ̃ sqrt(ρ))` through Hermitian
    /// eigen-solves only.
    fn concurrence_via_root(rho: &Matrix4<C64>) -> f64 {
        let eig = SymmetricEigen::new(*rho);
        let sqrt_vals = eig.eigenvalues.map(|v| C64::from(v.max(0.0).sqrt()));
        let sqrt_rho = eig.eigenvectors * Matrix4::from_diagonal(&sqrt_vals) * eig.eigenvectors.adjoint();
        let yy = kron(&pauli(1), &pauli(1));
        let tilde = yy * rho.conjugate() * yy;
        let inner = sqrt_rho * tilde * sqrt_rho;
        let inner = (inner + inner.adjoint()) * C64::from(0.5);
        let mut l: Vec<f64> = SymmetricEigen::new(inner)
            .eigenvalues
            .iter()
            .map(|v| v.max(0.0).sqrt())
            .collect();
        l.sort_by(|a, b| b.total_cmp(a));
        (l[0] - l[1] - l[2] - l[3]).max(0.0)
    }

    #[test]
    fn max_entanglement_examples() {
        assert_abs_diff_eq!(max_entanglement(&bloch_to_density(Vector3::zeros()).unwrap()), 0.5);
        assert_abs_diff_eq!(max_entanglement(&bloch_to_density(Vector3::x()).unwrap()), 1.0);
        assert_abs_diff_eq!(max_entanglement(&thermal_state(-0.5).unwrap()), 0.75);
    }

    #[test]
    fn unitary_is_unitary() {
        for r in [Vector3::zeros(), Vector3::new(0.2, -0.4, 0.1), -Vector3::z()] {
            let u = entangling_unitary(&bloch_to_density(r).unwrap());
            assert_abs_diff_eq!((u * u.adjoint() - Matrix4::identity()).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pure_ground_state_gives_bell_state() {
        let out = entangled_output(&bloch_to_density(Vector3::z()).unwrap());
        assert_abs_diff_eq!((out - projector(&bell_phi(1.0))).norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(concurrence(&out).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn mixed_input_gives_half_bell_half_product() {
        let out = entangled_output(&bloch_to_density(Vector3::zeros()).unwrap());
        let expected = projector(&bell_phi(1.0)) * C64::from(0.5) + projector(&basis(2)) * C64::from(0.5);
        assert_abs_diff_eq!((out - expected).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn output_matches_bell_mixture() {
        let rho = bloch_to_density(Vector3::new(0.3, 0.5, -0.2)).unwrap();
        let f = max_entanglement(&rho);
        let expected = projector(&bell_phi(1.0)) * C64::from(f) + projector(&basis(2)) * C64::from(1.0 - f);
        assert_abs_diff_eq!((entangled_output(&rho) - expected).norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn thermal_output_concurrence() {
        let out = entangled_output(&thermal_state(-0.5).unwrap());
        assert_abs_diff_eq!(concurrence(&out).unwrap(), 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(concurrence_via_root(&out), 0.75, epsilon = 1e-7);
    }

    #[test]
    fn concurrence_examples() {
        assert_abs_diff_eq!(concurrence(&projector(&bell_phi(1.0))).unwrap(), 1.0, epsilon = 1e-12);

        let a = bloch_to_density(Vector3::new(0.1, 0.5, 0.3)).unwrap().matrix();
        let b = bloch_to_density(Vector3::new(-0.7, 0.0, 0.2)).unwrap().matrix();
        let prod = kron(&a, &b);
        assert_abs_diff_eq!(concurrence(&prod).unwrap(), 0.0, epsilon = 1e-12);

        let mix = projector(&bell_phi(1.0)) * C64::from(0.75) + projector(&basis(2)) * C64::from(0.25);
        assert_abs_diff_eq!(concurrence(&mix).unwrap(), 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(concurrence_via_root(&mix), 0.75, epsilon = 1e-7);
    }

    #[test]
    fn concurrence_agrees_with_root_formula_on_full_rank() {
        // Werner state p|Φ+⟩⟨Φ+| + (1−p)1/4: C = max(0, (3p−1)/2).
        for p in [0.2, 0.5, 0.8] {
            let m = projector(&bell_phi(1.0)) * C64::from(p) + Matrix4::identity() * C64::from((1.0 - p) / 4.0);
            let c = concurrence(&m).unwrap();
            assert_abs_diff_eq!(c, ((3.0 * p - 1.0) / 2.0).max(0.0), epsilon = 1e-12);
            assert_abs_diff_eq!(c, concurrence_via_root(&m), epsilon = 1e-10);
        }
    }

    #[test]
    fn concurrence_rejects_non_states() {
        let bad = crate::qubit::reconstruct(&Vector3::zeros(), &Vector3::zeros(), &nalgebra::Matrix3::identity());
        assert!(matches!(concurrence(&bad), Err(Error::NotPositive { .. })));
    }
}
