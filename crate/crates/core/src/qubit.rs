//! One- and two-qubit states in Bloch/Pauli form.
//!
//! The Pauli coordinates are the source of truth. Dense matrices are built
//! once at construction and kept alongside them, so every value here is an
//! immutable `Copy`-able snapshot that can be shared across threads.
//!
//! Basis convention: `|0⟩` is the `σ_z = +1` eigenstate and `|1⟩` the
//! `σ_z = −1` eigenstate. Two-qubit matrices are ordered system ⊗ environment,
//! so basis index `2s + e` labels `|s e⟩`.

use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix4, SymmetricEigen, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result, VALIDITY_TOL};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Pauli matrix `σ_x`, `σ_y` or `σ_z` for `axis` 0, 1 or 2.
pub fn pauli(axis: usize) -> Matrix2<C64> {
    match axis {
        0 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        1 => Matrix2::new(ZERO, -I, I, ZERO),
        2 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli axis {axis} out of range"),
    }
}

/// Kronecker product of two 2×2 matrices, first factor on the high bit.
pub fn kron(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0_f64;
    for r in 0..n {
        for c in 0..n {
            dev = dev.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    dev
}

/// Qubit state Bloch vector; `|r| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(Vector3<f64>);

impl BlochVector {
    pub fn new(r: Vector3<f64>) -> Result<Self> {
        let norm = r.norm();
        if !norm.is_finite() || norm > 1.0 + VALIDITY_TOL {
            return Err(Error::UnphysicalBloch { norm });
        }
        Ok(Self(r))
    }

    pub fn from_xyz(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(Vector3::new(x, y, z))
    }

    /// Builds a Bloch vector, pulling norms that overshoot 1 through rounding
    /// back onto the sphere.
    pub(crate) fn clamped(r: Vector3<f64>) -> Self {
        let norm = r.norm();
        if norm > 1.0 {
            Self(r / norm)
        } else {
            Self(r)
        }
    }

    pub fn zero() -> Self {
        Self(Vector3::zeros())
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }
}

/// Unit direction `n` of a spin measurement `n·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDirection(Vector3<f64>);

impl MeasurementDirection {
    pub fn new(n: Vector3<f64>) -> Result<Self> {
        let norm = n.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > VALIDITY_TOL {
            return Err(Error::NotUnitDirection { norm });
        }
        Ok(Self(n))
    }

    /// Normalizes `n` first; fails only for the zero vector.
    pub fn normalized(n: Vector3<f64>) -> Result<Self> {
        let norm = n.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotUnitDirection { norm });
        }
        Ok(Self(n / norm))
    }

    pub fn x() -> Self {
        Self(Vector3::x())
    }

    pub fn y() -> Self {
        Self(Vector3::y())
    }

    pub fn z() -> Self {
        Self(Vector3::z())
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.0
    }
}

/// `H = −ω₀ σ_z / 2`, with ħ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian {
    omega0: f64,
}

impl Hamiltonian {
    pub fn new(omega0: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega0",
                value: omega0,
                reason: "must be positive",
            });
        }
        Ok(Self { omega0 })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn matrix(&self) -> Matrix2<C64> {
        pauli(2) * C64::from(-self.omega0 / 2.0)
    }

    /// `tr[H ρ] = −ω₀ r_z / 2`.
    pub fn energy(&self, rho: &QubitState) -> f64 {
        -self.omega0 * rho.bloch().z() / 2.0
    }
}

impl Default for Hamiltonian {
    fn default() -> Self {
        Self { omega0: 1.0 }
    }
}

/// Single-qubit density matrix `(1 + r·σ)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    bloch: BlochVector,
    matrix: Matrix2<C64>,
}

impl QubitState {
    pub fn from_bloch(bloch: BlochVector) -> Self {
        let r = bloch.vector();
        let mut m = Matrix2::identity();
        for k in 0..3 {
            m += pauli(k) * C64::from(r[k]);
        }
        Self {
            bloch,
            matrix: m * C64::from(0.5),
        }
    }

    /// Reads the Bloch vector off a dense 2×2 density matrix.
    pub fn from_matrix(m: &Matrix2<C64>) -> Result<Self> {
        let dm = DMatrix::from_column_slice(2, 2, m.as_slice());
        validate_density(&dm)?;
        let r = Vector3::from_fn(|k, _| (m * pauli(k)).trace().re);
        Ok(Self::from_bloch(BlochVector::clamped(r)))
    }

    pub fn bloch(&self) -> BlochVector {
        self.bloch
    }

    pub fn matrix(&self) -> Matrix2<C64> {
        self.matrix
    }

    /// Eigenvalues `((1 − |r|)/2, (1 + |r|)/2)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let r = self.bloch.norm();
        ((1.0 - r) / 2.0, (1.0 + r) / 2.0)
    }

    /// Orthonormal eigenvectors `(φ₀, φ₁)` for eigenvalues `(1+|r|)/2` and
    /// `(1−|r|)/2`. For `r = 0` this is the computational basis.
    pub fn eigenvectors(&self) -> (nalgebra::Vector2<C64>, nalgebra::Vector2<C64>) {
        let r = self.bloch.vector();
        let norm = r.norm();
        if norm == 0.0 {
            return (
                nalgebra::Vector2::new(ONE, ZERO),
                nalgebra::Vector2::new(ZERO, ONE),
            );
        }
        let theta = (r.z / norm).clamp(-1.0, 1.0).acos();
        let phi = r.y.atan2(r.x);
        let (s, c) = (theta / 2.0).sin_cos();
        let phase = C64::from_polar(1.0, phi);
        (
            nalgebra::Vector2::new(C64::from(c), phase * s),
            nalgebra::Vector2::new(-phase.conj() * s, C64::from(c)),
        )
    }
}

/// `ρ = (1 + r·σ)/2`.
pub fn bloch_to_density(r: Vector3<f64>) -> Result<QubitState> {
    Ok(QubitState::from_bloch(BlochVector::new(r)?))
}

/// Two-qubit state in Pauli form
/// `ρ = ¼(1⊗1 + a·σ⊗1 + 1⊗b·σ + Σ T_ij σ_i⊗σ_j)`,
/// system first, environment second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    a: Vector3<f64>,
    b: Vector3<f64>,
    t: Matrix3<f64>,
    matrix: Matrix4<C64>,
}

impl TwoQubitState {
    /// Validates positivity of the reconstructed density matrix.
    pub fn new(a: Vector3<f64>, b: Vector3<f64>, t: Matrix3<f64>) -> Result<Self> {
        for v in [a, b] {
            let norm = v.norm();
            if !norm.is_finite() || norm > 1.0 + VALIDITY_TOL {
                return Err(Error::UnphysicalBloch { norm });
            }
        }
        let matrix = reconstruct(&a, &b, &t);
        let report = positivity_check(&DMatrix::from_column_slice(4, 4, matrix.as_slice()))?;
        if !report.is_positive(VALIDITY_TOL) {
            return Err(Error::NotPositive {
                min_eigenvalue: report.min_eigenvalue,
            });
        }
        Ok(Self { a, b, t, matrix })
    }

    /// `ρ_S ⊗ ρ_E`.
    pub fn product(system: &QubitState, env: &QubitState) -> Self {
        let a = system.bloch().vector();
        let b = env.bloch().vector();
        let t = a * b.transpose();
        Self {
            a,
            b,
            t,
            matrix: reconstruct(&a, &b, &t),
        }
    }

    /// Local Bloch vector of the system.
    pub fn a(&self) -> Vector3<f64> {
        self.a
    }

    /// Local Bloch vector of the environment.
    pub fn b(&self) -> Vector3<f64> {
        self.b
    }

    /// Correlation matrix `T_ij = ⟨σ_i ⊗ σ_j⟩`.
    pub fn t(&self) -> Matrix3<f64> {
        self.t
    }

    pub fn matrix(&self) -> Matrix4<C64> {
        self.matrix
    }
}

/// Dense 4×4 matrix from Pauli coordinates.
pub fn reconstruct(a: &Vector3<f64>, b: &Vector3<f64>, t: &Matrix3<f64>) -> Matrix4<C64> {
    let id = Matrix2::<C64>::identity();
    let mut m = Matrix4::<C64>::identity();
    for i in 0..3 {
        m += kron(&pauli(i), &id) * C64::from(a[i]);
        m += kron(&id, &pauli(i)) * C64::from(b[i]);
        for j in 0..3 {
            m += kron(&pauli(i), &pauli(j)) * C64::from(t[(i, j)]);
        }
    }
    m * C64::from(0.25)
}

/// Pauli coordinates of a dense two-qubit density matrix.
pub fn pauli_decompose(rho: &Matrix4<C64>) -> Result<TwoQubitState> {
    validate_density(&DMatrix::from_column_slice(4, 4, rho.as_slice()))?;
    let id = Matrix2::<C64>::identity();
    let expect = |op: Matrix4<C64>| (rho * op).trace().re;
    let a = Vector3::from_fn(|i, _| expect(kron(&pauli(i), &id)));
    let b = Vector3::from_fn(|j, _| expect(kron(&id, &pauli(j))));
    let t = Matrix3::from_fn(|i, j| expect(kron(&pauli(i), &pauli(j))));
    Ok(TwoQubitState {
        a,
        b,
        t,
        matrix: *rho,
    })
}

/// System marginal `tr_E ρ`, Bloch vector `a`.
pub fn partial_trace_env(rho: &TwoQubitState) -> QubitState {
    QubitState::from_bloch(BlochVector::clamped(rho.a()))
}

/// Smallest eigenvalue of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityReport {
    pub min_eigenvalue: f64,
}

impl PositivityReport {
    pub fn is_positive(&self, tol: f64) -> bool {
        self.min_eigenvalue >= -tol
    }
}

/// Eigenvalues of a Hermitian matrix in ascending order. 2×2 inputs use the
/// closed form; larger ones a Hermitian eigensolver.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Result<Vec<f64>> {
    let deviation = hermitian_deviation(m);
    if deviation > VALIDITY_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let mut values = if m.nrows() == 2 {
        let (p, q) = (m[(0, 0)].re, m[(1, 1)].re);
        let off = m[(0, 1)].norm();
        let mean = (p + q) / 2.0;
        let radius = ((p - q) * (p - q) / 4.0 + off * off).sqrt();
        vec![mean - radius, mean + radius]
    } else {
        SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect()
    };
    values.sort_by(f64::total_cmp);
    Ok(values)
}

pub fn positivity_check(m: &DMatrix<C64>) -> Result<PositivityReport> {
    let values = hermitian_eigenvalues(m)?;
    Ok(PositivityReport {
        min_eigenvalue: values[0],
    })
}

fn validate_density(m: &DMatrix<C64>) -> Result<()> {
    let deviation = hermitian_deviation(m);
    if deviation > VALIDITY_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > VALIDITY_TOL {
        return Err(Error::TraceNotOne { trace });
    }
    let report = positivity_check(m)?;
    if !report.is_positive(VALIDITY_TOL) {
        return Err(Error::NotPositive {
            min_eigenvalue: report.min_eigenvalue,
        });
    }
    Ok(())
}

/// Checks a dense 4×4 matrix is a density matrix.
pub fn validate_two_qubit(m: &Matrix4<C64>) -> Result<()> {
    validate_density(&DMatrix::from_column_slice(4, 4, m.as_slice()))
}
