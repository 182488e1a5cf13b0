#![allow(dead_code)]

use nalgebra::{Matrix4, Rotation3, Vector3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use steering_machine::lhs::{LhsAtom, LhsModel, ResponseClass};
use steering_machine::qubit::{pauli_decompose, MeasurementDirection, TwoQubitState, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_vector(rng: &mut impl Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

pub fn direction(rng: &mut impl Rng) -> MeasurementDirection {
    MeasurementDirection::new(unit_vector(rng)).unwrap()
}

/// Bloch vector uniform in the unit ball.
pub fn ball_vector(rng: &mut impl Rng) -> Vector3<f64> {
    unit_vector(rng) * rng.random_range(0.0_f64..1.0).cbrt()
}

/// `G G† / tr(G G†)` with `G` a 4×4 matrix of uniform complex entries, at
/// random rank.
pub fn density_matrix(rng: &mut impl Rng) -> Matrix4<C64> {
    let rank = rng.random_range(1..=4);
    let mut g = Matrix4::<C64>::zeros();
    for i in 0..4 {
        for j in 0..rank {
            g[(i, j)] = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
    }
    let rho = g * g.adjoint();
    let tr = rho.trace();
    rho / tr
}

pub fn two_qubit_state(rng: &mut impl Rng) -> TwoQubitState {
    pauli_decompose(&density_matrix(rng)).unwrap()
}

/// A random state whose system marginal lies on the z axis: a system-side
/// rotation `R` carries `a` onto `±ẑ`, acting as `a → Ra`, `T → RT`.
pub fn aligned_state(rng: &mut impl Rng) -> TwoQubitState {
    let rho = two_qubit_state(rng);
    let a = rho.a();
    let target = if rng.random_bool(0.5) { Vector3::z() } else { -Vector3::z() };
    let r = if a.norm() < 1e-9 {
        Rotation3::identity()
    } else {
        Rotation3::rotation_between(&a, &target)
            .unwrap_or_else(|| Rotation3::from_axis_angle(&Vector3::x_axis(), std::f64::consts::PI))
    };
    let mut a2 = r * a;
    a2.x = 0.0;
    a2.y = 0.0;
    TwoQubitState::new(a2, rho.b(), r.matrix() * rho.t()).unwrap()
}

/// A few random atoms on the unit sphere, mirrored through the planes
/// orthogonal to `x̂` and `ŷ`. The Bloch mean is then along `ẑ`.
pub fn symmetric_model(rng: &mut impl Rng) -> LhsModel {
    let count = rng.random_range(1..=6);
    let raw: Vec<f64> = (0..count).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let atoms = raw
        .iter()
        .map(|w| LhsAtom {
            lambda: unit_vector(rng),
            class: ResponseClass::ALL[rng.random_range(0..4)],
            weight: w / total,
        })
        .collect();
    LhsModel::new(atoms).unwrap().symmetrized(&Vector3::x(), &Vector3::y())
}
