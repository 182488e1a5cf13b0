//! Closed-form work and entanglement gain for states whose system marginal
//! lies on the z axis, `a = −η ẑ`.
//!
//! These are a cross-check on the branch-wise computation in
//! [`demon_work`](super::demon_work), which does not need the marginal to be
//! aligned.

use crate::error::VALIDITY_TOL;
use crate::qubit::{Hamiltonian, MeasurementDirection, TwoQubitState};

/// `η = −a_z` when `a ∥ ẑ`.
pub fn aligned_eta(rho: &TwoQubitState) -> Option<f64> {
    let a = rho.a();
    (a.x.abs() <= VALIDITY_TOL && a.y.abs() <= VALIDITY_TOL).then_some(-a.z)
}

/// Mean over measurements of `¼(|−ηk + Tn| + |−ηk − Tn|)`.
fn mean_split_length(rho: &TwoQubitState, measurements: &[MeasurementDirection]) -> f64 {
    let a = rho.a();
    measurements
        .iter()
        .map(|n| {
            let tn = rho.t() * n.vector();
            ((a + tn).norm() + (a - tn).norm()) / 4.0
        })
        .sum::<f64>()
        / measurements.len() as f64
}

/// `ω₀ (η/2 + ¼(|−ηk + Tn| + |−ηk − Tn|))` averaged over the measurements.
/// For two measurements this is
/// `(ω₀/8)(4η + Σ_j |−ηk ± Tn_j|)`.
pub fn closed_form_work(rho: &TwoQubitState, measurements: &[MeasurementDirection], h: &Hamiltonian) -> Option<f64> {
    let eta = aligned_eta(rho)?;
    Some(h.omega0() * (eta / 2.0 + mean_split_length(rho, measurements)))
}

/// `η/2 + ¼(|−ηk + Tn| + |−ηk − Tn|)` averaged over the measurements.
///
/// This equals the concurrence gain over the `(1 − η)/2` baseline, which
/// coincides with `(1 + |a|)/2` only for `η ≤ 0`.
pub fn closed_form_concurrence(rho: &TwoQubitState, measurements: &[MeasurementDirection]) -> Option<f64> {
    let eta = aligned_eta(rho)?;
    Some(eta / 2.0 + mean_split_length(rho, measurements))
}
