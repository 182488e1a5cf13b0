use nalgebra::Vector3;

/// Average post-measurement Bloch length for two measurements with
/// marginal `−η k` and correlation images `Tn₁`, `Tn₂`:
/// `¼(|−ηk + Tn₁| + |−ηk − Tn₁| + |−ηk + Tn₂| + |−ηk − Tn₂|)`.
pub fn rbar(eta: f64, k: &Vector3<f64>, tn1: &Vector3<f64>, tn2: &Vector3<f64>) -> f64 {
    let a = -k * eta;
    ((a + tn1).norm() + (a - tn1).norm() + (a + tn2).norm() + (a - tn2).norm()) / 4.0
}

/// `(√(η²+α²) + √(η²+β²))/2`, the value of [`rbar`] when `k ⊥ e₁, e₂`.
pub fn rbar_envelope(eta: f64, alpha: f64, beta: f64) -> f64 {
    ((eta * eta + alpha * alpha).sqrt() + (eta * eta + beta * beta).sqrt()) / 2.0
}

/// Largest average Bloch length an unsteerable demon can induce with two
/// orthogonal correlation changes: `min{√(η² + 1/2), 1}`.
pub fn clamped_rbar(eta: f64) -> f64 {
    (eta * eta + 0.5).sqrt().min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticBound {
    /// `(ω₀/2)(η + min{√(η² + 1/2), 1})`.
    pub work: f64,
    /// Same quantity without the `ω₀` factor.
    pub concurrence: f64,
    /// Whether the `min{·, 1}` clamp is active.
    pub clamped: bool,
}

pub fn analytic_bound(eta: f64, omega0: f64) -> AnalyticBound {
    let concurrence = (eta + clamped_rbar(eta)) / 2.0;
    AnalyticBound {
        work: omega0 * concurrence,
        concurrence,
        clamped: eta * eta + 0.5 >= 1.0,
    }
}
