//! The set of correlation magnitudes `(α, β)` with `Tn₁ = α e₁` and
//! `Tn₂ = β e₂` that a hidden-state model can produce when only the
//! normalization and the response-weighted Bloch moments are imposed.
//!
//! For each weight `w` the linear program maximizes `w₁α + w₂β`. Every
//! feasible point lies in the unit disk, and the reflection-symmetric
//! four-point models reach `(cos θ, sin θ)`, so the exact frontier is the
//! unit quarter circle; the grid optimum approaches it from inside.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector3;
use rayon::prelude::*;

use crate::error::{Error, Result, VALIDITY_TOL};
use crate::lhs::bound::{clamped_rbar, rbar_envelope};
use crate::lhs::grid::SphereGrid;
use crate::lhs::model::{LhsAtom, LhsModel, ResponseClass};
use crate::lhs::simplex::{LpProblem, LpStatus, Sense};

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierPoint {
    pub weights: (f64, f64),
    /// `atan2(w₂, w₁)`.
    pub weight_angle: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Reference point `(cos θ, sin θ)` at `θ = weight_angle`.
    pub alpha_ref: f64,
    pub beta_ref: f64,
    /// `(√(η²+α²) + √(η²+β²))/2`.
    pub envelope: f64,
    /// Optimal model read off the LP.
    pub model: LhsModel,
}

impl FrontierPoint {
    pub fn radius(&self) -> f64 {
        self.alpha.hypot(self.beta)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierCertificate {
    pub eta: f64,
    pub e1: Vector3<f64>,
    pub e2: Vector3<f64>,
    pub points: Vec<FrontierPoint>,
    /// Angle `atan2(β, α)` of the point with the largest envelope.
    pub theta: f64,
    /// Largest envelope over the sweep.
    pub max_envelope: f64,
    /// `min{√(η² + 1/2), 1}`.
    pub analytic_envelope: f64,
}

/// `count` weights `(cos θ, sin θ)` with `θ` evenly spaced over `[0, π/2]`.
pub fn quarter_sweep(count: usize) -> Vec<(f64, f64)> {
    match count {
        0 => Vec::new(),
        1 => vec![(1.0, 1.0)],
        _ => (0..count)
            .map(|i| {
                let t = FRAC_PI_2 * i as f64 / (count - 1) as f64;
                (t.cos(), t.sin())
            })
            .collect(),
    }
}

fn check_frame(e1: &Vector3<f64>, e2: &Vector3<f64>) -> Result<()> {
    for e in [e1, e2] {
        let norm = e.norm();
        if (norm - 1.0).abs() > VALIDITY_TOL {
            return Err(Error::NotUnitDirection { norm });
        }
    }
    let overlap = e1.dot(e2);
    if overlap.abs() > VALIDITY_TOL {
        return Err(Error::InvalidParameter {
            name: "e1·e2",
            value: overlap,
            reason: "frontier directions must be orthogonal",
        });
    }
    Ok(())
}

fn frontier_point(eta: f64, e1: &Vector3<f64>, e2: &Vector3<f64>, grid: &SphereGrid, w: (f64, f64)) -> Result<FrontierPoint> {
    let k = e1.cross(e2);
    let mut lp = LpProblem::new(Sense::Maximize, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
    for lambda in grid.points() {
        let (x, y, z) = (lambda.dot(e1), lambda.dot(e2), lambda.dot(&k));
        for class in ResponseClass::ALL {
            let [c1, c2] = class.signs();
            lp.add_column(w.0 * c1 * x + w.1 * c2 * y, &[1.0, c1 * y, c1 * z, c2 * x, c2 * z]);
        }
    }
    let sol = lp.solve()?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::LpFailure {
            message: format!("frontier program for weights {w:?} ended {:?}", sol.status),
            dump: lp.dump(),
        });
    }
    let atoms: Vec<LhsAtom> = sol
        .primal
        .iter()
        .enumerate()
        .filter(|&(_, &mu)| mu > 0.0)
        .map(|(j, &mu)| LhsAtom {
            lambda: grid.points()[j / 4],
            class: ResponseClass::ALL[j % 4],
            weight: mu,
        })
        .collect();
    let model = LhsModel::new(atoms)?;
    let alpha = model.response_moment(0).dot(e1);
    let beta = model.response_moment(1).dot(e2);
    let weight_angle = w.1.atan2(w.0);
    Ok(FrontierPoint {
        weights: w,
        weight_angle,
        alpha,
        beta,
        alpha_ref: weight_angle.cos(),
        beta_ref: weight_angle.sin(),
        envelope: rbar_envelope(eta, alpha, beta),
        model,
    })
}

/// Solves one frontier program per weight, in parallel; output order
/// follows `weights`.
pub fn lhs_frontier(
    eta: f64,
    e1: &Vector3<f64>,
    e2: &Vector3<f64>,
    grid: &SphereGrid,
    weights: &[(f64, f64)],
) -> Result<FrontierCertificate> {
    check_frame(e1, e2)?;
    for &(w1, w2) in weights {
        if !(w1 >= 0.0 && w2 >= 0.0 && w1 + w2 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "weight",
                value: if w1 < 0.0 { w1 } else { w2 },
                reason: "frontier weights must be nonnegative and not both zero",
            });
        }
    }
    let points = weights
        .par_iter()
        .map(|&w| frontier_point(eta, e1, e2, grid, w))
        .collect::<Result<Vec<_>>>()?;
    let best = points.iter().max_by(|a, b| a.envelope.total_cmp(&b.envelope));
    Ok(FrontierCertificate {
        eta,
        e1: *e1,
        e2: *e2,
        theta: best.map_or(0.0, |p| p.beta.atan2(p.alpha)),
        max_envelope: best.map_or(f64::NAN, |p| p.envelope),
        analytic_envelope: clamped_rbar(eta),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lhs::grid::sphere_grid;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pole_weight_gives_unit_alpha() {
        let grid = sphere_grid(200).unwrap();
        let cert = lhs_frontier(0.0, &Vector3::x(), &Vector3::y(), &grid, &[(1.0, 0.0)]).unwrap();
        let p = &cert.points[0];
        assert_abs_diff_eq!(p.alpha, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(p.beta, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn octahedron_frontier() {
        // Only axis points: the diagonal weight can reach α + β = 1 at best.
        let grid = sphere_grid(6).unwrap();
        let cert = lhs_frontier(0.0, &Vector3::x(), &Vector3::y(), &grid, &[(1.0, 1.0)]).unwrap();
        let p = &cert.points[0];
        assert_abs_diff_eq!(p.alpha + p.beta, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn rejects_bad_frames_and_weights() {
        let grid = sphere_grid(50).unwrap();
        let tilted = Vector3::new(1.0, 1.0, 0.0).normalize();
        assert!(lhs_frontier(0.0, &Vector3::x(), &tilted, &grid, &[(1.0, 1.0)]).is_err());
        assert!(lhs_frontier(0.0, &Vector3::x(), &Vector3::y(), &grid, &[(0.0, 0.0)]).is_err());
        assert!(lhs_frontier(0.0, &Vector3::x(), &Vector3::y(), &grid, &[(-1.0, 1.0)]).is_err());
    }

    #[test]
    fn sweep_endpoints() {
        let s = quarter_sweep(5);
        assert_eq!(s.len(), 5);
        assert_abs_diff_eq!(s[0].0, 1.0);
        assert_abs_diff_eq!(s[4].1, 1.0);
    }
}
