//! Deterministic quasi-uniform point sets on the unit sphere.
//!
//! Every grid starts with the six octahedron vertices `±x̂, ±ŷ, ±ẑ`, so
//! hidden states along the coordinate axes are always represented exactly.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};

pub const MIN_GRID_POINTS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridScheme {
    /// Fibonacci (golden-angle) lattice for the non-axis points. Best
    /// uniformity, but grids of different sizes are unrelated.
    Fibonacci,
    /// Prefixes of one low-discrepancy sequence, so `grid(n) ⊂ grid(m)`
    /// whenever `n ≤ m`.
    Nested,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    scheme: GridScheme,
    points: Vec<Vector3<f64>>,
}

fn octahedron() -> [Vector3<f64>; 6] {
    [
        Vector3::x(),
        -Vector3::x(),
        Vector3::y(),
        -Vector3::y(),
        Vector3::z(),
        -Vector3::z(),
    ]
}

fn from_height_angle(z: f64, phi: f64) -> Vector3<f64> {
    let rho = (1.0 - z * z).max(0.0).sqrt();
    Vector3::new(rho * phi.cos(), rho * phi.sin(), z).normalize()
}

impl SphereGrid {
    pub fn new(scheme: GridScheme, n: usize) -> Result<Self> {
        if n < MIN_GRID_POINTS {
            return Err(Error::InvalidParameter {
                name: "grid_n",
                value: n as f64,
                reason: "sphere grids need at least 6 points",
            });
        }
        let mut points = octahedron().to_vec();
        let rest = n - MIN_GRID_POINTS;
        match scheme {
            GridScheme::Fibonacci => {
                let golden_angle = PI * (3.0 - 5.0_f64.sqrt());
                for i in 0..rest {
                    let z = 1.0 - (2.0 * i as f64 + 1.0) / rest as f64;
                    points.push(from_height_angle(z, golden_angle * i as f64));
                }
            }
            GridScheme::Nested => {
                // R2 additive recurrence on the unit square, mapped to the
                // sphere by the area-preserving (z, φ) chart.
                let g = 1.324_717_957_244_746_f64;
                let (s1, s2) = (1.0 / g, 1.0 / (g * g));
                for i in 1..=rest {
                    let u = (0.5 + s1 * i as f64).fract();
                    let v = (0.5 + s2 * i as f64).fract();
                    points.push(from_height_angle(1.0 - 2.0 * u, 2.0 * PI * v));
                }
            }
        }
        Ok(Self { scheme, points })
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    pub fn points(&self) -> &[Vector3<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same scheme with `factor` times as many points.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::new(self.scheme, self.len() * factor)
    }

    /// Largest angle between a grid point and its nearest neighbour.
    pub fn max_nearest_neighbor_angle(&self) -> f64 {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                self.points
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, q)| p.dot(q).clamp(-1.0, 1.0).acos())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
}

/// Fibonacci-lattice grid of `n` points.
pub fn sphere_grid(n: usize) -> Result<SphereGrid> {
    SphereGrid::new(GridScheme::Fibonacci, n)
}

/// Nested grid of `n` points; `nested_sphere_grid(n)` is a prefix of
/// `nested_sphere_grid(m)` for `n ≤ m`.
pub fn nested_sphere_grid(n: usize) -> Result<SphereGrid> {
    SphereGrid::new(GridScheme::Nested, n)
}
