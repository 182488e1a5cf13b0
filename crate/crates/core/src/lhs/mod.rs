//! Discretized local-hidden-state models as linear programs.

mod bound;
mod frontier;
mod grid;
mod model;
pub mod simplex;
mod steering;

pub use bound::{analytic_bound, clamped_rbar, rbar, rbar_envelope, AnalyticBound};
pub use frontier::{lhs_frontier, quarter_sweep, FrontierCertificate, FrontierPoint};
pub use grid::{nested_sphere_grid, sphere_grid, GridScheme, SphereGrid, MIN_GRID_POINTS};
pub use model::{assemblage_moments, moment_column, LhsAtom, LhsModel, ResponseClass, MOMENT_COUNT};
pub use simplex::{LpProblem, LpSolution, LpStatus, Sense};
pub use steering::{
    lhs_feasible, FeasibilityReport, SteeringWitness, Verdict, CONFIRM_REFINEMENT, CONFIRM_RELATIVE_TOL,
};
