//! Deciding whether two assemblages admit a local-hidden-state model.
//!
//! The grid linear program is an inner approximation: a feasible grid
//! model is a genuine LHS model, but an infeasible one could be an artefact
//! of the discretization. Infeasibility verdicts are therefore re-checked by
//! evaluating the dual witness on a grid four times finer.

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::lhs::grid::SphereGrid;
use crate::lhs::model::{assemblage_moments, moment_column, LhsAtom, LhsModel, ResponseClass, MOMENT_COUNT};
use crate::lhs::simplex::{LpProblem, LpStatus, Sense};
use crate::machine::Assemblage;

/// Refinement factor for confirming a witness.
pub const CONFIRM_REFINEMENT: usize = 4;
/// Allowed relative change of the witness margin under refinement.
pub const CONFIRM_RELATIVE_TOL: f64 = 0.1;

/// Atoms with weight below this are dropped when reading a model off an LP.
const ATOM_CUTOFF: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Steerable,
    LhsFeasible,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Steerable => "steerable",
            Verdict::LhsFeasible => "lhs-feasible",
        }
    }
}

/// Linear functional on the moment vector (normalization entry excluded)
/// that separates the assemblages from every grid LHS model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringWitness {
    /// Coefficients on `[Σμλ (3), Σc₁μ, Σc₁μλ (3), Σc₂μ, Σc₂μλ (3)]`.
    pub coefficients: [f64; MOMENT_COUNT - 1],
}

impl SteeringWitness {
    fn from_farkas(y: &[f64]) -> Self {
        let mut coefficients = [0.0; MOMENT_COUNT - 1];
        coefficients.copy_from_slice(&y[1..MOMENT_COUNT]);
        Self { coefficients }
    }

    fn apply(&self, moments: &[f64; MOMENT_COUNT]) -> f64 {
        self.coefficients.iter().zip(&moments[1..]).map(|(c, m)| c * m).sum()
    }

    /// Witness value on the assemblages.
    pub fn quantum_value(&self, assemblages: &[Assemblage; 2]) -> f64 {
        self.apply(&assemblage_moments(assemblages))
    }

    /// Largest value any unit-weight hidden state on `grid` attains, with
    /// the best response class chosen per point.
    pub fn lhs_maximum(&self, grid: &SphereGrid) -> f64 {
        let c = &self.coefficients;
        grid.points()
            .iter()
            .map(|l| {
                let bloch = Vector3::new(c[0], c[1], c[2]).dot(l);
                let first = (c[3] + Vector3::new(c[4], c[5], c[6]).dot(l)).abs();
                let second = (c[7] + Vector3::new(c[8], c[9], c[10]).dot(l)).abs();
                bloch + first + second
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn margin(&self, assemblages: &[Assemblage; 2], grid: &SphereGrid) -> f64 {
        self.quantum_value(assemblages) - self.lhs_maximum(grid)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub verdict: Verdict,
    /// Size of the grid the verdict was reached on.
    pub grid_size: usize,
    /// An explicit model when feasible.
    pub model: Option<LhsModel>,
    pub witness: Option<SteeringWitness>,
    /// Witness margin on the solving grid.
    pub margin: Option<f64>,
    /// Witness margin on the refined grid.
    pub refined_margin: Option<f64>,
    /// The refined margin is positive and within 10% of `margin`.
    pub refinement_confirmed: bool,
}

fn moment_program(grid: &SphereGrid, target: &[f64; MOMENT_COUNT]) -> LpProblem {
    let mut lp = LpProblem::new(Sense::Minimize, target.to_vec());
    for lambda in grid.points() {
        for class in ResponseClass::ALL {
            lp.add_column(0.0, &moment_column(lambda, class));
        }
    }
    lp
}

fn model_from_primal(grid: &SphereGrid, primal: &[f64]) -> Result<LhsModel> {
    let atoms = primal
        .iter()
        .enumerate()
        .filter(|&(_, &w)| w > ATOM_CUTOFF)
        .map(|(j, &w)| LhsAtom {
            lambda: grid.points()[j / 4],
            class: ResponseClass::ALL[j % 4],
            weight: w,
        })
        .collect();
    LhsModel::new(atoms)
}

enum GridOutcome {
    Feasible(LhsModel),
    Infeasible(SteeringWitness),
}

fn solve_on(grid: &SphereGrid, target: &[f64; MOMENT_COUNT]) -> Result<GridOutcome> {
    let lp = moment_program(grid, target);
    let sol = lp.solve()?;
    match sol.status {
        LpStatus::Optimal => Ok(GridOutcome::Feasible(model_from_primal(grid, &sol.primal)?)),
        LpStatus::Infeasible => Ok(GridOutcome::Infeasible(SteeringWitness::from_farkas(&sol.dual))),
        LpStatus::Unbounded => Err(Error::LpFailure {
            message: "feasibility program reported unbounded".into(),
            dump: lp.dump(),
        }),
    }
}

/// Searches for a grid LHS model reproducing both assemblages exactly:
/// normalization, `Σμλ = a`, and for each measurement `Σc_jμ = n_j·b` and
/// `Σc_jμλ = T n_j`.
pub fn lhs_feasible(assemblages: &[Assemblage; 2], grid: &SphereGrid) -> Result<FeasibilityReport> {
    let deviation = (assemblages[0].marginal() - assemblages[1].marginal()).amax();
    if deviation > 1e-10 {
        return Err(Error::InconsistentAssemblage { deviation });
    }
    let target = assemblage_moments(assemblages);
    let witness = match solve_on(grid, &target)? {
        GridOutcome::Feasible(model) => {
            return Ok(FeasibilityReport {
                verdict: Verdict::LhsFeasible,
                grid_size: grid.len(),
                model: Some(model),
                witness: None,
                margin: None,
                refined_margin: None,
                refinement_confirmed: false,
            })
        }
        GridOutcome::Infeasible(w) => w,
    };

    let margin = witness.margin(assemblages, grid);
    let fine = grid.refined(CONFIRM_REFINEMENT)?;
    let refined_margin = witness.margin(assemblages, &fine);
    if refined_margin > 0.0 {
        return Ok(FeasibilityReport {
            verdict: Verdict::Steerable,
            grid_size: grid.len(),
            model: None,
            witness: Some(witness),
            margin: Some(margin),
            refined_margin: Some(refined_margin),
            refinement_confirmed: (refined_margin - margin).abs() <= CONFIRM_RELATIVE_TOL * margin,
        });
    }

    // The coarse witness does not survive refinement; decide on the fine grid.
    match solve_on(&fine, &target)? {
        GridOutcome::Feasible(model) => Ok(FeasibilityReport {
            verdict: Verdict::LhsFeasible,
            grid_size: fine.len(),
            model: Some(model),
            witness: None,
            margin: None,
            refined_margin: None,
            refinement_confirmed: false,
        }),
        GridOutcome::Infeasible(w) => Ok(FeasibilityReport {
            verdict: Verdict::Steerable,
            grid_size: fine.len(),
            model: None,
            witness: Some(w),
            margin: Some(w.margin(assemblages, &fine)),
            refined_margin: None,
            refinement_confirmed: false,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lhs::grid::sphere_grid;
    use crate::machine::{assemblage, state_family, StateFamilyParams};
    use crate::qubit::{bloch_to_density, MeasurementDirection, TwoQubitState};
    use approx::assert_abs_diff_eq;

    fn pair(rho: &TwoQubitState) -> [Assemblage; 2] {
        [
            assemblage(rho, &MeasurementDirection::x()),
            assemblage(rho, &MeasurementDirection::z()),
        ]
    }

    #[test]
    fn product_state_is_feasible() {
        let s = bloch_to_density(Vector3::new(0.2, -0.3, 0.4)).unwrap();
        let e = bloch_to_density(Vector3::new(0.1, 0.5, -0.2)).unwrap();
        let asm = pair(&TwoQubitState::product(&s, &e));
        let report = lhs_feasible(&asm, &sphere_grid(200).unwrap()).unwrap();
        assert_eq!(report.verdict, Verdict::LhsFeasible);
        let model = report.model.unwrap();
        for (a, b) in model.moments().iter().zip(&assemblage_moments(&asm)) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn separable_member_is_feasible() {
        let rho = state_family(StateFamilyParams::new(0.0, -0.5).unwrap());
        let report = lhs_feasible(&pair(&rho), &sphere_grid(100).unwrap()).unwrap();
        assert_eq!(report.verdict, Verdict::LhsFeasible);
    }

    #[test]
    fn bell_member_is_steerable() {
        let rho = state_family(StateFamilyParams::new(1.0, 0.0).unwrap());
        let asm = pair(&rho);
        let grid = sphere_grid(500).unwrap();
        let report = lhs_feasible(&asm, &grid).unwrap();
        assert_eq!(report.verdict, Verdict::Steerable);
        assert!(report.margin.unwrap() > 0.0);
        assert!(report.refinement_confirmed);
    }

    #[test]
    fn inconsistent_marginals_rejected() {
        let a = assemblage(&state_family(StateFamilyParams::new(0.5, 0.3).unwrap()), &MeasurementDirection::x());
        let b = assemblage(&state_family(StateFamilyParams::new(0.5, -0.3).unwrap()), &MeasurementDirection::z());
        assert!(matches!(
            lhs_feasible(&[a, b], &sphere_grid(50).unwrap()),
            Err(Error::InconsistentAssemblage { .. })
        ));
    }
}
