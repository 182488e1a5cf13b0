//! Demon-assisted protocols: the environment is measured along one of a
//! list of directions (chosen uniformly), and the system is processed
//! conditionally on the reported outcome.

use nalgebra::Vector3;

use crate::error::{Error, Result, VALIDITY_TOL};
use crate::machine::assemblage::{assemblage, Assemblage, Outcome};
use crate::machine::entanglement::max_entanglement;
use crate::machine::work::{extractable_work, pauli_restricted_work};
use crate::qubit::{BlochVector, Hamiltonian, MeasurementDirection, QubitState, TwoQubitState};

/// Which unitaries the system holder may apply after learning the outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Any local unitary (optimal ergotropy).
    GeneralUnitary,
    /// Only conjugation by `{1, σ_x, σ_y, σ_z}`.
    PauliRestricted,
}

impl Scheme {
    fn branch_work(self, rho: &QubitState, h: &Hamiltonian) -> f64 {
        match self {
            Scheme::GeneralUnitary => extractable_work(rho, h),
            Scheme::PauliRestricted => pauli_restricted_work(rho, h),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemonProtocol {
    measurements: Vec<MeasurementDirection>,
    scheme: Scheme,
}

impl DemonProtocol {
    pub fn new(measurements: Vec<MeasurementDirection>, scheme: Scheme) -> Result<Self> {
        if measurements.is_empty() {
            return Err(Error::NoMeasurements);
        }
        Ok(Self { measurements, scheme })
    }

    pub fn pair(n1: MeasurementDirection, n2: MeasurementDirection, scheme: Scheme) -> Self {
        Self {
            measurements: vec![n1, n2],
            scheme,
        }
    }

    pub fn measurements(&self) -> &[MeasurementDirection] {
        &self.measurements
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        Self {
            measurements: self.measurements.clone(),
            scheme,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchWork {
    pub outcome: Outcome,
    pub probability: f64,
    pub bloch: BlochVector,
    pub work: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementWork {
    pub direction: MeasurementDirection,
    pub branches: [BranchWork; 2],
    /// `Σ_a p_a W(ρ_a)`.
    pub work: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkReport {
    pub scheme: Scheme,
    /// Mean over measurements of the branch-averaged work, in units of energy.
    pub total_work: f64,
    /// Work available from the unconditioned marginal under the same scheme.
    pub baseline_work: f64,
    pub measurements: Vec<MeasurementWork>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    /// `(1 + |a|)/2` for the marginal.
    pub baseline_concurrence: f64,
    /// Mean over measurements of `Σ_a p_a (1 + |r_a|)/2`.
    pub average_concurrence: f64,
    pub gain: f64,
    /// `(1 − η)/2` with `η = −a_z`, present when `a ∥ ẑ` and it differs from
    /// `baseline_concurrence` (which happens for `η > 0`).
    pub thermal_baseline: Option<f64>,
}

fn check_marginals(assemblages: &[Assemblage]) -> Result<Vector3<f64>> {
    let first = assemblages.first().ok_or(Error::NoMeasurements)?.marginal();
    for asm in &assemblages[1..] {
        let deviation = (asm.marginal() - first).amax();
        if deviation > 1e-10 {
            return Err(Error::InconsistentAssemblage { deviation });
        }
    }
    Ok(first)
}

/// Work extracted from a set of equally likely assemblages. Zero-probability
/// branches carry zero weight.
pub fn assemblage_work(assemblages: &[Assemblage], scheme: Scheme, h: &Hamiltonian) -> Result<WorkReport> {
    let marginal = check_marginals(assemblages)?;
    let measurements: Vec<MeasurementWork> = assemblages
        .iter()
        .map(|asm| {
            let branches = asm.branches().map(|b| BranchWork {
                outcome: b.outcome,
                probability: b.probability,
                bloch: b.bloch,
                work: scheme.branch_work(&b.state(), h),
            });
            let work = branches.iter().map(|b| b.probability * b.work).sum();
            MeasurementWork {
                direction: asm.measurement(),
                branches,
                work,
            }
        })
        .collect();
    let total_work = measurements.iter().map(|m| m.work).sum::<f64>() / measurements.len() as f64;
    let baseline = QubitState::from_bloch(BlochVector::clamped(marginal));
    Ok(WorkReport {
        scheme,
        total_work,
        baseline_work: scheme.branch_work(&baseline, h),
        measurements,
    })
}

/// Branch-wise demon-assisted work for `rho` under `protocol`.
pub fn demon_work(rho: &TwoQubitState, protocol: &DemonProtocol, h: &Hamiltonian) -> WorkReport {
    let assemblages: Vec<Assemblage> = protocol.measurements().iter().map(|n| assemblage(rho, n)).collect();
    assemblage_work(&assemblages, protocol.scheme(), h).expect("assemblages of one state share the marginal")
}

/// Work when each branch may only be conjugated by a Pauli matrix or left
/// alone. Never exceeds [`demon_work`] under [`Scheme::GeneralUnitary`].
pub fn pauli_baseline_work(rho: &TwoQubitState, protocol: &DemonProtocol, h: &Hamiltonian) -> WorkReport {
    demon_work(rho, &protocol.with_scheme(Scheme::PauliRestricted), h)
}

pub fn assemblage_concurrence_gain(assemblages: &[Assemblage]) -> Result<EntanglementReport> {
    let marginal = check_marginals(assemblages)?;
    let average_concurrence = assemblages
        .iter()
        .map(|asm| {
            asm.branches()
                .iter()
                .map(|b| b.probability * max_entanglement(&b.state()))
                .sum::<f64>()
        })
        .sum::<f64>()
        / assemblages.len() as f64;
    let baseline_concurrence = max_entanglement(&QubitState::from_bloch(BlochVector::clamped(marginal)));
    let thermal_baseline = if marginal.x.abs() <= VALIDITY_TOL && marginal.y.abs() <= VALIDITY_TOL {
        let eta = -marginal.z;
        let literal = (1.0 - eta) / 2.0;
        ((literal - baseline_concurrence).abs() > VALIDITY_TOL).then_some(literal)
    } else {
        None
    };
    Ok(EntanglementReport {
        baseline_concurrence,
        average_concurrence,
        gain: average_concurrence - baseline_concurrence,
        thermal_baseline,
    })
}

/// Gain in preparable entanglement from the demon's information.
pub fn demon_concurrence_gain(rho: &TwoQubitState, protocol: &DemonProtocol) -> EntanglementReport {
    let assemblages: Vec<Assemblage> = protocol.measurements().iter().map(|n| assemblage(rho, n)).collect();
    assemblage_concurrence_gain(&assemblages).expect("assemblages of one state share the marginal")
}
