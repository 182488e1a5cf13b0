//! Thermal-machine functionals: extractable work, preparable entanglement,
//! steering assemblages and demon-assisted protocols.

mod assemblage;
pub mod closed_form;
mod demon;
mod entanglement;
mod family;
mod work;

pub use assemblage::{assemblage, Assemblage, Branch, Outcome};
pub use demon::{
    assemblage_concurrence_gain, assemblage_work, demon_concurrence_gain, demon_work, pauli_baseline_work,
    BranchWork, DemonProtocol, EntanglementReport, MeasurementWork, Scheme, WorkReport,
};
pub use entanglement::{bell_phi, concurrence, entangled_output, entangling_unitary, max_entanglement, with_ancilla};
pub use family::{state_family, StateFamilyParams};
pub use work::{extractable_work, extraction_unitary, pauli_restricted_work, thermal_state};
