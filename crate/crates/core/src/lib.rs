//! Steering-assisted thermal machines on two qubits.
//!
//! A system qubit shares a state with an environment qubit. A demon measures
//! the environment along a direction the system holder names and reports the
//! outcome; the holder then either extracts work from the system with a
//! local unitary or uses it to prepare entanglement with a pure ancilla.
//!
//! * [`qubit`]: Bloch and Pauli representations of one- and two-qubit states.
//! * [`machine`]: extractable work, preparable entanglement, assemblages and
//!   demon-assisted protocols.
//! * [`lhs`]: local-hidden-state models as linear programs, steering
//!   witnesses, the achievable correlation frontier, and the closed-form
//!   bound for unsteerable demons.
//!
//! ```
//! use steering_machine::machine::{demon_work, state_family, DemonProtocol, Scheme, StateFamilyParams};
//! use steering_machine::qubit::{Hamiltonian, MeasurementDirection};
//!
//! let rho = state_family(StateFamilyParams::new(1.0, 0.0)?);
//! let protocol = DemonProtocol::pair(MeasurementDirection::x(), MeasurementDirection::z(), Scheme::GeneralUnitary);
//! let report = demon_work(&rho, &protocol, &Hamiltonian::default());
//! assert!((report.total_work - 0.5).abs() < 1e-12);
//! # Ok::<(), steering_machine::Error>(())
//! ```
//!
//! The guide under `book/` walks through each part; its code listings are
//! compiled and run as doctests of this crate.

pub mod error;
pub mod lhs;
pub mod machine;
pub mod qubit;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/work-and-entanglement.md")]
    mod work_and_entanglement {}
    #[doc = include_str!("../../../book/src/demon.md")]
    mod demon {}
    #[doc = include_str!("../../../book/src/hidden-states.md")]
    mod hidden_states {}
    #[doc = include_str!("../../../book/src/bound.md")]
    mod bound {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
