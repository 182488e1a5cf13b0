use thiserror::Error;

/// Absolute tolerance used by every validity check in the crate.
pub const VALIDITY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unphysical Bloch vector: |r| = {norm} exceeds 1")]
    UnphysicalBloch { norm: f64 },

    #[error("measurement direction is not unit norm: |n| = {norm}")]
    NotUnitDirection { norm: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("inconsistent assemblages: marginals differ by {deviation:e}")]
    InconsistentAssemblage { deviation: f64 },

    #[error("empty measurement list")]
    NoMeasurements,

    #[error("linear program failed: {message}\n{dump}")]
    LpFailure { message: String, dump: String },
}

pub type Result<T> = std::result::Result<T, Error>;
