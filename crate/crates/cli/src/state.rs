//! Two-qubit state specifications accepted on the command line:
//! `family P ETA`, `matrix PATH` (JSON `{"re": 4×4, "im": 4×4}`, `im`
//! optional) or `random` (seeded).

use std::path::Path;

use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use steering_machine::machine::{state_family, StateFamilyParams};
use steering_machine::qubit::{pauli_decompose, TwoQubitState, C64};

use crate::error::{CliError, CliResult};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

fn square4(rows: &[Vec<f64>], what: &str) -> CliResult<[[f64; 4]; 4]> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(CliError::invalid(format!("{what} must be a 4x4 array")));
    }
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j])))
}

pub fn load_matrix(path: &Path) -> CliResult<TwoQubitState> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: MatrixFile =
        serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    let re = square4(&file.re, "re")?;
    let im = match &file.im {
        Some(im) => square4(im, "im")?,
        None => [[0.0; 4]; 4],
    };
    let m = Matrix4::from_fn(|i, j| C64::new(re[i][j], im[i][j]));
    pauli_decompose(&m).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

/// `G G†/tr` with uniform complex entries.
pub fn random_state(seed: u64) -> TwoQubitState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Matrix4::from_fn(|_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let rho = g * g.adjoint();
    let tr = rho.trace();
    pauli_decompose(&(rho / tr)).expect("G G† is a valid density matrix")
}

fn number(s: &str, name: &str) -> CliResult<f64> {
    s.parse().map_err(|_| CliError::invalid(format!("{name}: cannot parse {s:?} as a number")))
}

/// Returns the state and a short description for output metadata.
pub fn parse_state(args: &[String], seed: u64) -> CliResult<(TwoQubitState, String)> {
    let words: Vec<&str> = args.iter().map(String::as_str).collect();
    match words.as_slice() {
        ["family", p, eta] => {
            let (p, eta) = (number(p, "p")?, number(eta, "eta")?);
            Ok((state_family(StateFamilyParams::new(p, eta)?), format!("family p={p} eta={eta}")))
        }
        ["matrix", path] => Ok((load_matrix(Path::new(path))?, format!("matrix {path}"))),
        ["random"] => Ok((random_state(seed), format!("random seed={seed}"))),
        _ => Err(CliError::invalid(
            "state must be `family P ETA`, `matrix PATH` or `random`".to_string(),
        )),
    }
}
