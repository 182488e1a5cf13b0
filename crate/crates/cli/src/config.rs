//! Run configuration: defaults, an optional flat TOML file, then flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use steering_machine::qubit::MeasurementDirection;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub omega0: f64,
    /// Explicit η values; each command has its own default when absent.
    pub eta: Option<Vec<f64>>,
    /// Number of p points spanning `[p_min, p_max]`.
    pub p_steps: usize,
    pub p_min: f64,
    pub p_max: f64,
    /// Number of η points in the default figure4 sweep over `(−1, 1]`.
    pub eta_steps: usize,
    /// Number of weight directions in the frontier sweep.
    pub frontier_steps: usize,
    /// Two comma-separated directions, each an axis (`x`, `-z`) or `a:b:c`.
    pub measurements: String,
    pub grid_n: usize,
    /// Margin above which a ratio counts as a bound violation.
    pub tolerance: f64,
    pub seed: u64,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            omega0: 1.0,
            eta: None,
            p_steps: 101,
            p_min: 0.0,
            p_max: 1.0,
            eta_steps: 200,
            frontier_steps: 91,
            measurements: "x,z".into(),
            grid_n: 1000,
            tolerance: 1e-9,
            seed: 0,
            out: PathBuf::from("out"),
        }
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> CliResult<()> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Validation(msg()))
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> CliResult<()> {
        check(self.omega0.is_finite() && self.omega0 > 0.0, || {
            format!("omega0 must be positive, got {}", self.omega0)
        })?;
        if let Some(etas) = &self.eta {
            check(!etas.is_empty(), || "eta list is empty".into())?;
            for &eta in etas {
                check(eta.is_finite() && (-1.0..=1.0).contains(&eta), || {
                    format!("eta must lie in [-1, 1], got {eta}")
                })?;
            }
        }
        check(self.p_steps >= 2, || format!("p_steps must be at least 2, got {}", self.p_steps))?;
        check(
            (0.0..=1.0).contains(&self.p_min) && (0.0..=1.0).contains(&self.p_max) && self.p_min < self.p_max,
            || format!("p range [{}, {}] must be increasing within [0, 1]", self.p_min, self.p_max),
        )?;
        check(self.eta_steps >= 1, || "eta_steps must be at least 1".into())?;
        check(self.frontier_steps >= 2, || "frontier_steps must be at least 2".into())?;
        check(self.grid_n >= 6, || format!("grid_n must be at least 6, got {}", self.grid_n))?;
        check(self.tolerance.is_finite() && self.tolerance >= 0.0, || {
            format!("tolerance must be nonnegative, got {}", self.tolerance)
        })?;
        self.measurement_pair()?;
        Ok(())
    }

    pub fn p_grid(&self) -> Vec<f64> {
        let n = self.p_steps - 1;
        (0..=n)
            .map(|i| self.p_min + (self.p_max - self.p_min) * i as f64 / n as f64)
            .collect()
    }

    pub fn measurement_pair(&self) -> CliResult<[MeasurementDirection; 2]> {
        let parts: Vec<&str> = self.measurements.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [a, b] => Ok([parse_direction(a)?, parse_direction(b)?]),
            _ => Err(CliError::invalid(format!(
                "measurements must name two directions, got {:?}",
                self.measurements
            ))),
        }
    }

    /// `x,z` becomes `x/z`, safe inside a CSV field.
    pub fn pair_label(&self) -> String {
        self.measurements.split(',').map(str::trim).collect::<Vec<_>>().join("/")
    }
}

pub fn parse_direction(s: &str) -> CliResult<MeasurementDirection> {
    let (sign, axis) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(s)),
    };
    let v = match axis {
        "x" => nalgebra::Vector3::x(),
        "y" => nalgebra::Vector3::y(),
        "z" => nalgebra::Vector3::z(),
        _ => {
            let comps: Vec<f64> = s
                .split(':')
                .map(|c| c.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::invalid(format!("cannot parse direction {s:?}")))?;
            if comps.len() != 3 {
                return Err(CliError::invalid(format!("direction {s:?} needs three components")));
            }
            return Ok(MeasurementDirection::normalized(nalgebra::Vector3::new(comps[0], comps[1], comps[2]))?);
        }
    };
    Ok(MeasurementDirection::new(v * sign)?)
}
