use std::path::PathBuf;

use nalgebra::Vector3;
use rayon::prelude::*;
use serde_json::{json, Value};
use steering_machine::lhs::{analytic_bound, lhs_feasible, lhs_frontier, quarter_sweep, sphere_grid};
use steering_machine::machine::closed_form::{aligned_eta, closed_form_concurrence, closed_form_work};
use steering_machine::machine::{
    assemblage, concurrence, demon_concurrence_gain, demon_work, entangled_output, pauli_baseline_work, state_family,
    DemonProtocol, Scheme, StateFamilyParams,
};
use steering_machine::qubit::{Hamiltonian, MeasurementDirection, TwoQubitState};

use crate::config::{parse_direction, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{json_num, num, Csv};

pub const FIGURE2_ETAS: [f64; 3] = [-0.2, -0.5, -0.8];
pub const FIGURE4_PS: [f64; 4] = [0.0, 0.7, 0.8, 0.9];

fn family(p: f64, eta: f64) -> CliResult<TwoQubitState> {
    Ok(state_family(StateFamilyParams::new(p, eta)?))
}

pub fn figure2(cfg: &RunConfig) -> CliResult<PathBuf> {
    let h = Hamiltonian::new(cfg.omega0)?;
    let [n1, n2] = cfg.measurement_pair()?;
    let protocol = DemonProtocol::pair(n1, n2, Scheme::GeneralUnitary);
    let etas = cfg.eta.clone().unwrap_or_else(|| FIGURE2_ETAS.to_vec());
    let cells: Vec<(f64, f64)> = etas.iter().flat_map(|&eta| cfg.p_grid().into_iter().map(move |p| (p, eta))).collect();
    let rows = cells
        .par_iter()
        .map(|&(p, eta)| {
            let rho = family(p, eta)?;
            let general = demon_work(&rho, &protocol, &h).total_work / cfg.omega0;
            let restricted = pauli_baseline_work(&rho, &protocol, &h).total_work / cfg.omega0;
            Ok(vec![num(p), num(eta), num(general), num(restricted)])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut csv = Csv::new(
        "figure2",
        cfg,
        &[("units", "work in units of omega0".into())],
        &["p", "eta", "work_general", "work_restricted"],
    );
    rows.iter().for_each(|r| csv.row(r));
    csv.write(&cfg.out, "figure2.csv")
}

/// `η_i = −1 + 2i/N`, `i = 1..=N`; `η = −1` is left out because the
/// normalizing work vanishes there.
pub fn default_eta_sweep(steps: usize) -> Vec<f64> {
    (1..=steps).map(|i| -1.0 + 2.0 * i as f64 / steps as f64).collect()
}

pub fn figure4(cfg: &RunConfig) -> CliResult<PathBuf> {
    let h = Hamiltonian::new(cfg.omega0)?;
    let primary = cfg.measurement_pair()?;
    let mut pairs = vec![(cfg.pair_label(), primary)];
    for (label, alt) in [("x/z", [MeasurementDirection::x(), MeasurementDirection::z()]), ("x/y", [MeasurementDirection::x(), MeasurementDirection::y()])] {
        if pairs.len() < 2 && label != pairs[0].0 {
            pairs.push((label.to_string(), alt));
        }
    }
    let etas = cfg.eta.clone().unwrap_or_else(|| default_eta_sweep(cfg.eta_steps));
    let cells: Vec<(usize, f64)> = (0..pairs.len()).flat_map(|k| etas.iter().map(move |&eta| (k, eta))).collect();
    let per_eta = cells
        .par_iter()
        .map(|&(k, eta)| {
            let [n1, n2] = pairs[k].1;
            let protocol = DemonProtocol::pair(n1, n2, Scheme::GeneralUnitary);
            let max_work = demon_work(&family(1.0, eta)?, &protocol, &h).total_work;
            if max_work <= 1e-12 {
                return Ok(Vec::new());
            }
            let bound = analytic_bound(eta, cfg.omega0).work / max_work;
            FIGURE4_PS
                .iter()
                .map(|&p| {
                    let w = demon_work(&family(p, eta)?, &protocol, &h).total_work / max_work;
                    Ok((k, p, eta, w, bound))
                })
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut rows: Vec<(usize, f64, f64, f64, f64)> = per_eta.into_iter().flatten().collect();
    // Group by pair, then p, then η.
    rows.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let violations: Vec<String> = pairs
        .iter()
        .enumerate()
        .flat_map(|(k, (label, _))| {
            FIGURE4_PS.iter().map(move |&p| (k, label, p))
        })
        .map(|(k, label, p)| {
            let hits: Vec<f64> = rows
                .iter()
                .filter(|r| r.0 == k && r.1 == p && r.3 > r.4 + cfg.tolerance)
                .map(|r| r.2)
                .collect();
            match (hits.first(), hits.last()) {
                (Some(lo), Some(hi)) => format!("{label} p={p}: {} etas in [{}, {}]", hits.len(), num(*lo), num(*hi)),
                _ => format!("{label} p={p}: none"),
            }
        })
        .collect();
    let mut csv = Csv::new(
        "figure4",
        cfg,
        &[
            ("normalization", "ratios divided by the p=1 work at each eta".into()),
            ("violations", violations.join("; ")),
        ],
        &["eta", "p", "ratio_work", "ratio_bound", "measurement_pair"],
    );
    for (k, p, eta, w, b) in rows {
        csv.row(&[num(eta), num(p), num(w), num(b), pairs[k].0.clone()]);
    }
    csv.write(&cfg.out, "figure4.csv")
}

pub fn frontier(cfg: &RunConfig) -> CliResult<PathBuf> {
    let [e1, e2] = cfg.measurement_pair()?;
    let eta = match cfg.eta.as_deref() {
        None => 0.0,
        Some([eta]) => *eta,
        Some(_) => return Err(CliError::invalid("frontier takes a single eta")),
    };
    let grid = sphere_grid(cfg.grid_n)?;
    let cert = lhs_frontier(eta, &e1.vector(), &e2.vector(), &grid, &quarter_sweep(cfg.frontier_steps))?;
    let mut csv = Csv::new(
        "frontier",
        cfg,
        &[
            ("max_envelope", num(cert.max_envelope)),
            ("theta", num(cert.theta)),
            ("analytic_envelope", num(cert.analytic_envelope)),
        ],
        &["weight_angle", "alpha", "beta", "alpha_ref", "beta_ref"],
    );
    for p in &cert.points {
        csv.row(&[num(p.weight_angle), num(p.alpha), num(p.beta), num(p.alpha_ref), num(p.beta_ref)]);
    }
    csv.write(&cfg.out, "frontier.csv")
}

fn vec_json(v: Vector3<f64>) -> Value {
    json!([json_num(v.x), json_num(v.y), json_num(v.z)])
}

fn protocol_for(cfg: &RunConfig, extra: &[String]) -> CliResult<DemonProtocol> {
    if extra.is_empty() {
        let [n1, n2] = cfg.measurement_pair()?;
        return Ok(DemonProtocol::pair(n1, n2, Scheme::GeneralUnitary));
    }
    let ms = extra.iter().map(|s| parse_direction(s)).collect::<CliResult<Vec<_>>>()?;
    Ok(DemonProtocol::new(ms, Scheme::GeneralUnitary)?)
}

pub fn steer_check(cfg: &RunConfig, rho: &TwoQubitState, desc: &str) -> CliResult<Value> {
    let [n1, n2] = cfg.measurement_pair()?;
    let grid = sphere_grid(cfg.grid_n)?;
    let report = lhs_feasible(&[assemblage(rho, &n1), assemblage(rho, &n2)], &grid)?;
    Ok(json!({
        "state": desc,
        "measurements": [vec_json(n1.vector()), vec_json(n2.vector())],
        "verdict": report.verdict.as_str(),
        "witness": report.witness.map(|w| w.coefficients.iter().map(|&c| json_num(c)).collect::<Vec<_>>()),
        "margin": report.margin.map(json_num),
        "refined_margin": report.refined_margin.map(json_num),
        "grid_n": report.grid_size,
        "refinement_confirmed": report.refinement_confirmed,
    }))
}

pub fn work(cfg: &RunConfig, rho: &TwoQubitState, desc: &str, directions: &[String]) -> CliResult<Value> {
    let h = Hamiltonian::new(cfg.omega0)?;
    let protocol = protocol_for(cfg, directions)?;
    let report = demon_work(rho, &protocol, &h);
    let restricted = pauli_baseline_work(rho, &protocol, &h);
    let measurements: Vec<Value> = report
        .measurements
        .iter()
        .map(|m| {
            json!({
                "direction": vec_json(m.direction.vector()),
                "work": json_num(m.work),
                "branches": m.branches.iter().map(|b| json!({
                    "outcome": b.outcome.sign() as i8,
                    "probability": json_num(b.probability),
                    "bloch": vec_json(b.bloch.vector()),
                    "work": json_num(b.work),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let bound = (protocol.measurements().len() == 2)
        .then(|| aligned_eta(rho))
        .flatten()
        .map(|eta| json_num(analytic_bound(eta, cfg.omega0).work));
    Ok(json!({
        "state": desc,
        "omega0": json_num(cfg.omega0),
        "total_work": json_num(report.total_work),
        "baseline_work": json_num(report.baseline_work),
        "gain": json_num(report.total_work - report.baseline_work),
        "restricted_work": json_num(restricted.total_work),
        "closed_form_work": closed_form_work(rho, protocol.measurements(), &h).map(json_num),
        "unsteerable_bound": bound,
        "measurements": measurements,
    }))
}

pub fn concurrence_cmd(cfg: &RunConfig, rho: &TwoQubitState, desc: &str, directions: &[String]) -> CliResult<Value> {
    let protocol = protocol_for(cfg, directions)?;
    let report = demon_concurrence_gain(rho, &protocol);
    let measurements = protocol
        .measurements()
        .iter()
        .map(|n| {
            let asm = assemblage(rho, n);
            let branches = asm
                .branches()
                .iter()
                .map(|b| {
                    let state = b.state();
                    Ok(json!({
                        "outcome": b.outcome.sign() as i8,
                        "probability": json_num(b.probability),
                        "bloch": vec_json(b.bloch.vector()),
                        "concurrence": json_num(concurrence(&entangled_output(&state))?),
                    }))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(json!({ "direction": vec_json(n.vector()), "branches": branches }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({
        "state": desc,
        "baseline_concurrence": json_num(report.baseline_concurrence),
        "average_concurrence": json_num(report.average_concurrence),
        "gain": json_num(report.gain),
        "thermal_baseline": report.thermal_baseline.map(json_num),
        "closed_form_gain": closed_form_concurrence(rho, protocol.measurements()).map(json_num),
        "measurements": measurements,
    }))
}
