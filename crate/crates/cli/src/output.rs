//! CSV and JSON emission.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// Rounds to 12 significant digits and prints the shortest string that
/// reads back to the rounded value, in scientific notation outside
/// `[1e-4, 1e12)`.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    if (1e-4..1e12).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub struct Csv {
    text: String,
}

impl Csv {
    /// Starts a document with the `#` metadata block and the header row.
    pub fn new(command: &str, cfg: &RunConfig, extra: &[(&str, String)], header: &[&str]) -> Self {
        let mut text = String::new();
        let _ = writeln!(text, "# steermach {command}");
        let _ = writeln!(text, "# version: {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(text, "# seed: {}", cfg.seed);
        let _ = writeln!(text, "# config: {}", serde_json::to_string(cfg).expect("config serializes"));
        for (k, v) in extra {
            let _ = writeln!(text, "# {k}: {v}");
        }
        text.push_str(&header.join(","));
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    pub fn write(&self, dir: &Path, name: &str) -> CliResult<PathBuf> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join(name);
        std::fs::write(&path, &self.text).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}

pub fn json_num(x: f64) -> serde_json::Value {
    let rounded: f64 = num(x).parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded).map_or(serde_json::Value::Null, serde_json::Value::Number)
}
