//! CSV tables and the JSON run manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use airy_evolve::validation::Check;
use airy_evolve::GridFunction;
use serde::Serialize;

use crate::error::Result;

/// Fixed float format: 17 significant digits, so output is byte-stable.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Where a scenario writes its files, and what it has written so far.
pub struct Sink {
    dir: PathBuf,
    prefix: String,
    written: Vec<String>,
}

impl Sink {
    pub fn new(dir: &Path, prefix: &str) -> Self {
        Sink { dir: dir.to_path_buf(), prefix: prefix.to_string(), written: Vec::new() }
    }

    /// Writes `<prefix><suffix>.csv` with a header row and `\n` line endings.
    pub fn csv<I>(&mut self, suffix: &str, header: &[&str], rows: I) -> Result<()>
    where
        I: IntoIterator<Item = Vec<String>>,
    {
        let file = format!("{}{suffix}.csv", self.prefix);
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_path(self.dir.join(&file))?;
        w.write_record(header)?;
        for row in rows {
            w.write_record(&row)?;
        }
        w.flush()?;
        self.written.push(file);
        Ok(())
    }

    /// Field table with columns `x, re, im, abs2`.
    pub fn field(&mut self, suffix: &str, f: &GridFunction) -> Result<()> {
        let rows = f.values().iter().enumerate().map(|(j, v)| {
            vec![fmt(f.x(j)), fmt(v.re), fmt(v.im), fmt(v.norm_sqr())]
        });
        self.csv(suffix, &["x", "re", "im", "abs2"], rows)
    }

    pub fn into_files(self) -> Vec<String> {
        self.written
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl From<Check> for CheckRecord {
    fn from(c: Check) -> Self {
        CheckRecord { name: c.name, value: c.value, tolerance: c.tolerance, passed: c.passed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub kind: String,
    pub parameters: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub command: String,
    pub passed: bool,
    pub scenarios: Vec<ScenarioReport>,
}

impl Manifest {
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join("manifest.json");
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(&path, text)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_fixed_width_scientific() {
        assert_eq!(fmt(1.0), "1.0000000000000000e0");
        assert_eq!(fmt(-0.1), "-1.0000000000000001e-1");
        assert_eq!(fmt(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
