use airy_evolve::validation::{Check, Criterion};

use super::Plan;
use crate::error::{CliError, Result};
use crate::output::{fmt, Sink};
use crate::params::Params;

/// Named check presets; `all` runs every one.
pub struct ValidatePlan {
    presets: Vec<Criterion>,
}

impl ValidatePlan {
    pub fn new(p: &Params) -> Result<Self> {
        let mut presets = Vec::new();
        for name in p.list("preset", "all") {
            if name == "all" {
                presets.extend(Criterion::ALL);
                continue;
            }
            let c = Criterion::from_name(&name).ok_or_else(|| {
                let known: Vec<&str> = Criterion::ALL.iter().map(|c| c.name()).collect();
                CliError::config(format!("unknown preset {name:?}; known: all, {}", known.join(", ")))
            })?;
            presets.push(c);
        }
        presets.dedup();
        Ok(ValidatePlan { presets })
    }
}

impl Plan for ValidatePlan {
    fn run(&self, sink: &mut Sink) -> Result<Vec<Check>> {
        let mut checks = Vec::new();
        for c in &self.presets {
            checks.extend(c.run()?.into_iter().map(|mut check| {
                check.name = format!("{}/{}", c.name(), check.name);
                check
            }));
        }
        let rows = checks
            .iter()
            .map(|c| vec![c.name.clone(), fmt(c.value), fmt(c.tolerance), c.passed.to_string()]);
        sink.csv("", &["check", "value", "tolerance", "passed"], rows)?;
        Ok(checks)
    }
}
