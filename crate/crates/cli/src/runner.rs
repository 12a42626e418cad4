//! Scenario execution, output directory resolution and exit codes.

use std::path::{Path, PathBuf};

use crate::config::{load_config, parse_flags, Kind, Scenario};
use crate::error::{CliError, Result};
use crate::output::{CheckRecord, Manifest, ScenarioReport, Sink};
use crate::scenarios::{plan, Planned};

/// Overrides every other choice of output directory.
pub const OUT_ENV: &str = "AIRY_EVOLVE_OUT";
pub const DEFAULT_OUT: &str = "airy-evolve-out";

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub parallel: bool,
    /// Raw tokens after the subcommand.
    pub params: Vec<String>,
}

/// Resolves the scenario list from a config file or from flags.
pub fn scenarios(kind: Kind, opts: &RunOptions) -> Result<(Vec<Scenario>, RunOptions)> {
    let flags = parse_flags(&opts.params)?;
    let mut resolved = opts.clone();
    resolved.parallel |= flags.parallel;
    if let Some(c) = flags.config {
        resolved.config = Some(c.into());
    }
    if let Some(o) = flags.out {
        resolved.out = Some(o.into());
    }
    let mut params = flags.params;
    if kind == Kind::Validate && !flags.positional.is_empty() {
        if params.insert("preset".into(), flags.positional.join(",")).is_some() {
            return Err(CliError::config("give presets either positionally or with --preset"));
        }
    } else if let Some(p) = flags.positional.first() {
        return Err(CliError::config(format!("unexpected argument {p:?}")));
    }
    let list = match &resolved.config {
        Some(path) if params.is_empty() => load_config(path, kind)?,
        Some(_) => return Err(CliError::config("use either --config or parameter flags, not both")),
        None => vec![Scenario { name: kind.name().to_string(), kind, params }],
    };
    Ok((list, resolved))
}

pub fn output_dir(opts: &RunOptions) -> PathBuf {
    match std::env::var_os(OUT_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => opts.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
    }
}

fn execute(scenario: &Scenario, planned: &Planned, dir: &Path) -> ScenarioReport {
    let mut sink = Sink::new(dir, &scenario.name);
    let result = planned.plan.run(&mut sink);
    let outputs = sink.into_files();
    let (checks, error) = match result {
        Ok(checks) => (checks.into_iter().map(CheckRecord::from).collect::<Vec<_>>(), None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let passed = error.is_none() && checks.iter().all(|c| c.passed);
    ScenarioReport {
        name: scenario.name.clone(),
        kind: scenario.kind.name().to_string(),
        parameters: planned.parameters.clone(),
        outputs,
        checks,
        passed,
        error,
    }
}

/// Plans everything first (so configuration errors abort before any work),
/// then runs and writes the manifest.
pub fn run_scenarios(kind: Kind, scenarios: &[Scenario], dir: &Path, parallel: bool) -> Result<Manifest> {
    let planned: Vec<Planned> = scenarios.iter().map(plan).collect::<Result<_>>()?;
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::config(format!("cannot create output directory {}: {e}", dir.display())))?;
    let reports: Vec<ScenarioReport> = if parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = scenarios
                .iter()
                .zip(&planned)
                .map(|(sc, pl)| s.spawn(move || execute(sc, pl, dir)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("scenario thread panicked")).collect()
        })
    } else {
        scenarios.iter().zip(&planned).map(|(sc, pl)| execute(sc, pl, dir)).collect()
    };
    let manifest = Manifest {
        command: kind.name().to_string(),
        passed: reports.iter().all(|r| r.passed),
        scenarios: reports,
    };
    manifest.write(dir)?;
    Ok(manifest)
}

/// Full command: returns the process exit code (0 pass, 1 check failure, 2 bad config).
pub fn run(kind: Kind, opts: &RunOptions) -> u8 {
    let outcome = scenarios(kind, opts).and_then(|(list, resolved)| {
        let dir = output_dir(&resolved);
        run_scenarios(kind, &list, &dir, resolved.parallel).map(|m| (m, dir))
    });
    match outcome {
        Ok((manifest, dir)) => {
            for r in &manifest.scenarios {
                println!("{} {} ({})", if r.passed { "PASS" } else { "FAIL" }, r.name, r.kind);
                for c in r.checks.iter().filter(|c| !c.passed) {
                    println!("  {} = {:.3e}, tolerance {:.1e}", c.name, c.value, c.tolerance);
                }
                if let Some(e) = &r.error {
                    println!("  error: {e}");
                }
            }
            println!("manifest: {}", dir.join("manifest.json").display());
            u8::from(!manifest.passed)
        }
        Err(e) => {
            eprintln!("airy-evolve: {e}");
            e.exit_code()
        }
    }
}
