//! Acceptance suite: one PASS/FAIL line per criterion. Built with
//! `harness = false` so the lines show under a plain `cargo test`.

use std::process::ExitCode;
use std::time::Instant;

use airy_evolve::validation::Criterion;

/// Desk-scale budget per criterion.
const TIME_LIMIT_S: f64 = 60.0;

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--nocapture" || a == "--verbose");
    let mut failed = 0;
    for (k, criterion) in Criterion::ALL.into_iter().enumerate() {
        let start = Instant::now();
        let result = criterion.run();
        let elapsed = start.elapsed().as_secs_f64();
        match result {
            Ok(checks) => {
                let worst = checks.iter().find(|c| !c.passed);
                let pass = worst.is_none() && elapsed < TIME_LIMIT_S;
                failed += usize::from(!pass);
                let detail = match worst {
                    Some(c) => format!("{} = {:.3e} (tol {:.1e})", c.name, c.value, c.tolerance),
                    None => format!("{} checks", checks.len()),
                };
                println!("{} {} {}: {detail}, {elapsed:.1}s", if pass { "PASS" } else { "FAIL" }, k + 1, criterion.name());
                if verbose {
                    for c in &checks {
                        println!("    {:<40} {:.3e} (tol {:.1e})", c.name, c.value, c.tolerance);
                    }
                }
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {} {}: {e}", k + 1, criterion.name());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
