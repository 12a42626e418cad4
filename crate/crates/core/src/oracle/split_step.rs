//! Strang-split Fourier solver for `i∂_τΨ = -∂ₓ²Ψ + b(τ)xΨ` on a periodic grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{OracleConfig, NORM_DRIFT_LIMIT};
use crate::error::{Error, Result};
use crate::grid::{find_peak, GridFunction};

/// Density peak at one recorded time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakSample {
    pub tau: f64,
    pub x: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitStepDiagnostics {
    pub steps: usize,
    /// `|‖Ψ(τ)‖ - ‖Ψ(0)‖| / ‖Ψ(0)‖` at the end of the run.
    pub norm_drift: f64,
    /// Peak of `|Ψ|²` inside the window interior, recorded `record_points + 1` times.
    pub peaks: Vec<PeakSample>,
    /// Largest relative amplitude seen in the outermost samples.
    pub max_edge_fraction: f64,
}

/// Evolves `f0` to `tau_final` with field `b(τ)` sampled at step midpoints.
pub fn split_step_schrodinger(
    f0: &GridFunction,
    b_of_tau: &dyn Fn(f64) -> f64,
    tau_final: f64,
    record_points: usize,
    cfg: &OracleConfig,
) -> Result<(GridFunction, SplitStepDiagnostics)> {
    cfg.validate()?;
    cfg.check_grid(f0)?;
    if !tau_final.is_finite() {
        return Err(Error::domain("tau_final must be finite"));
    }
    let n = f0.len();
    let dx = f0.dx();
    let xs: Vec<f64> = f0.xs().collect();
    let (lo, hi) = cfg.window.interior();
    let (start, end) = f0.index_range(lo, hi);
    let peak_at = |u: &[Complex64], tau: f64| {
        let density: Vec<f64> = u.iter().map(|v| v.norm_sqr()).collect();
        find_peak(&density, f0.x0(), dx, start, end).map(|p| PeakSample { tau, x: p.x, density: p.value })
    };
    let norm = |u: &[Complex64]| u.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();

    let mut u = f0.values().to_vec();
    let norm0 = norm(&u);
    let mut peaks: Vec<PeakSample> = peak_at(&u, 0.0).into_iter().collect();
    let mut max_edge = edge_fraction(&u);
    if tau_final == 0.0 {
        let diag = SplitStepDiagnostics { steps: 0, norm_drift: 0.0, peaks, max_edge_fraction: max_edge };
        return Ok((f0.clone(), diag));
    }

    let (steps, dt) = cfg.steps(tau_final);
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let kinetic: Vec<Complex64> = (0..n)
        .map(|j| {
            let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
            let k = 2.0 * PI * m / (n as f64 * dx);
            Complex64::from_polar(1.0 / n as f64, -k * k * dt)
        })
        .collect();
    let record_every = if record_points == 0 { usize::MAX } else { (steps / record_points).max(1) };

    for step in 0..steps {
        let b = b_of_tau((step as f64 + 0.5) * dt);
        let half: Vec<Complex64> = xs.iter().map(|&x| Complex64::from_polar(1.0, -0.5 * b * x * dt)).collect();
        u.iter_mut().zip(&half).for_each(|(v, h)| *v *= h);
        forward.process(&mut u);
        u.iter_mut().zip(&kinetic).for_each(|(v, k)| *v *= k);
        inverse.process(&mut u);
        u.iter_mut().zip(&half).for_each(|(v, h)| *v *= h);

        max_edge = max_edge.max(edge_fraction(&u));
        if (step + 1) % record_every == 0 || step + 1 == steps {
            let tau = (step + 1) as f64 * dt;
            if peaks.last().is_none_or(|p| p.tau < tau) {
                peaks.extend(peak_at(&u, tau));
            }
        }
    }

    let norm_drift = if norm0 > 0.0 { (norm(&u) - norm0).abs() / norm0 } else { 0.0 };
    if norm_drift > NORM_DRIFT_LIMIT {
        return Err(Error::StepSize(format!(
            "norm drift {norm_drift:.3e} after {steps} steps of {dt}"
        )));
    }
    let diag = SplitStepDiagnostics { steps, norm_drift, peaks, max_edge_fraction: max_edge };
    Ok((f0.with_values(u)?, diag))
}

fn edge_fraction(u: &[Complex64]) -> f64 {
    let max = u.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
    if max == 0.0 {
        return 0.0;
    }
    u[0].norm().max(u[u.len() - 1].norm()) / max
}
