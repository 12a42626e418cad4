//! Independent PDE solvers used only to validate the operational formulas.
//!
//! Nothing here depends on the transform or evolution code: the solvers share
//! only the grid types with the rest of the crate, so an agreement between an
//! oracle and an analytic path is a genuine cross-check.

mod crank_nicolson;
mod split_step;

pub use crank_nicolson::{crank_nicolson_heat, crank_nicolson_schrodinger};
pub use split_step::{split_step_schrodinger, PeakSample, SplitStepDiagnostics};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{GridFunction, Window};

/// Relative edge amplitude that counts as boundary contamination.
pub const EDGE_LIMIT: f64 = 1e-8;

/// Norm drift beyond which the split-step solver reports a step-size error.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    CrankNicolson,
    SplitStepFourier,
}

/// Grid, time step and apodisation shared by the oracle runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n_grid: usize,
    pub dt: f64,
    pub window: Window,
    pub scheme: Scheme,
}

impl OracleConfig {
    pub fn new(x_min: f64, x_max: f64, n_grid: usize, dt: f64, window: Window, scheme: Scheme) -> Result<Self> {
        let cfg = Self { x_min, x_max, n_grid, dt, window, scheme };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_min < self.x_max) {
            return Err(Error::domain(format!("bad domain [{}, {}]", self.x_min, self.x_max)));
        }
        if self.n_grid < 256 {
            return Err(Error::domain(format!("oracle grids need n >= 256, got {}", self.n_grid)));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::domain(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.window.center > self.x_min && self.window.center < self.x_max) {
            return Err(Error::domain("apodization window center lies outside the domain"));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_grid as f64
    }

    /// Samples `f` on the oracle grid (half-open, as everywhere in the crate).
    pub fn sample(&self, f: impl Fn(f64) -> Complex64) -> Result<GridFunction> {
        GridFunction::on_interval(self.x_min, self.x_max, self.n_grid, f)
    }

    /// Samples `f` and multiplies by the apodisation window.
    pub fn sample_apodized(&self, f: impl Fn(f64) -> Complex64) -> Result<GridFunction> {
        self.sample(|x| f(x) * self.window.weight(x))
    }

    fn check_grid(&self, f: &GridFunction) -> Result<()> {
        let same = f.len() == self.n_grid
            && (f.x0() - self.x_min).abs() <= 1e-12 * (1.0 + self.x_min.abs())
            && (f.dx() - self.dx()).abs() <= 1e-12 * self.dx();
        if same {
            Ok(())
        } else {
            Err(Error::grid("initial data is not sampled on the oracle grid"))
        }
    }

    /// Number of steps and the adjusted step that lands exactly on `t_final`.
    fn steps(&self, t_final: f64) -> (usize, f64) {
        let n = (t_final.abs() / self.dt).ceil().max(1.0) as usize;
        (n, t_final / n as f64)
    }
}

fn edge_check(f: &[Complex64], when: f64) -> Result<()> {
    let max = f.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
    let n = f.len();
    let edge = f[0].norm().max(f[n - 1].norm());
    if max > 0.0 && edge > EDGE_LIMIT * max {
        return Err(Error::WidenDomain(format!(
            "edge amplitude {:.2e} of max at t = {when}",
            edge / max
        )));
    }
    Ok(())
}
