use airy_evolve::evolution::{gleisher, solve_heat_linear_with, HeatMethod};
use airy_evolve::grid::{rel_l2, rel_linf};
use airy_evolve::oracle::{crank_nicolson_heat, OracleConfig, Scheme};
use airy_evolve::validation::Check;
use airy_evolve::{GridFunction, Window};
use num_complex::Complex64;

use super::{config_err, grid, Plan};
use crate::error::Result;
use crate::output::Sink;
use crate::params::Params;

/// `∂F/∂t = ∂²F/∂x² + βxF` from `F(x, 0) = exp(-x²)`, checked against the closed form.
pub struct HeatPlan {
    f0: GridFunction,
    beta: f64,
    t: f64,
    method: HeatMethod,
    tol: f64,
    oracle: Option<(OracleConfig, f64)>,
}

impl HeatPlan {
    pub fn new(p: &Params) -> Result<Self> {
        let spec = grid(p, -40.0, 40.0, 2048)?;
        let beta = p.f64("beta", 0.5)?;
        let t = p.non_negative("t", 0.5)?;
        let method = match p.choice("method", "spectral", &["spectral", "quadrature"])? {
            "spectral" => HeatMethod::Spectral,
            _ => HeatMethod::Quadrature,
        };
        let tol = p.positive("tol", 1e-6)?;
        let oracle = if p.bool("oracle", false)? {
            let dt = p.positive("dt", 1e-3)?;
            let window = config_err(Window::new(0.5 * (spec.x_min + spec.x_max), 0.4 * (spec.x_max - spec.x_min)))?;
            let cfg = config_err(OracleConfig::new(spec.x_min, spec.x_max, spec.n, dt, window, Scheme::CrankNicolson))?;
            Some((cfg, p.positive("oracle-tol", 1e-3)?))
        } else {
            None
        };
        let f0 = config_err(spec.sample_real(|x| (-x * x).exp()))?;
        Ok(HeatPlan { f0, beta, t, method, tol, oracle })
    }
}

impl Plan for HeatPlan {
    fn run(&self, sink: &mut Sink) -> Result<Vec<Check>> {
        let f = solve_heat_linear_with(&self.f0, self.beta, self.t, self.method)?;
        sink.field("", &f)?;
        let exact: Vec<Complex64> = f.xs().map(|x| Complex64::new(gleisher(x, self.t, self.beta), 0.0)).collect();
        let mut checks = vec![Check::below("gleisher_linf", rel_linf(f.values(), &exact), self.tol)];
        if let Some((cfg, tol)) = &self.oracle {
            let beta = self.beta;
            let cn = crank_nicolson_heat(&self.f0, &|_| beta, &|_| 1.0, self.t, cfg)?;
            sink.field("_oracle", &cn)?;
            checks.push(Check::below("heat_vs_crank_nicolson_l2", rel_l2(f.values(), cn.values()), *tol));
        }
        Ok(checks)
    }
}
