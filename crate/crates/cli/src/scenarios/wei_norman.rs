use airy_evolve::grid::rel_l2;
use airy_evolve::oracle::{crank_nicolson_heat, OracleConfig, Scheme};
use airy_evolve::validation::Check;
use airy_evolve::wei_norman::{evolve_with, wei_norman_coeffs, CoeffFunctions, Method, WeiNormanCoeffs};
use airy_evolve::{GridFunction, Window};

use super::{config_err, grid, Plan};
use crate::error::{CliError, Result};
use crate::output::{fmt, Sink};
use crate::params::Params;

/// `∂F/∂t = α(t)∂²F/∂x² + β(t)xF` through the ordered exponential factorisation.
pub struct WeiNormanPlan {
    coeffs: CoeffFunctions,
    f0: GridFunction,
    t: f64,
    samples: usize,
    method: Method,
    tol: f64,
    oracle: Option<(OracleConfig, f64)>,
}

impl WeiNormanPlan {
    pub fn new(p: &Params) -> Result<Self> {
        let spec = grid(p, -40.0, 40.0, 2048)?;
        let alpha = p.profile("alpha", 1.0)?;
        let beta = p.profile("beta", 0.5)?;
        let t = p.non_negative("t", 1.0)?;
        let samples = p.usize_in("samples", 11, 2, 100_000)?;
        let method = match p.choice("method", "ode", &["ode", "nested"])? {
            "ode" => Method::Ode,
            _ => Method::NestedQuadrature,
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
        // diffusion must stay non-negative on [0, t]
        let n_probe = 1000;
        if let Some(s) = (0..=n_probe).map(|k| t * k as f64 / n_probe as f64).find(|&s| alpha.eval(s) < 0.0) {
            return Err(CliError::config(format!("alpha({s}) < 0: the backward heat equation is ill posed")));
        }
        let f0 = config_err(spec.sample_real(|x| (-x * x).exp()))?;
        Ok(WeiNormanPlan { coeffs: CoeffFunctions::new(alpha, beta), f0, t, samples, method, tol, oracle })
    }
}

impl Plan for WeiNormanPlan {
    fn run(&self, sink: &mut Sink) -> Result<Vec<Check>> {
        let mut rows = Vec::with_capacity(self.samples);
        let mut worst = 0.0_f64;
        let mut last = None;
        for k in 0..self.samples {
            let t = self.t * k as f64 / (self.samples - 1) as f64;
            let at = |m| if t > 0.0 { wei_norman_coeffs(&self.coeffs, t, m) } else { Ok(WeiNormanCoeffs::default()) };
            let (ode, nested) = (at(Method::Ode)?, at(Method::NestedQuadrature)?);
            worst = worst.max(ode.rel_diff(&nested));
            let w = if self.method == Method::Ode { ode } else { nested };
            rows.push(vec![fmt(t), fmt(w.a), fmt(w.b), fmt(w.c), fmt(w.d)]);
            last = Some(w);
        }
        sink.csv("_coeffs", &["t", "a", "b", "c", "d"], rows)?;
        let f = match last {
            Some(w) => evolve_with(&w, &self.f0)?,
            None => self.f0.clone(),
        };
        sink.field("", &f)?;
        let mut checks = vec![Check::below("ode_vs_nested", worst, self.tol)];
        if let Some((cfg, tol)) = &self.oracle {
            let c = &self.coeffs;
            let cn = crank_nicolson_heat(&self.f0, &|t| c.beta.eval(t), &|t| c.alpha.eval(t), self.t, cfg)?;
            sink.field("_oracle", &cn)?;
            checks.push(Check::below("crank_nicolson_l2", rel_l2(f.values(), cn.values()), *tol));
        }
        Ok(checks)
    }
}
