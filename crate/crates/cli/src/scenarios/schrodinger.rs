use airy_evolve::evolution::gaussian_in_field;
use airy_evolve::grid::rel_l2;
use airy_evolve::oracle::{split_step_schrodinger, OracleConfig, Scheme};
use airy_evolve::validation::Check;
use airy_evolve::wei_norman::{factorized_schrodinger, Profile};
use airy_evolve::{GridFunction, Window};
use num_complex::Complex64;

use super::{config_err, grid, Plan};
use crate::error::Result;
use crate::output::Sink;
use crate::params::Params;

/// `i∂Ψ/∂τ = -∂²Ψ/∂x² + b(τ)xΨ` from a Gaussian.
pub struct SchrodingerPlan {
    f0: GridFunction,
    field: Profile,
    tau: f64,
    tol: f64,
    oracle: Option<(OracleConfig, f64)>,
}

impl SchrodingerPlan {
    pub fn new(p: &Params) -> Result<Self> {
        let spec = grid(p, -60.0, 60.0, 4096)?;
        let field = p.profile("b", 0.5)?;
        let tau = p.non_negative("tau", 1.0)?;
        let tol = p.positive("tol", 1e-8)?;
        let oracle = if p.bool("oracle", false)? {
            let dt = p.positive("dt", 1e-3)?;
            let window = config_err(Window::new(0.5 * (spec.x_min + spec.x_max), 0.4 * (spec.x_max - spec.x_min)))?;
            let cfg = config_err(OracleConfig::new(spec.x_min, spec.x_max, spec.n, dt, window, Scheme::SplitStepFourier))?;
            Some((cfg, p.positive("oracle-tol", 1e-4)?))
        } else {
            None
        };
        let f0 = config_err(spec.sample_real(|x| (-x * x).exp()))?;
        Ok(SchrodingerPlan { f0, field, tau, tol, oracle })
    }
}

impl Plan for SchrodingerPlan {
    fn run(&self, sink: &mut Sink) -> Result<Vec<Check>> {
        let psi = factorized_schrodinger(&self.field, &self.f0, self.tau)?;
        sink.field("", &psi)?;
        let drift = (psi.l2_norm() - self.f0.l2_norm()).abs() / self.f0.l2_norm();
        let mut checks = vec![Check::below("norm_drift", drift, 1e-6)];
        if let Profile::Constant(b) = self.field {
            let exact: Vec<Complex64> = psi.xs().map(|x| gaussian_in_field(x, self.tau, b)).collect();
            checks.push(Check::below("closed_form_l2", rel_l2(psi.values(), &exact), self.tol));
        }
        if let Some((cfg, tol)) = &self.oracle {
            let field = &self.field;
            let (ss, diag) = split_step_schrodinger(&self.f0, &|t| field.eval(t), self.tau, 0, cfg)?;
            sink.field("_oracle", &ss)?;
            checks.push(Check::below("split_step_l2", rel_l2(ss.values(), psi.values()), *tol));
            checks.push(Check::below("split_step_norm_drift", diag.norm_drift, 1e-6));
        }
        Ok(checks)
    }
}
