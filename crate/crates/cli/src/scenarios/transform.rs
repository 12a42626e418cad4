use airy_evolve::grid::{central_derivative, rel_linf};
use airy_evolve::transforms::{airy_transform, apply_multiplier, cubic_evolution, derivative, gauss_weierstrass};
use airy_evolve::validation::Check;
use airy_evolve::GridFunction;
use num_complex::Complex64;

use super::{config_err, grid, Plan};
use crate::error::Result;
use crate::output::Sink;
use crate::params::Params;

enum Op {
    GaussWeierstrass { t: f64 },
    Airy { alpha: f64 },
    Cubic { t: f64 },
}

/// One integral transform of the Gaussian `exp(-(x - c)²)`.
pub struct TransformPlan {
    f: GridFunction,
    center: f64,
    op: Op,
    tol: f64,
}

impl TransformPlan {
    pub fn new(p: &Params) -> Result<Self> {
        let spec = grid(p, -30.0, 30.0, 3000)?;
        let center = p.f64("center", 0.0)?;
        let (op, tol) = match p.choice("op", "gauss-weierstrass", &["gauss-weierstrass", "airy", "cubic"])? {
            "gauss-weierstrass" => (Op::GaussWeierstrass { t: p.non_negative("t", 0.25)? }, 1e-10),
            "airy" => (Op::Airy { alpha: p.f64_where("alpha", 1.0, "nonzero", |a| a != 0.0)? }, 1e-4),
            _ => (Op::Cubic { t: p.f64("t", 0.25)? }, 1e-4),
        };
        let tol = p.positive("tol", tol)?;
        let f = config_err(spec.sample_real(|x| (-(x - center) * (x - center)).exp()))?;
        Ok(TransformPlan { f, center, op, tol })
    }

    fn interior(&self) -> (usize, usize) {
        let (lo, hi) = (self.f.x0(), self.f.x(self.f.len() - 1));
        let mid = 0.5 * (lo + hi);
        self.f.index_range(mid - 0.3 * (hi - lo), mid + 0.3 * (hi - lo))
    }
}

impl Plan for TransformPlan {
    fn run(&self, sink: &mut Sink) -> Result<Vec<Check>> {
        let (s, e) = self.interior();
        let check = match self.op {
            Op::GaussWeierstrass { t } => {
                let g = gauss_weierstrass(&self.f, Complex64::new(t, 0.0))?;
                sink.field("", &g)?;
                let w = 1.0 + 4.0 * t;
                let exact: Vec<Complex64> = g
                    .xs()
                    .map(|x| Complex64::new((-(x - self.center).powi(2) / w).exp() / w.sqrt(), 0.0))
                    .collect();
                Check::below("gauss_weierstrass_closed_form_linf", rel_linf(g.values(), &exact), self.tol)
            }
            Op::Airy { alpha } => {
                let phi = airy_transform(&self.f, alpha)?;
                sink.field("", &phi)?;
                let lhs = airy_transform(&derivative(&self.f, 1)?, alpha)?;
                let rhs = central_derivative(phi.values(), phi.dx(), 1);
                Check::below("airy_transform_derivative", rel_linf(&lhs.values()[s..e], &rhs[s..e]), self.tol)
            }
            Op::Cubic { t } => {
                let g = cubic_evolution(&self.f, t)?;
                sink.field("", &g)?;
                // ∂ → ik, so exp(t∂³) → exp(-itk³)
                let spectral = apply_multiplier(&self.f, |k| Complex64::from_polar(1.0, -t * k * k * k))?;
                Check::below("cubic_vs_spectral_linf", rel_linf(&g.values()[s..e], &spectral.values()[s..e]), self.tol)
            }
        };
        Ok(vec![check])
    }
}
