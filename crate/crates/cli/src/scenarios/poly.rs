use airy_evolve::polynomials::{hermite_higher, rational, verify_recurrences, MAX_DEGREE};
use airy_evolve::transforms::{cubic_evolution_poly, gauss_weierstrass_poly};
use airy_evolve::validation::Check;
use airy_evolve::PolyDense;
use num_rational::BigRational;

use super::Plan;
use crate::error::Result;
use crate::output::Sink;
use crate::params::Params;

/// Exact coefficients of `H_n^(p)(x, λ)` for `n <= n-max`, with identity checks.
pub struct PolyPlan {
    p: usize,
    lambda: BigRational,
    n_max: usize,
}

impl PolyPlan {
    pub fn new(p: &Params) -> Result<Self> {
        Ok(PolyPlan {
            p: p.usize_in("p", 2, 2, 8)?,
            lambda: p.rational("lambda", "1")?,
            n_max: p.usize_in("n-max", 12, 0, MAX_DEGREE - 1)?,
        })
    }
}

impl Plan for PolyPlan {
    fn run(&self, sink: &mut Sink) -> Result<Vec<Check>> {
        let family: Vec<PolyDense> =
            (0..=self.n_max).map(|n| hermite_higher(n, self.p, &self.lambda)).collect::<airy_evolve::Result<_>>()?;
        let rows = family.iter().enumerate().flat_map(|(n, h)| {
            h.coeffs()
                .iter()
                .enumerate()
                .map(move |(k, c)| vec![n.to_string(), k.to_string(), c.numer().to_string(), c.denom().to_string()])
        });
        sink.csv("", &["n", "degree", "coefficient-numerator", "coefficient-denominator"], rows)?;

        let report = verify_recurrences(self.n_max, self.p, &self.lambda)?;
        let failures = report.entries.iter().filter(|e| !(e.raising && e.lowering)).count();
        let zero = rational(0, 1);
        let mut reduction = 0.0_f64;
        let mut representation = 0.0_f64;
        for (n, h) in family.iter().enumerate() {
            let x_n = PolyDense::monomial(n);
            reduction = reduction.max(hermite_higher(n, self.p, &zero)?.max_coeff_diff(&x_n));
            representation = representation.max(match self.p {
                2 => gauss_weierstrass_poly(&x_n, &self.lambda).max_coeff_diff(h),
                3 => cubic_evolution_poly(&x_n, &self.lambda).max_coeff_diff(h),
                _ => 0.0,
            });
        }
        let mut checks = vec![
            Check::exact(format!("recurrences_p{}", self.p), failures as f64),
            Check::exact("lambda_zero_reduction", reduction),
        ];
        match self.p {
            2 => checks.push(Check::exact("gauss_weierstrass_monomials", representation)),
            3 => checks.push(Check::exact("cubic_evolution_monomials", representation)),
            _ => {}
        }
        Ok(checks)
    }
}
