use airy_evolve::evolution::{centroid_trajectory, second_difference};
use airy_evolve::validation::Check;
use airy_evolve::wei_norman::Profile;

use super::Plan;
use crate::error::Result;
use crate::output::{fmt, Sink};
use crate::params::Params;

/// Centroid of a packet in the field `B³/(2m) + φ(t)`.
pub struct CentroidPlan {
    phi: Profile,
    big_b: f64,
    mass: f64,
    t: Vec<f64>,
    tol: f64,
}

impl CentroidPlan {
    pub fn new(p: &Params) -> Result<Self> {
        let phi = p.profile("phi", 0.0)?;
        let big_b = p.positive("B", 1.0)?;
        let mass = p.positive("m", 1.0)?;
        let t_max = p.positive("t-max", 10.0)?;
        let n = p.usize_in("n-t", 2001, 5, 10_000_000)?;
        let tol = p.positive("tol", 1e-4)?;
        let t = (0..n).map(|i| t_max * i as f64 / (n - 1) as f64).collect();
        Ok(CentroidPlan { phi, big_b, mass, t, tol })
    }
}

impl Plan for CentroidPlan {
    fn run(&self, sink: &mut Sink) -> Result<Vec<Check>> {
        let phi: Vec<f64> = self.t.iter().map(|&s| self.phi.eval(s)).collect();
        let x = centroid_trajectory(&phi, self.big_b, self.mass, &self.t)?;
        sink.csv("", &["t", "X_c"], self.t.iter().zip(&x).map(|(t, x)| vec![fmt(*t), fmt(*x)]))?;
        let want: Vec<f64> =
            phi.iter().map(|f| self.big_b.powi(3) / (2.0 * self.mass * self.mass) + f / self.mass).collect();
        let scale = want.iter().fold(0.0_f64, |s, w| s.max(w.abs())).max(f64::MIN_POSITIVE);
        let err = second_difference(&x, &self.t)
            .iter()
            .zip(&want)
            .filter_map(|(a, w)| a.map(|a| (a - w).abs()))
            .fold(0.0, f64::max);
        Ok(vec![Check::below("centroid_acceleration", err / scale, self.tol)])
    }
}
