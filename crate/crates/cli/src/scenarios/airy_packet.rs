use airy_evolve::evolution::{airy_peak_position, solve_schrodinger_airy};
use airy_evolve::oracle::{split_step_schrodinger, OracleConfig, Scheme};
use airy_evolve::special_fn::{airy_ai, AiryScale};
use airy_evolve::validation::Check;
use airy_evolve::{Error, GridSpec, Window, WindowSide};
use num_complex::Complex64;

use super::{config_err, grid, Plan};
use crate::error::Result;
use crate::output::{fmt, Sink};
use crate::params::Params;

/// Closed-form Airy packet in the field `b`, optionally cross-checked by
/// split-step on an apodised copy.
pub struct AiryPacketPlan {
    grid: GridSpec,
    b: f64,
    scale: AiryScale,
    tau_max: f64,
    snapshots: usize,
    oracle: Option<OracleConfig>,
}

impl AiryPacketPlan {
    pub fn new(p: &Params) -> Result<Self> {
        let grid = grid(p, -30.0, 30.0, 6000)?;
        let b = p.f64("b", 1.0)?;
        let scale = config_err(AiryScale::new(p.positive("A", 1.0)?))?;
        let tau_max = p.non_negative("tau-max", 2.0)?;
        let snapshots = p.usize_in("snapshots", 11, 2, 1000)?;
        let oracle = if p.bool("oracle", false)? {
            let window = config_err(Window::with_side(
                p.f64("window-center", -30.0)?,
                p.positive("window-width", 30.0)?,
                WindowSide::Left,
            ))?;
            Some(config_err(OracleConfig::new(
                p.f64("oracle-x-min", -100.0)?,
                p.f64("oracle-x-max", 60.0)?,
                p.usize_in("oracle-n", 4096, 256, 1 << 20)?,
                p.positive("dt", 1e-3)?,
                window,
                Scheme::SplitStepFourier,
            ))?)
        } else {
            None
        };
        Ok(AiryPacketPlan { grid, b, scale, tau_max, snapshots, oracle })
    }
}

impl Plan for AiryPacketPlan {
    fn run(&self, sink: &mut Sink) -> Result<Vec<Check>> {
        let dx = self.grid.dx();
        let mut field_rows = Vec::new();
        let mut peak_rows = Vec::new();
        let (mut worst_cells, mut lo, mut hi) = (0.0_f64, f64::INFINITY, 0.0_f64);
        for k in 0..self.snapshots {
            let tau = self.tau_max * k as f64 / (self.snapshots - 1) as f64;
            let packet = solve_schrodinger_airy(&self.grid, self.b, tau, self.scale)?;
            let peak = packet.peak.ok_or_else(|| Error::Numeric(format!("no interior peak at tau = {tau}")))?;
            worst_cells = worst_cells.max((peak.x - packet.predicted_peak_x).abs() / dx);
            lo = lo.min(peak.value);
            hi = hi.max(peak.value);
            peak_rows.push(vec![fmt(tau), fmt(peak.x), fmt(packet.predicted_peak_x), fmt(peak.value)]);
            let f = &packet.field;
            field_rows.extend(f.values().iter().enumerate().map(|(j, v)| {
                vec![fmt(tau), fmt(f.x(j)), fmt(v.re), fmt(v.im), fmt(v.norm_sqr())]
            }));
        }
        sink.csv("", &["tau", "x", "re", "im", "abs2"], field_rows)?;
        sink.csv("_peaks", &["tau", "x_peak", "x_predicted", "peak_abs2"], peak_rows)?;
        let mut checks = vec![
            Check::below("peak_trajectory_cells", worst_cells, 2.0),
            Check::below("closed_form_peak_variation", (hi - lo) / hi, 1e-2),
        ];

        if let Some(cfg) = &self.oracle {
            let a = self.scale.value();
            let f0 = cfg.sample_apodized(|x| Complex64::new(airy_ai(x / a).unwrap_or(f64::NAN), 0.0))?;
            let b = self.b;
            let (_, diag) = split_step_schrodinger(&f0, &|_| b, self.tau_max, self.snapshots - 1, cfg)?;
            let first = *diag.peaks.first().ok_or_else(|| Error::Numeric("no peak samples".into()))?;
            let rows = diag.peaks.iter().map(|s| {
                vec![fmt(s.tau), fmt(s.x), fmt(airy_peak_position(b, s.tau, self.scale)), fmt(s.density)]
            });
            sink.csv("_oracle_peaks", &["tau", "x_peak", "x_predicted", "peak_abs2"], rows)?;
            let decay = diag.peaks.iter().map(|s| (first.density - s.density) / first.density).fold(0.0, f64::max);
            let cells = diag
                .peaks
                .iter()
                .map(|s| (s.x - airy_peak_position(b, s.tau, self.scale)).abs() / cfg.dx())
                .fold(0.0, f64::max);
            checks.push(Check::below("split_step_peak_decay", decay, 0.03));
            checks.push(Check::below("split_step_trajectory_cells", cells, 2.0));
        }
        Ok(checks)
    }
}
