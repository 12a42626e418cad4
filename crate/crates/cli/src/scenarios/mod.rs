//! One module per scenario kind. Each turns raw parameters into a typed
//! plan up front, so every configuration error surfaces before any run.

mod airy_packet;
mod centroid;
mod heat;
mod poly;
mod schrodinger;
mod transform;
mod validate;
mod wei_norman;

use std::collections::BTreeMap;

use airy_evolve::validation::Check;
use airy_evolve::GridSpec;

use crate::config::{Kind, Scenario};
use crate::error::{CliError, Result};
use crate::output::Sink;
use crate::params::Params;

pub trait Plan: Send + Sync {
    fn run(&self, sink: &mut Sink) -> Result<Vec<Check>>;
}

/// Validated plan plus the effective parameters for the manifest.
pub struct Planned {
    pub plan: Box<dyn Plan>,
    pub parameters: BTreeMap<String, String>,
}

pub fn plan(s: &Scenario) -> Result<Planned> {
    let p = Params::new(s);
    let plan: Box<dyn Plan> = match s.kind {
        Kind::Heat => Box::new(heat::HeatPlan::new(&p)?),
        Kind::Schrodinger => Box::new(schrodinger::SchrodingerPlan::new(&p)?),
        Kind::AiryPacket => Box::new(airy_packet::AiryPacketPlan::new(&p)?),
        Kind::Transform => Box::new(transform::TransformPlan::new(&p)?),
        Kind::Poly => Box::new(poly::PolyPlan::new(&p)?),
        Kind::WeiNorman => Box::new(wei_norman::WeiNormanPlan::new(&p)?),
        Kind::Centroid => Box::new(centroid::CentroidPlan::new(&p)?),
        Kind::Validate => Box::new(validate::ValidatePlan::new(&p)?),
    };
    let parameters = p.finish()?;
    Ok(Planned { plan, parameters })
}

/// Reads `x-min`, `x-max`, `n`.
fn grid(p: &Params, x_min: f64, x_max: f64, n: usize) -> Result<GridSpec> {
    let lo = p.f64("x-min", x_min)?;
    let hi = p.f64("x-max", x_max)?;
    let n = p.usize_in("n", n, 16, 1 << 20)?;
    config_err(GridSpec::new(lo, hi, n))
}

/// Core validation failures while planning are configuration errors.
fn config_err<T>(r: airy_evolve::Result<T>) -> Result<T> {
    r.map_err(|e| CliError::config(e.to_string()))
}
