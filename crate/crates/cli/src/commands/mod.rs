pub mod overconv;
pub mod ray;
pub mod table;
pub mod windows;

use padelab_core::pade::Ray;
use padelab_core::sequence::{build_schedule, RaySchedule};
use padelab_core::series::{catalog_make, estimate_rm, PowerSeries, Provenance, Radius, RadiusValue};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::output::{Artifacts, NumberFormat};

pub struct Context<'a> {
    pub cfg: &'a RunConfig,
    pub command: &'static str,
    pub f: PowerSeries,
    pub prec: u32,
    pub fmt: NumberFormat,
    pub out: Artifacts,
    pub manifest: RunManifest,
}

impl<'a> Context<'a> {
    pub fn new(cfg: &'a RunConfig, command: &'static str, out: Artifacts) -> Result<Self, CliError> {
        let f = catalog_make(&cfg.function)?;
        let prec = cfg.run.precision;
        let manifest = RunManifest::start(command, cfg, &out)?;
        Ok(Context { cfg, command, f, prec, fmt: NumberFormat::new(prec), out, manifest })
    }

    /// Metadata lines shared by every CSV artifact.
    pub fn csv_meta(&self, extra: &[String]) -> Vec<String> {
        let mut m = vec![
            format!("{} {} {}", crate::TOOL, env!("CARGO_PKG_VERSION"), self.command),
            format!("function: {}", self.cfg.function.kind_name()),
            format!("precision: {} bits; floats: {}", self.prec, self.fmt.describe()),
        ];
        m.extend_from_slice(extra);
        m
    }
}

pub struct RayRun {
    pub schedule: RaySchedule,
    pub ray: Ray,
    pub r: f64,
    pub provenance: Provenance,
}

/// Normalization radius for a ray whose largest row index is `max_m`.
///
/// Order: config override, declared `R_m`, Hankel estimate. An entire
/// function has no finite `R_m`; the split radius is then arbitrary and 1
/// is used.
pub fn resolve_radius(cfg: &RunConfig, f: &PowerSeries, max_m: usize, horizon: usize, prec: u32) -> Result<(f64, Provenance), CliError> {
    if let Some(r) = cfg.run.radius {
        return Ok((r, Provenance::Declared));
    }
    match f.meta().rm(max_m) {
        Radius::Known(r) => Ok((r, Provenance::Declared)),
        Radius::Infinite => Ok((1.0, Provenance::Declared)),
        Radius::Unknown => match estimate_rm(f, max_m, horizon, prec).value {
            RadiusValue::Finite(r) => Ok((r.to_f64(), Provenance::Estimated)),
            RadiusValue::Infinite => Ok((1.0, Provenance::Estimated)),
        },
    }
}

pub fn compute_ray(ctx: &mut Context) -> Result<RayRun, CliError> {
    let (rule, horizon) = ctx.cfg.require_schedule()?;
    let schedule = build_schedule(rule, horizon)?;
    let (r, provenance) = resolve_radius(ctx.cfg, &ctx.f, schedule.max_m(), horizon, ctx.prec)?;
    let (f, prec) = (&ctx.f, ctx.prec);
    let ray = ctx.manifest.phase("ray", || Ok(Ray::compute(f, &schedule.values, r, provenance, prec)?))?;
    Ok(RayRun { schedule, ray, r, provenance })
}
