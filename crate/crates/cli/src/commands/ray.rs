use padelab_core::pade::normalize::NormalizationSummary;
use padelab_core::pade::{difference_identity_residual, order_of_contact, Contact};
use padelab_core::sequence::{decay_profile, RaySchedule};
use padelab_core::series::hp::abs_root;
use padelab_core::series::{HpComplex, Provenance, Radius};
use padelab_core::{Error, Float};
use serde::Serialize;

use super::{compute_ray, Context, RayRun};
use crate::error::CliError;
use crate::output::Csv;

#[derive(Serialize)]
struct RayManifest<'a> {
    function: &'static str,
    schedule: &'a RaySchedule,
    r_used: f64,
    provenance: Provenance,
    probes: &'a [(f64, f64)],
    /// Maxima of the root columns over `[horizon/2, horizon−1]`.
    trailing_window: (usize, usize),
    a_raw_root_tail_max: f64,
    a_root_tail_max: f64,
    big_a_root_tail_max: f64,
    residual_max: f64,
    residuals_skipped: usize,
    normalizations: Vec<NormalizationSummary>,
}

struct Row {
    a_raw_root: Float,
    a_root: Float,
    big_a_root: Option<Float>,
    residual: Option<Result<Float, String>>,
}

fn rows(run: &RayRun, probes: &[(f64, f64)], prec: u32) -> Result<Vec<Row>, CliError> {
    let ray = &run.ray;
    let profile = decay_profile(&ray.entries, Some(&ray.norms), Radius::Known(run.r), run.provenance, prec);
    let raw = decay_profile(&ray.entries, None, Radius::Known(run.r), run.provenance, prec);
    let zs: Vec<HpComplex> = probes.iter().map(|&(x, y)| HpComplex::from_f64(prec, x, y)).collect();
    let mut out = Vec::with_capacity(ray.len());
    for n in 0..ray.len() {
        let mut row = Row { a_raw_root: raw.values[n].clone(), a_root: profile.values[n].clone(), big_a_root: None, residual: None };
        if n + 1 < ray.len() {
            let a = ray.A(n)?;
            row.big_a_root = Some(if n == 0 { a.abs() } else { abs_root(&a.abs(), n as u64) });
            if ray.entries[n + 1].defect == 0 {
                let mut worst = Float::new(prec);
                let mut note = None;
                for z in &zs {
                    match difference_identity_residual(&ray.entries[n], &ray.entries[n + 1], &a, z, &ray.norms[n], &ray.norms[n + 1]) {
                        Ok(r) => worst = worst.max(&r.abs()),
                        Err(Error::PoleProximity { .. }) => note = Some("pole-proximity".to_string()),
                        Err(e) => return Err(e.into()),
                    }
                }
                row.residual = Some(note.map_or(Ok(worst), Err));
            }
        }
        out.push(row);
    }
    Ok(out)
}

fn tail_max(vals: impl Iterator<Item = f64>) -> f64 {
    vals.filter(|v| v.is_finite()).fold(0.0, f64::max)
}

pub fn run(ctx: &mut Context) -> Result<(), CliError> {
    let run = compute_ray(ctx)?;
    let probes = ctx.cfg.run.probes.clone();
    let prec = ctx.prec;
    let table = ctx.manifest.phase("identities", || rows(&run, &probes, prec))?;
    let fmt = ctx.fmt;

    let mut csv = Csv::new(
        &ctx.csv_meta(&[
            format!("schedule: {:?}; R = {} ({:?})", run.schedule.rule, fmt.f64(run.r), run.provenance),
            "a_raw_root: |a_n|^(1/n), a_n the coefficient of z^n in P_n; a_root: the same after normalizing Q_n".into(),
            "big_a_root: |A_n|^(1/n) for the step n -> n+1".into(),
            "residual: max over probe points of the difference-identity residual; empty when tau_{n+1} > 0".into(),
            "contact: measured order of contact of f*Q_n - P_n; >K means exact through index K".into(),
        ]),
        &["n", "m", "tau", "contact", "a_raw_root", "a_root", "big_a_root", "residual"],
    );
    for (n, row) in table.iter().enumerate() {
        let e = &run.ray.entries[n];
        csv.row(&[
            n.to_string(),
            e.m.to_string(),
            e.defect.to_string(),
            match order_of_contact(&ctx.f, e, 2 * (e.n + e.m) + 2) {
                Contact::At(j) => j.to_string(),
                Contact::Exact { cap } => format!(">{cap}"),
            },
            fmt.float(&row.a_raw_root),
            fmt.float(&row.a_root),
            row.big_a_root.as_ref().map_or_else(String::new, |x| fmt.float(x)),
            match &row.residual {
                None => String::new(),
                Some(Ok(x)) => fmt.float(x),
                Some(Err(note)) => note.clone(),
            },
        ]);
    }

    let h = run.schedule.horizon();
    let lo = h / 2;
    let hi = h.saturating_sub(1).max(lo);
    let manifest = RayManifest {
        function: ctx.cfg.function.kind_name(),
        schedule: &run.schedule,
        r_used: run.r,
        provenance: run.provenance,
        probes: &probes,
        trailing_window: (lo, hi),
        a_raw_root_tail_max: tail_max((lo.max(1)..=hi).map(|n| table[n].a_raw_root.to_f64())),
        a_root_tail_max: tail_max((lo.max(1)..=hi).map(|n| table[n].a_root.to_f64())),
        big_a_root_tail_max: tail_max(table[lo..=hi].iter().filter_map(|r| r.big_a_root.as_ref().map(|x| x.to_f64()))),
        residual_max: tail_max(table.iter().filter_map(|r| match &r.residual {
            Some(Ok(x)) => Some(x.to_f64()),
            _ => None,
        })),
        residuals_skipped: table.iter().filter(|r| matches!(r.residual, Some(Err(_)))).count(),
        normalizations: run.ray.norms.iter().map(|n| n.summary()).collect(),
    };
    ctx.out.write("ray.csv", &csv.finish())?;
    ctx.out.write_json("ray_manifest.json", &fmt, &manifest)
}
