use padelab_core::convergence::{
    grid_errors, omega_disks, overconvergence_scan, pole_proximity, CompactGrid, ConvergenceReport, ExclusionSummary,
    ProximityReport, ScanConfig, ScanReport,
};
use padelab_core::sequence::{decay_profile, detect_coeff_gaps, detect_decay_windows, detect_stationary_runs, Window};
use padelab_core::series::Radius;
use serde::Serialize;

use super::{compute_ray, Context, RayRun};
use crate::config::{OverconvSection, WindowSource};
use crate::error::CliError;
use crate::output::Csv;

#[derive(Serialize)]
struct GridRate<'a> {
    name: &'a str,
    fitted_rate: Option<f64>,
    theory_rate: f64,
    residual: Option<f64>,
    tolerance: f64,
    verdict: padelab_core::convergence::Verdict,
    fit_window: (usize, usize),
    max_modulus: f64,
    retained: usize,
    excluded: usize,
    skipped: usize,
}

#[derive(Serialize)]
struct RatesFile<'a> {
    function: &'static str,
    r_used: f64,
    provenance: padelab_core::series::Provenance,
    exclusion: ExclusionSummary,
    grids: Vec<GridRate<'a>>,
    pole_proximity: Option<ProximityReport>,
}

#[derive(Serialize)]
struct OverconvFile {
    function: &'static str,
    window_source: &'static str,
    windows: Vec<Window>,
    scan: ScanReport,
}

fn scan_windows(ctx: &Context, run: &RayRun, source: WindowSource) -> Result<(&'static str, Vec<Window>), CliError> {
    let h = run.schedule.horizon();
    let gaps = || -> Result<Vec<Window>, CliError> { Ok(if h >= 4 { detect_coeff_gaps(&ctx.f, h)? } else { Vec::new() }) };
    // drop runs that start at the origin: they carry no ratio information
    let stationary = || -> Vec<Window> { detect_stationary_runs(&run.ray.entries).into_iter().filter(|w| w.n_lo > 0).collect() };
    let decay = || {
        let p = decay_profile(&run.ray.entries, Some(&run.ray.norms), Radius::Known(run.r), run.provenance, ctx.prec);
        detect_decay_windows(&p, ctx.cfg.windows.margin, ctx.cfg.windows.min_ratio_gap)
    };
    Ok(match source {
        WindowSource::CoeffGap => ("coeff-gap", gaps()?),
        WindowSource::Stationary => ("stationary", stationary()),
        WindowSource::Decay => ("decay", decay()),
        WindowSource::Auto => {
            let g = gaps()?;
            if !g.is_empty() {
                ("coeff-gap", g)
            } else {
                let s = stationary();
                if !s.is_empty() {
                    ("stationary", s)
                } else {
                    ("decay", decay())
                }
            }
        }
    })
}

fn scan(ctx: &mut Context, run: &RayRun, excl: &padelab_core::convergence::ExclusionSet, o: &OverconvSection) -> Result<OverconvFile, CliError> {
    let z0 = match o.z0 {
        Some(z) => z,
        None => *ctx.f.meta().regular_points.first().ok_or_else(|| {
            CliError::Capability(format!("`{}` declares no regular boundary point; set overconv.z0", ctx.f.name()))
        })?,
    };
    let (source, windows) = scan_windows(ctx, run, o.windows)?;
    if windows.is_empty() {
        return Err(CliError::Capability(format!("no {source} windows were detected up to the horizon")));
    }
    let cfg = ScanConfig { density: o.density, threshold: o.threshold, prec: ctx.prec };
    let f = &ctx.f;
    let report = ctx.manifest.phase("overconvergence", || {
        Ok(overconvergence_scan(f, &run.ray.entries, &windows, z0, &o.radii, excl, &cfg)?)
    })?;
    Ok(OverconvFile { function: ctx.cfg.function.kind_name(), window_source: source, windows, scan: report })
}

pub fn run(ctx: &mut Context) -> Result<(), CliError> {
    let cfg = ctx.cfg;
    if cfg.grids.is_empty() && cfg.overconv.is_none() {
        return Err(CliError::Config("`grids`/`overconv`: this command needs at least one [[grids]] entry or an [overconv] section".into()));
    }
    if ctx.f.reference().is_none() {
        return Err(CliError::Capability(format!("series `{}` has no reference evaluator", ctx.f.name())));
    }
    let run = compute_ray(ctx)?;
    let excl = omega_disks(&run.ray.entries, &run.ray.norms, cfg.run.eps)?;

    let mut reports: Vec<ConvergenceReport> = Vec::new();
    for g in &cfg.grids {
        let (f, prec, seed) = (&ctx.f, ctx.prec, cfg.run.seed);
        let rep = ctx.manifest.phase(&format!("grid:{}", g.name), || {
            let grid = CompactGrid::build(g.region.clone(), g.density, g.jitter.then_some(seed), prec)?;
            Ok(grid_errors(f, &run.ray.entries, &grid, &excl, run.r, run.provenance, g.tolerance)?)
        })?;
        reports.push(rep);
    }
    let overconv = match &cfg.overconv {
        Some(o) => Some(scan(ctx, &run, &excl, o)?),
        None => None,
    };

    let fmt = ctx.fmt;
    if !reports.is_empty() {
        let names: Vec<String> = cfg.grids.iter().map(|g| format!("sup_{}", g.name)).collect();
        let mut header = vec!["n", "m"];
        header.extend(names.iter().map(String::as_str));
        let mut csv = Csv::new(
            &ctx.csv_meta(&[
                format!("sup_<grid>: sup |f - pi_n| over the grid points outside the exclusion set (eps = {})", fmt.f64(cfg.run.eps)),
                "errors at or below the rounding floor 2^(16-prec)*(1+|f|) are written as 0".into(),
            ]),
            &header,
        );
        for (i, e) in reports[0].errors.iter().enumerate() {
            let mut row = vec![e.n.to_string(), e.m.to_string()];
            row.extend(reports.iter().map(|r| fmt.f64(r.errors[i].sup_error)));
            csv.row(&row);
        }
        ctx.out.write("convergence.csv", &csv.finish())?;

        let mut true_poles: Vec<(f64, f64)> =
            ctx.f.meta().poles.iter().copied().filter(|p| p.0.hypot(p.1) < run.r).collect();
        true_poles.sort_by(|a, b| a.0.hypot(a.1).total_cmp(&b.0.hypot(b.1)));
        let rates = RatesFile {
            function: cfg.function.kind_name(),
            r_used: run.r,
            provenance: run.provenance,
            exclusion: excl.summary(),
            grids: cfg
                .grids
                .iter()
                .zip(&reports)
                .map(|(g, r)| GridRate {
                    name: &g.name,
                    fitted_rate: r.fitted_rate,
                    theory_rate: r.theory_rate,
                    residual: r.residual,
                    tolerance: r.tolerance,
                    verdict: r.verdict,
                    fit_window: r.fit_window,
                    max_modulus: r.max_modulus,
                    retained: r.retained,
                    excluded: r.excluded,
                    skipped: r.skipped,
                })
                .collect(),
            pole_proximity: (!true_poles.is_empty()).then(|| pole_proximity(&run.ray.entries, &run.ray.norms, &true_poles)),
        };
        ctx.out.write_json("rates.json", &fmt, &rates)?;

        for (g, r) in cfg.grids.iter().zip(&reports) {
            let mut p = Csv::new(&[format!("grid {}: x = n, y = sup error of pi_n on the grid", g.name)], &["x", "y"]);
            for e in &r.errors {
                p.row(&[e.n.to_string(), fmt.f64(e.sup_error)]);
            }
            ctx.out.write(&format!("errors_{}.plot.csv", g.name), &p.finish())?;
        }
    }

    if let Some(o) = overconv {
        ctx.out.write_json("overconv.json", &fmt, &o)?;
        for (i, r) in o.scan.radii.iter().enumerate() {
            let mut p = Csv::new(
                &[format!("radius {}: x = window end n_k', y = sup error on the disk about z0 outside |z| < |z0|", fmt.f64(r.r))],
                &["x", "y"],
            );
            for (n, e) in o.scan.subsequence.iter().zip(&r.errors) {
                p.row(&[n.to_string(), fmt.f64(*e)]);
            }
            ctx.out.write(&format!("overconv_r{i}.plot.csv"), &p.finish())?;
        }
    }
    Ok(())
}
