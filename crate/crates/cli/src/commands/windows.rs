use padelab_core::sequence::{
    classify, decay_profile, detect_coeff_gaps, detect_decay_windows, detect_stationary_runs, estimate_tau, gap_cases,
    psi_sensitivity, psi_window_search, verify_coeff_gaps, verify_stationary, AnchorResult, CaseReport, DecayProfile,
    PsiParams, SensitivityRun, Window,
};
use padelab_core::series::radius::resolve_r_meromorphy;
use padelab_core::series::{Provenance, Radius};
use serde::Serialize;

use super::{compute_ray, Context};
use crate::config::TauSetting;
use crate::error::CliError;
use crate::output::Csv;

#[derive(Serialize, Default)]
struct Detected {
    coeff_gap: Option<Vec<Window>>,
    decay: Vec<Window>,
    stationary: Option<Vec<Window>>,
}

#[derive(Serialize, Default)]
struct Cases {
    coeff_gap: Option<CaseReport>,
    decay: Option<CaseReport>,
    stationary: Option<CaseReport>,
}

#[derive(Serialize)]
struct ProfileInfo {
    source: &'static str,
    len: usize,
    r_m: f64,
    provenance: Provenance,
}

/// Decay windows measured against `1/R(f)` instead of `1/R_m`, reported
/// side by side because the hypothesis and conclusion use different radii.
#[derive(Serialize)]
struct AgainstRf {
    r_f: Option<f64>,
    r_f_infinite: bool,
    provenance: Provenance,
    decay: Vec<Window>,
    cases: Option<CaseReport>,
}

#[derive(Serialize)]
struct PsiReport {
    status: &'static str,
    explanation: Option<String>,
    anchors: Vec<usize>,
    tau: Option<f64>,
    tau_source: &'static str,
    params: Option<PsiParams>,
    results: Vec<AnchorResult>,
    sensitivity: Vec<SensitivityRun>,
}

#[derive(Serialize)]
struct WindowsFile {
    function: &'static str,
    profile: ProfileInfo,
    windows: Detected,
    cases: Cases,
    /// Absent when the profile is a synthetic override.
    decay_against_r_f: Option<AgainstRf>,
    coeff_gaps_verified: Option<bool>,
    stationary_verified: Option<bool>,
    /// Every gap window is also a stationary run of the ray.
    gaps_match_stationary: Option<bool>,
    psi: PsiReport,
}

fn psi_report(profile: &DecayProfile, anchors: Vec<usize>, tau: &TauSetting, c1: f64, c4: f64, m: f64, r_m: f64) -> Result<PsiReport, CliError> {
    let mut rep = PsiReport {
        status: "ok",
        explanation: None,
        anchors,
        tau: None,
        tau_source: match tau {
            TauSetting::Fixed(_) => "config",
            TauSetting::Policy(_) => "estimate",
        },
        params: None,
        results: Vec::new(),
        sensitivity: Vec::new(),
    };
    if rep.anchors.is_empty() {
        rep.status = "no-anchors";
        rep.explanation = Some("no decay windows were detected and no anchors were configured".into());
        return Ok(rep);
    }
    rep.tau = match tau {
        TauSetting::Fixed(t) => Some(*t),
        TauSetting::Policy(_) => estimate_tau(profile, &rep.anchors, r_m),
    };
    let Some(t) = rep.tau else {
        rep.status = "tau-unavailable";
        rep.explanation = Some("the profile at the anchors is not below 1/R_m, so no positive tau exists".into());
        return Ok(rep);
    };
    let params = PsiParams { c1, c4, m, tau: t };
    rep.params = Some(params);
    rep.results = psi_window_search(profile, &rep.anchors, &params, r_m)?;
    rep.sensitivity = psi_sensitivity(profile, &rep.anchors, &params, r_m)?;
    if rep.results.iter().all(|r| r.found().is_none()) {
        rep.status = "no-windows";
        rep.explanation = Some("every anchor was skipped; see the per-anchor reasons".into());
    }
    Ok(rep)
}

pub fn run(ctx: &mut Context) -> Result<(), CliError> {
    let cfg = ctx.cfg;
    let w = &cfg.windows;
    let prec = ctx.prec;
    let ray = match (&cfg.schedule, &w.profile_override) {
        (None, Some(_)) => None,
        _ => Some(compute_ray(ctx)?),
    };

    let (profile, info) = match (&w.profile_override, &ray) {
        (Some(o), _) => (
            DecayProfile::from_values(&o.values, Radius::Known(o.radius), prec),
            ProfileInfo { source: "override", len: o.values.len(), r_m: o.radius, provenance: Provenance::Declared },
        ),
        (None, Some(run)) => (
            decay_profile(&run.ray.entries, Some(&run.ray.norms), Radius::Known(run.r), run.provenance, prec),
            ProfileInfo { source: "computed", len: run.ray.len(), r_m: run.r, provenance: run.provenance },
        ),
        (None, None) => unreachable!("a ray is computed whenever no override is given"),
    };

    let f = &ctx.f;
    let mut detected = Detected::default();
    let mut cases = Cases::default();
    let (mut gaps_ok, mut stat_ok, mut coincide, mut rf) = (None, None, None, None);
    ctx.manifest.phase("detectors", || {
        detected.decay = detect_decay_windows(&profile, w.margin, w.min_ratio_gap);
        cases.decay = Some(classify(&detected.decay, w.min_ratio_gap));
        if let Some(h) = cfg.run.horizon.filter(|&h| h >= 4) {
            let gaps = detect_coeff_gaps(f, h)?;
            let r0 = f.meta().r0.finite();
            cases.coeff_gap = Some(gap_cases(f, &gaps, r0, w.min_ratio_gap, prec));
            gaps_ok = Some(verify_coeff_gaps(f, &gaps));
            detected.coeff_gap = Some(gaps);
        }
        if let Some(run) = &ray {
            let (r_f, provenance) = resolve_r_meromorphy(f, run.schedule.max_m(), run.ray.len(), prec);
            let mut alt = profile.clone();
            alt.radius = r_f;
            alt.provenance = provenance;
            let decay = detect_decay_windows(&alt, w.margin, w.min_ratio_gap);
            rf = Some(AgainstRf {
                r_f: r_f.finite(),
                r_f_infinite: r_f.is_infinite(),
                provenance,
                cases: (!decay.is_empty()).then(|| classify(&decay, w.min_ratio_gap)),
                decay,
            });
            let stat = detect_stationary_runs(&run.ray.entries);
            cases.stationary = Some(classify(&stat, w.min_ratio_gap));
            stat_ok = Some(verify_stationary(&run.ray.entries, &stat));
            if let Some(g) = &detected.coeff_gap {
                coincide = Some(g.iter().all(|gw| stat.iter().any(|s| (s.n_lo, s.n_hi) == (gw.n_lo, gw.n_hi))));
            }
            detected.stationary = Some(stat);
        }
        Ok(())
    })?;

    let anchors = match &w.anchors {
        Some(a) => a.clone(),
        None => {
            let mut a: Vec<usize> = detected.decay.iter().map(|x| x.n_hi).collect();
            a.dedup();
            a
        }
    };
    let m = w.psi.m.unwrap_or_else(|| ray.as_ref().map_or(0.0, |r| r.schedule.max_m() as f64));
    let psi = ctx.manifest.phase("psi", || psi_report(&profile, anchors, &w.psi.tau, w.psi.c1, w.psi.c4, m, info.r_m))?;

    let fmt = ctx.fmt;
    let mut csv = Csv::new(
        &ctx.csv_meta(&[
            format!("psi status: {}; tau = {} ({})", psi.status, fmt.opt(psi.tau), psi.tau_source),
            "l_k: largest window length with psi(l_k) < -tau/2; agreement: profile below 1/R_m on [n_k - l_k, n_k]".into(),
        ]),
        &["n_k", "status", "l_k", "psi_0", "psi_l", "agreement", "unverified", "reason"],
    );
    for r in &psi.results {
        match r {
            AnchorResult::Found(x) => csv.row(&[
                x.n_k.to_string(),
                "found".into(),
                x.l_k.to_string(),
                fmt.f64(x.psi_0),
                fmt.f64(x.psi_l),
                x.agreement.to_string(),
                x.unverified.to_string(),
                String::new(),
            ]),
            AnchorResult::Skipped { n_k, reason } => csv.row(&[
                n_k.to_string(),
                "skipped".into(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                reason.clone(),
            ]),
        }
    }

    let file = WindowsFile {
        function: cfg.function.kind_name(),
        profile: info,
        windows: detected,
        cases,
        decay_against_r_f: rf,
        coeff_gaps_verified: gaps_ok,
        stationary_verified: stat_ok,
        gaps_match_stationary: coincide,
        psi,
    };
    ctx.out.write_json("windows.json", &fmt, &file)?;
    ctx.out.write("psi.csv", &csv.finish())
}
