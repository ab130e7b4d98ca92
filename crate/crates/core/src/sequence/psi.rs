//! The ψ function that sizes the backward windows `[n_k − l_k, n_k]`, and the
//! window search built on it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::profile::DecayProfile;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiParams {
    pub c1: f64,
    pub c4: f64,
    pub m: f64,
    pub tau: f64,
}

impl PsiParams {
    fn validate(&self) -> Result<()> {
        if !(self.c1 >= 1.0 && self.c4 >= 1.0) {
            return Err(Error::param("c1/c4", "constants must be at least 1"));
        }
        if !(self.m >= 0.0 && self.m.is_finite()) {
            return Err(Error::param("m", "must be finite and nonnegative"));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::param("tau", "must be finite and positive"));
        }
        Ok(())
    }

    /// ψ_n is strictly increasing in `x` exactly when this is positive.
    pub fn slope_sign(&self, n_k: usize) -> f64 {
        let n = n_k as f64;
        self.c4 + 2.0 * self.m * n.ln() + self.c1 / n - self.tau
    }
}

/// `ψ_{n_k}(x) = (C4·x + C1)/(n_k − x) + 2m·x·ln(n_k)/(n_k − x) − τ·n_k/(n_k − x)`.
pub fn psi(n_k: usize, x: f64, p: &PsiParams) -> Result<f64> {
    p.validate()?;
    let n = n_k as f64;
    if !(0.0..n).contains(&x) {
        return Err(Error::Domain(format!("ψ_{n_k} needs 0 ≤ x < n_k, got x = {x}")));
    }
    let d = n - x;
    Ok((p.c4 * x + p.c1) / d + 2.0 * p.m * x * n.ln() / d - p.tau * n / d)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsiWindow {
    pub n_k: usize,
    pub l_k: usize,
    pub psi_0: f64,
    pub psi_l: f64,
    /// `values[ν] < 1/R_m` on `[n_k − l_k, n_k]`.
    pub agreement: bool,
    /// Indices in the window flagged as no data.
    pub unverified: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum AnchorResult {
    Found(PsiWindow),
    Skipped { n_k: usize, reason: String },
}

impl AnchorResult {
    pub fn found(&self) -> Option<&PsiWindow> {
        match self {
            AnchorResult::Found(w) => Some(w),
            AnchorResult::Skipped { .. } => None,
        }
    }
}

/// `τ = −ln(max_k values[n_k]·R_m)`; `None` when that is not positive.
pub fn estimate_tau(p: &DecayProfile, anchors: &[usize], r_m: f64) -> Option<f64> {
    let worst = anchors.iter().filter(|&&n| n < p.len()).map(|&n| p.value(n) * r_m).fold(f64::MIN, f64::max);
    let tau = -worst.ln();
    (tau.is_finite() && tau > 0.0).then_some(tau)
}

fn search_one(p: &DecayProfile, n_k: usize, params: &PsiParams, r_m: f64) -> Result<AnchorResult> {
    let skip = |reason: String| Ok(AnchorResult::Skipped { n_k, reason });
    if n_k == 0 || n_k >= p.len() {
        return skip("anchor outside the profile".into());
    }
    let psi_0 = psi(n_k, 0.0, params)?;
    if psi_0 >= 0.0 {
        return skip(format!("ψ(0) = {psi_0:e} ≥ 0"));
    }
    if params.slope_sign(n_k) <= 0.0 {
        return skip("ψ is not increasing for these constants".into());
    }
    let below = |x: usize| psi(n_k, x as f64, params).map(|v| v < -params.tau / 2.0);
    // largest l in [0, n_k − 1] with ψ(l) < −τ/2
    let (mut lo, mut hi) = (0usize, n_k - 1);
    if !below(0)? {
        lo = 0;
        hi = 0;
    }
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if below(mid)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let l_k = lo;
    let psi_l = psi(n_k, l_k as f64, params)?;
    let bound = 1.0 / r_m;
    let mut unverified = 0;
    let mut agreement = true;
    for nu in n_k - l_k..=n_k {
        if p.no_data[nu] {
            unverified += 1;
        } else if p.value(nu) >= bound {
            agreement = false;
        }
    }
    Ok(AnchorResult::Found(PsiWindow { n_k, l_k, psi_0, psi_l, agreement, unverified }))
}

/// For each anchor, the largest `l_k` with `ψ_{n_k}(x) < −τ/2` on `(0, l_k]`,
/// checked against the profile.
pub fn psi_window_search(
    p: &DecayProfile,
    anchors: &[usize],
    params: &PsiParams,
    r_m: f64,
) -> Result<Vec<AnchorResult>> {
    params.validate()?;
    if !(r_m > 0.0) {
        return Err(Error::param("r_m", "must be positive"));
    }
    anchors.par_iter().map(|&n_k| search_one(p, n_k, params, r_m)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityRun {
    pub factor: f64,
    pub skipped: Option<String>,
    pub results: Vec<AnchorResult>,
}

/// Rerun the search with `C1, C4` scaled by ×10 and ×0.1.
pub fn psi_sensitivity(p: &DecayProfile, anchors: &[usize], params: &PsiParams, r_m: f64) -> Result<Vec<SensitivityRun>> {
    let mut out = Vec::new();
    for factor in [10.0, 0.1] {
        let scaled = PsiParams { c1: params.c1 * factor, c4: params.c4 * factor, ..*params };
        if scaled.c1 < 1.0 || scaled.c4 < 1.0 {
            out.push(SensitivityRun { factor, skipped: Some("scaled constant below 1".into()), results: Vec::new() });
            continue;
        }
        out.push(SensitivityRun { factor, skipped: None, results: psi_window_search(p, anchors, &scaled, r_m)? });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Radius;
    use proptest::prelude::*;

    const BASE: PsiParams = PsiParams { c1: 1.0, c4: 1.0, m: 1.0, tau: 0.5 };

    #[test]
    fn examples() {
        let p = PsiParams { m: 0.0, ..BASE };
        assert!((psi(100, 0.0, &p).unwrap() + 0.49).abs() < 1e-15);
        let p = PsiParams { c4: 2.0, ..BASE };
        assert!(psi(100, 10.0, &p).unwrap() > psi(100, 0.0, &p).unwrap());
        assert!(psi(100, 99.999_999, &BASE).unwrap() > 1e6);
        assert!(matches!(psi(100, 100.0, &BASE), Err(Error::Domain(_))));
        assert!(psi(100, 1.0, &PsiParams { c1: 0.5, ..BASE }).is_err());
    }

    /// Oracle: linear scan over x = 1, 2, ….
    fn scan_l(n_k: usize, p: &PsiParams) -> usize {
        let mut l = 0;
        for x in 1..n_k {
            if psi(n_k, x as f64, p).unwrap() < -p.tau / 2.0 {
                l = x;
            } else {
                break;
            }
        }
        l
    }

    #[test]
    fn search_matches_scan() {
        let profile = DecayProfile::from_values(&vec![(-0.5f64).exp(); 400], Radius::Known(1.0), 64);
        let anchors = [3, 50, 100, 199, 300];
        let res = psi_window_search(&profile, &anchors, &BASE, 1.0).unwrap();
        for (n_k, r) in anchors.iter().zip(&res) {
            match r {
                AnchorResult::Found(w) => {
                    assert_eq!(w.l_k, scan_l(*n_k, &BASE), "n_k = {n_k}");
                    assert!(w.agreement);
                }
                AnchorResult::Skipped { .. } => panic!("n_k = {n_k} skipped"),
            }
        }
        let w100 = res[2].found().unwrap();
        assert!(w100.l_k >= 1 && w100.psi_l < -0.25);
    }

    #[test]
    fn small_anchor_skipped() {
        let profile = DecayProfile::from_values(&[0.5; 10], Radius::Known(1.0), 64);
        let res = psi_window_search(&profile, &[2], &BASE, 1.0).unwrap();
        assert!(matches!(res[0], AnchorResult::Skipped { n_k: 2, .. }));
    }

    #[test]
    fn disagreement_is_reported() {
        let mut v = vec![0.5; 200];
        v[99] = 1.5;
        let profile = DecayProfile::from_values(&v, Radius::Known(1.0), 64);
        let res = psi_window_search(&profile, &[100], &BASE, 1.0).unwrap();
        assert!(!res[0].found().unwrap().agreement);
    }

    #[test]
    fn tau_and_sensitivity() {
        let profile = DecayProfile::from_values(&vec![(-0.5f64).exp(); 300], Radius::Known(1.0), 64);
        let tau = estimate_tau(&profile, &[100, 200], 1.0).unwrap();
        assert!((tau - 0.5).abs() < 1e-12);
        let runs = psi_sensitivity(&profile, &[100, 200], &BASE, 1.0).unwrap();
        assert_eq!(runs[0].factor, 10.0);
        assert!(runs[0].skipped.is_none());
        assert!(runs[1].skipped.is_some());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]
        #[test]
        fn psi_increasing(
            n in 16usize..100_000,
            c1 in 1.0f64..100.0,
            c4 in 1.0f64..100.0,
            m in 0.0f64..50.0,
            tau in 1e-6f64..1.0,
            a in 0.0f64..1.0,
            b in 0.0f64..1.0,
        ) {
            let p = PsiParams { c1, c4, m, tau };
            let nf = n as f64;
            let (x1, x2) = if a < b { (a * nf, b * nf) } else { (b * nf, a * nf) };
            prop_assume!(x2 - x1 > 1e-9 * nf);
            prop_assert!(psi(n, x2, &p).unwrap() > psi(n, x1, &p).unwrap());
        }
    }
}
