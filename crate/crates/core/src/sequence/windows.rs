//! Window detectors: coefficient gaps, decay runs and stationary runs.
//!
//! Gap and stationary windows are half-open `(n_lo, n_hi]`; decay and ψ
//! windows are closed `[n_lo, n_hi]`.

use serde::Serialize;

use super::profile::DecayProfile;
use crate::error::{Error, Result};
use crate::pade::PadeEntry;
use crate::series::hp::rational_abs_root;
use crate::series::PowerSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowKind {
    CoeffGap,
    Decay,
    Stationary,
    Psi,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Window {
    pub n_lo: usize,
    pub n_hi: usize,
    pub kind: WindowKind,
    /// `n_lo / n_hi`.
    pub ratio: f64,
}

impl Window {
    pub fn new(n_lo: usize, n_hi: usize, kind: WindowKind) -> Self {
        debug_assert!(n_lo < n_hi);
        Window { n_lo, n_hi, kind, ratio: n_lo as f64 / n_hi as f64 }
    }

    /// Indices covered by the window.
    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        match self.kind {
            WindowKind::CoeffGap | WindowKind::Stationary => self.n_lo + 1..=self.n_hi,
            WindowKind::Decay | WindowKind::Psi => self.n_lo..=self.n_hi,
        }
    }
}

/// Finite-horizon reading of the two window hypotheses.
///
/// Case (a) (`ratio → 0`) is read as: ratios over the trailing half of the
/// windows are non-increasing and the last one is below `A_THRESHOLD`.
/// Case (b) (`limsup ratio < 1`) is read as: the trailing-half maximum is at
/// most `1 − min_ratio_gap`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub windows: usize,
    pub ratio_min: f64,
    pub ratio_tail_max: f64,
    pub ratio_last: f64,
    pub case_a: bool,
    pub case_b: bool,
    /// `max |f_n|^{1/n}` over gap indices, for the gap hypothesis.
    pub profile_limsup: Option<f64>,
    /// `1/R_0` the profile limsup is compared against.
    pub profile_bound: Option<f64>,
}

pub const A_THRESHOLD: f64 = 0.1;

pub fn classify(windows: &[Window], min_ratio_gap: f64) -> CaseReport {
    if windows.is_empty() {
        return CaseReport {
            windows: 0,
            ratio_min: f64::NAN,
            ratio_tail_max: f64::NAN,
            ratio_last: f64::NAN,
            case_a: false,
            case_b: false,
            profile_limsup: None,
            profile_bound: None,
        };
    }
    let ratios: Vec<f64> = windows.iter().map(|w| w.ratio).collect();
    let tail = &ratios[ratios.len() / 2..];
    let tail_max = tail.iter().copied().fold(f64::MIN, f64::max);
    let last = *ratios.last().unwrap();
    CaseReport {
        windows: windows.len(),
        ratio_min: ratios.iter().copied().fold(f64::MAX, f64::min),
        ratio_tail_max: tail_max,
        ratio_last: last,
        case_a: tail.windows(2).all(|w| w[1] <= w[0]) && last < A_THRESHOLD,
        case_b: tail_max <= 1.0 - min_ratio_gap,
        profile_limsup: None,
        profile_bound: None,
    }
}

/// Maximal runs of exactly-zero Taylor coefficients `f_n`, `1 ≤ n ≤ horizon`,
/// opened by a nonzero `f_{n_lo}` and closed before the horizon.
pub fn detect_coeff_gaps(f: &PowerSeries, horizon: usize) -> Result<Vec<Window>> {
    if horizon < 4 {
        return Err(Error::param("horizon", "must be at least 4"));
    }
    let c = f.coeffs(horizon + 1);
    let mut out = Vec::new();
    let mut n = 1;
    while n <= horizon {
        if c[n] == 0 {
            let start = n;
            while n <= horizon && c[n] == 0 {
                n += 1;
            }
            if c[start - 1] != 0 && n <= horizon {
                out.push(Window::new(start - 1, n - 1, WindowKind::CoeffGap));
            }
        } else {
            n += 1;
        }
    }
    Ok(out)
}

/// Gap windows classified, with the profile condition on gap indices
/// checked against `1/r0`.
pub fn gap_cases(f: &PowerSeries, windows: &[Window], r0: Option<f64>, min_ratio_gap: f64, prec: u32) -> CaseReport {
    let mut rep = classify(windows, min_ratio_gap);
    if !windows.is_empty() {
        let limsup = windows
            .iter()
            .flat_map(|w| w.indices())
            .map(|n| rational_abs_root(prec, &f.coeff(n), n as u64).to_f64())
            .fold(0.0, f64::max);
        rep.profile_limsup = Some(limsup);
        rep.profile_bound = r0.map(|r| 1.0 / r);
    }
    rep
}

/// Runs of `values[n] ≤ (1 − margin)·baseline`, merged across gaps of
/// fewer than three indices and kept when `n_lo/n_hi ≤ 1 − min_ratio_gap`.
/// Indices flagged as no data never count as decay.
pub fn detect_decay_windows(p: &DecayProfile, margin: f64, min_ratio_gap: f64) -> Vec<Window> {
    let Some(base) = p.baseline() else { return Vec::new() };
    let cut = (1.0 - margin) * base;
    let hit: Vec<bool> = (0..p.len()).map(|n| !p.no_data[n] && p.value(n) <= cut).collect();

    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut n = 0;
    while n < hit.len() {
        if hit[n] {
            let start = n;
            while n < hit.len() && hit[n] {
                n += 1;
            }
            match runs.last_mut() {
                Some(last) if start - last.1 <= 3 => last.1 = n - 1,
                _ => runs.push((start, n - 1)),
            }
        } else {
            n += 1;
        }
    }
    runs.into_iter()
        .filter(|(lo, hi)| lo < hi)
        .map(|(lo, hi)| Window::new(lo, hi, WindowKind::Decay))
        .filter(|w| w.ratio <= 1.0 - min_ratio_gap)
        .collect()
}

/// Maximal runs of consecutive entries with the same reduced fraction.
/// Entries must be ordered by `n` along one schedule.
pub fn detect_stationary_runs(entries: &[PadeEntry]) -> Vec<Window> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < entries.len() {
        let mut j = i;
        while j + 1 < entries.len() && entries[j + 1].same_fraction(&entries[i]) {
            j += 1;
        }
        if j > i {
            out.push(Window::new(entries[i].n, entries[j].n, WindowKind::Stationary));
        }
        i = j + 1;
    }
    out
}

/// Post-hoc exact check that gap windows hold only zero coefficients.
pub fn verify_coeff_gaps(f: &PowerSeries, windows: &[Window]) -> bool {
    windows.iter().all(|w| w.indices().all(|n| f.coeff(n) == 0))
}

/// Post-hoc exact check that stationary runs hold one reduced fraction.
pub fn verify_stationary(entries: &[PadeEntry], windows: &[Window]) -> bool {
    windows.iter().all(|w| {
        let anchor = entries.iter().find(|e| e.n == w.n_lo);
        anchor.is_some_and(|a| w.indices().all(|n| entries.iter().any(|e| e.n == n && e.same_fraction(a))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::pade;
    use crate::sequence::profile::decay_profile;
    use crate::series::catalog::{catalog_make, CatalogSpec, GapMask};
    use crate::series::{Provenance, Radius};

    fn taylor(f: &PowerSeries, h: usize) -> Vec<PadeEntry> {
        (0..=h).map(|n| pade(f, n, 0).unwrap()).collect()
    }

    /// Zeros of `Σ_j (z²(1−z))^{2^j}`: between degree `3M` of one power
    /// and degree `4M` of the next, `M = 2^j`.
    fn lacunary_oracle(h: usize) -> Vec<(usize, usize)> {
        (1..).map(|j| 1usize << j).take_while(|m| 4 * m - 1 <= h).map(|m| (3 * m, 4 * m - 1)).collect()
    }

    #[test]
    fn lacunary_gaps() {
        let f = catalog_make(&CatalogSpec::lemniscate_example()).unwrap();
        let w = detect_coeff_gaps(&f, 64).unwrap();
        let got: Vec<_> = w.iter().map(|w| (w.n_lo, w.n_hi)).collect();
        assert_eq!(got, lacunary_oracle(64));
        assert!(verify_coeff_gaps(&f, &w));
        assert!((w.last().unwrap().ratio - 0.75).abs() < 0.015);
        let cases = gap_cases(&f, &w, Some(0.7549), 0.1, 64);
        assert!(cases.case_b && !cases.case_a);
        assert_eq!(cases.profile_limsup, Some(0.0));
    }

    #[test]
    fn no_gaps_in_geometric() {
        let g = catalog_make(&CatalogSpec::geometric()).unwrap();
        assert!(detect_coeff_gaps(&g, 40).unwrap().is_empty());
        assert!(detect_coeff_gaps(&g, 3).is_err());
    }

    #[test]
    fn dyadic_mask_ratios_tend_to_half() {
        let f = catalog_make(&CatalogSpec::TaylorGap { radius: "1".into(), mask: GapMask::DyadicAlternating { parity: 0 } })
            .unwrap();
        let w = detect_coeff_gaps(&f, 600).unwrap();
        assert!(w.len() >= 3);
        assert!(verify_coeff_gaps(&f, &w));
        assert!((w.last().unwrap().ratio - 0.5).abs() < 0.01, "{w:?}");
    }

    #[test]
    fn synthetic_decay_window() {
        let mut v = vec![1.0; 40];
        for x in &mut v[10..=20] {
            *x = 0.5;
        }
        let p = DecayProfile::from_values(&v, Radius::Known(1.0), 64);
        let w = detect_decay_windows(&p, 0.2, 0.1);
        assert_eq!(w, vec![Window::new(10, 20, WindowKind::Decay)]);
        assert_eq!(w[0].ratio, 0.5);

        let flat = DecayProfile::from_values(&[1.0; 40], Radius::Known(1.0), 64);
        assert!(detect_decay_windows(&flat, 0.2, 0.1).is_empty());
    }

    #[test]
    fn decay_runs_merge_across_short_breaks() {
        let mut v = vec![1.0; 60];
        for n in (20..=30).chain(33..=40) {
            v[n] = 0.1;
        }
        let p = DecayProfile::from_values(&v, Radius::Known(1.0), 64);
        assert_eq!(detect_decay_windows(&p, 0.2, 0.1), vec![Window::new(20, 40, WindowKind::Decay)]);
    }

    #[test]
    fn lacunary_decay_matches_gaps() {
        let f = catalog_make(&CatalogSpec::lemniscate_example()).unwrap();
        let entries = taylor(&f, 64);
        let p = decay_profile(&entries, None, f.meta().r0, Provenance::Declared, 128);
        let decay = detect_decay_windows(&p, 0.3, 0.1);
        let gaps = detect_coeff_gaps(&f, 64).unwrap();
        let multi: Vec<_> = gaps.iter().filter(|g| g.n_hi - g.n_lo > 1).collect();
        assert_eq!(decay.len(), multi.len());
        for (d, g) in decay.iter().zip(multi) {
            assert_eq!(d.indices(), g.indices());
        }
    }

    #[test]
    fn stationary_runs() {
        let g = catalog_make(&CatalogSpec::geometric()).unwrap();
        let entries: Vec<_> = (0..=12).map(|n| pade(&g, n, 1.min(n)).unwrap()).collect();
        let w = detect_stationary_runs(&entries);
        assert_eq!(w, vec![Window::new(1, 12, WindowKind::Stationary)]);
        assert!(verify_stationary(&entries, &w));

        let e = catalog_make(&CatalogSpec::Exp).unwrap();
        let entries: Vec<_> = (0..=12).map(|n| pade(&e, n, 1.min(n)).unwrap()).collect();
        assert!(detect_stationary_runs(&entries).is_empty());

        let f = catalog_make(&CatalogSpec::lemniscate_example()).unwrap();
        let entries = taylor(&f, 64);
        let w = detect_stationary_runs(&entries);
        let got: Vec<_> = w.iter().map(|w| (w.n_lo, w.n_hi)).collect();
        // S_0 = S_1 = 0 before the first nonzero coefficient
        let mut expect = vec![(0, 1)];
        expect.extend(lacunary_oracle(64));
        assert_eq!(got, expect);
        assert!(verify_stationary(&entries, &w));
    }

    #[test]
    fn classification() {
        let shrinking: Vec<_> = [(1, 4), (2, 20), (3, 100), (4, 1000)]
            .iter()
            .map(|&(a, b)| Window::new(a, b, WindowKind::CoeffGap))
            .collect();
        let r = classify(&shrinking, 0.1);
        assert!(r.case_a && r.case_b);
        assert!(!classify(&[], 0.1).case_b);
    }
}
