//! Overconvergence of window-end subsequences near a regular boundary point.

use serde::{Deserialize, Serialize};

use super::errors::sup_errors;
use super::exclusion::ExclusionSet;
use super::grid::{CompactGrid, Shape};
use crate::error::{Error, Result};
use crate::pade::PadeEntry;
use crate::sequence::Window;
use crate::series::PowerSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub density: (usize, usize),
    /// Terminal error a successful radius must reach.
    pub threshold: f64,
    pub prec: u32,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { density: (64, 64), threshold: 1e-6, prec: crate::series::hp::DEFAULT_PRECISION }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RadiusResult {
    pub r: f64,
    pub retained: usize,
    pub skipped: usize,
    /// Sup error per subsequence index.
    pub errors: Vec<f64>,
    pub decreasing: bool,
    pub terminal: Option<f64>,
    /// All errors vanish to rounding.
    pub exact: bool,
    pub success: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub z0: (f64, f64),
    /// Points with `|z|` below this were already inside the disk of convergence.
    pub boundary_radius: f64,
    pub subsequence: Vec<usize>,
    pub radii: Vec<RadiusResult>,
    pub largest_working_radius: Option<f64>,
    pub failure_radii: Vec<f64>,
    /// `min n_k'/n_k − 1` over the windows.
    pub alpha: Option<f64>,
    /// `δ₀` with `φ(R) < 1` on `(1/2, 1/2 + δ₀)`, in the proof's unit scale.
    pub delta0: Option<f64>,
}

/// `φ(R) = (1/(4R) + 1/2)^{1+α}·(R + 1/2)`.
pub fn phi(r: f64, alpha: f64) -> f64 {
    (0.25 / r + 0.5).powf(1.0 + alpha) * (r + 0.5)
}

/// Width of the interval right of `1/2` where `φ < 1`.
///
/// `φ(1/2) = 1` with slope `−α`, and `φ → ∞`, so the second root of
/// `φ = 1` is bracketed once `φ` exceeds 1.
pub fn delta0(alpha: f64) -> Option<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return None;
    }
    let mut hi = 1.0;
    while phi(hi, alpha) < 1.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return None;
        }
    }
    // the minimum of φ lies right of 1/2; start from it
    let mut lo = 0.5 + 1e-9;
    let mut t = lo;
    let mut best = phi(lo, alpha);
    let steps = 4096;
    for i in 1..steps {
        let x = 0.5 + (hi - 0.5) * i as f64 / steps as f64;
        let v = phi(x, alpha);
        if v < best {
            best = v;
            t = x;
        }
    }
    if best >= 1.0 {
        return None;
    }
    lo = t;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi(mid, alpha) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi) - 0.5)
}

fn is_declared_regular(f: &PowerSeries, z0: (f64, f64)) -> bool {
    let tol = 1e-9 * (1.0 + z0.0.hypot(z0.1));
    f.meta().regular_points.iter().any(|p| (p.0 - z0.0).hypot(p.1 - z0.1) <= tol)
}

/// Sup error of `{π_{n_k'}}` on disks about `z0` outside `|z| < |z0|` and `Ω(ε)`.
pub fn overconvergence_scan(
    f: &PowerSeries,
    entries: &[PadeEntry],
    windows: &[Window],
    z0: (f64, f64),
    radii: &[f64],
    excl: &ExclusionSet,
    cfg: &ScanConfig,
) -> Result<ScanReport> {
    if !is_declared_regular(f, z0) {
        return Err(Error::Capability(format!("({}, {}) is not a declared regular point of `{}`", z0.0, z0.1, f.name())));
    }
    if f.reference().is_none() {
        return Err(Error::Capability(format!("series `{}` has no reference evaluator", f.name())));
    }
    if windows.is_empty() {
        return Err(Error::param("windows", "at least one window is required"));
    }
    if radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::param("radii", "must be positive"));
    }
    let mut subsequence: Vec<usize> = windows.iter().map(|w| w.n_hi).filter(|&n| n < entries.len()).collect();
    subsequence.sort_unstable();
    subsequence.dedup();
    let picked: Vec<&PadeEntry> = subsequence.iter().map(|&n| &entries[n]).collect();
    let boundary = z0.0.hypot(z0.1);

    let mut results = Vec::new();
    for &r in radii {
        let mut g = CompactGrid::build(Shape::Disk { center: z0, radius: r }, cfg.density, None, cfg.prec)?;
        g.apply_exclusion(excl);
        g.exclude_where(|z| z.abs().to_f64() < boundary);
        let points = g.retained();
        if points.is_empty() || picked.is_empty() {
            results.push(RadiusResult {
                r,
                retained: 0,
                skipped: 0,
                errors: Vec::new(),
                decreasing: false,
                terminal: None,
                exact: false,
                success: false,
            });
            continue;
        }
        let (sup, skipped) = match sup_errors(f, &picked, &points) {
            Ok(v) => v,
            Err(Error::Grid(_)) => (Vec::new(), points.len()),
            Err(e) => return Err(e),
        };
        let errors: Vec<f64> = sup.iter().map(|s| s.to_f64()).collect();
        let exact = !errors.is_empty() && errors.iter().all(|e| *e == 0.0);
        let decreasing = !errors.is_empty() && errors.windows(2).all(|w| w[1] < w[0]);
        let terminal = errors.last().copied();
        let success = exact || (decreasing && terminal.is_some_and(|t| t < cfg.threshold));
        results.push(RadiusResult { r, retained: points.len() - skipped, skipped, errors, decreasing, terminal, exact, success });
    }

    let largest = results.iter().filter(|x| x.success).map(|x| x.r).fold(None, |a: Option<f64>, r| Some(a.map_or(r, |a| a.max(r))));
    let failure_radii = results.iter().filter(|x| !x.success).map(|x| x.r).collect();
    let alpha = windows
        .iter()
        .filter(|w| w.n_lo > 0)
        .map(|w| w.n_hi as f64 / w.n_lo as f64)
        .fold(None, |a: Option<f64>, x| Some(a.map_or(x, |a| a.min(x))))
        .map(|x| x - 1.0);
    Ok(ScanReport {
        z0,
        boundary_radius: boundary,
        subsequence,
        radii: results,
        largest_working_radius: largest,
        failure_radii,
        alpha,
        delta0: alpha.and_then(delta0),
    })
}
