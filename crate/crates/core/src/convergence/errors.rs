//! Sup-norm error grids and geometric rate fits.

use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use super::exclusion::ExclusionSet;
use super::grid::CompactGrid;
use crate::error::{Error, Result};
use crate::pade::PadeEntry;
use crate::series::hp::two_pow_neg;
use crate::series::{HpComplex, PowerSeries, Provenance};

/// Fewest retained points a grid may evaluate on.
pub const MIN_RETAINED: usize = 50;

/// Errors at most `2^{16−prec}·(1 + |f(z)|)` are rounding noise and count as 0.
pub fn rounding_floor(prec: u32, fz: &HpComplex) -> Float {
    two_pow_neg(prec, prec as i32 - 16) * Float::with_val(prec, 1 + fz.abs())
}

/// Per-index sup errors of `entries` over `points`, plus the count of
/// points the reference evaluator rejected.
pub fn sup_errors(f: &PowerSeries, entries: &[&PadeEntry], points: &[&HpComplex]) -> Result<(Vec<Float>, usize)> {
    let per_point: Vec<Option<Vec<Float>>> = points
        .par_iter()
        .map(|z| match f.reference_eval(z) {
            Ok(fz) => {
                let floor = rounding_floor(z.prec(), &fz);
                let errs = entries
                    .iter()
                    .map(|e| {
                        let d = (&fz - &e.eval(z)).abs();
                        if d <= floor {
                            Float::new(z.prec())
                        } else {
                            d
                        }
                    })
                    .collect();
                Ok(Some(errs))
            }
            Err(Error::Domain(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let prec = points.first().map_or(64, |z| z.prec());
    let mut sup = vec![Float::new(prec); entries.len()];
    let mut skipped = 0;
    for errs in &per_point {
        match errs {
            None => skipped += 1,
            Some(v) => {
                for (s, e) in sup.iter_mut().zip(v) {
                    if *e > *s {
                        *s = e.clone();
                    }
                }
            }
        }
    }
    if skipped == points.len() {
        return Err(Error::Grid("every grid point was rejected by the reference evaluator".into()));
    }
    Ok((sup, skipped))
}

/// Least-squares slope of `ln y` against `x`, exponentiated.
pub fn fit_rate(samples: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        samples.iter().filter(|(_, y)| *y > 0.0 && y.is_finite()).map(|&(x, y)| (x as f64, y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| (sxy / sxx).exp())
}

/// Trailing half `[N/2, N]` of a sample list indexed by `n`.
pub fn trailing_half(samples: &[(usize, f64)]) -> Vec<(usize, f64)> {
    let Some(&(last, _)) = samples.last() else { return Vec::new() };
    samples.iter().copied().filter(|(n, _)| *n >= last / 2).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// All errors for `n ≥ 1` vanish to rounding.
    Exact,
    Pass,
    Fail,
    /// Too few positive errors to fit a slope.
    NoFit,
}

#[derive(Debug, Clone, Serialize)]
pub struct NError {
    pub n: usize,
    pub m: usize,
    pub sup_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub errors: Vec<NError>,
    pub retained: usize,
    pub excluded: usize,
    pub skipped: usize,
    pub fit_window: (usize, usize),
    pub fitted_rate: Option<f64>,
    pub theory_rate: f64,
    pub max_modulus: f64,
    pub r_used: f64,
    pub provenance: Provenance,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl ConvergenceReport {
    pub fn samples(&self) -> Vec<(usize, f64)> {
        self.errors.iter().map(|e| (e.n, e.sup_error)).collect()
    }
}

/// `sup_K |f − π_n|` for every entry, with a geometric fit over the
/// trailing half compared against `max_K |z| / R`.
pub fn grid_errors(
    f: &PowerSeries,
    entries: &[PadeEntry],
    grid: &CompactGrid,
    excl: &ExclusionSet,
    r: f64,
    provenance: Provenance,
    tolerance: f64,
) -> Result<ConvergenceReport> {
    if f.reference().is_none() {
        return Err(Error::Capability(format!("series `{}` has no reference evaluator", f.name())));
    }
    if !(r > 0.0) {
        return Err(Error::param("R", "must be positive"));
    }
    let mut g = grid.clone();
    g.apply_exclusion(excl);
    let points = g.retained();
    if points.len() < MIN_RETAINED {
        return Err(Error::Grid(format!("{} retained points, need {MIN_RETAINED}", points.len())));
    }
    let refs: Vec<&PadeEntry> = entries.iter().collect();
    let (sup, skipped) = sup_errors(f, &refs, &points)?;
    let errors: Vec<NError> =
        entries.iter().zip(&sup).map(|(e, s)| NError { n: e.n, m: e.m, sup_error: s.to_f64() }).collect();
    let samples: Vec<(usize, f64)> = errors.iter().filter(|e| e.n >= 1).map(|e| (e.n, e.sup_error)).collect();
    let window = trailing_half(&samples);
    let fit_window = (window.first().map_or(0, |w| w.0), window.last().map_or(0, |w| w.0));
    let fitted = fit_rate(&window);
    let max_modulus = g.shape.max_modulus();
    let theory = max_modulus / r;
    let residual = fitted.map(|x| (x - theory).abs());
    let verdict = if samples.iter().all(|s| s.1 == 0.0) {
        Verdict::Exact
    } else {
        match residual {
            None => Verdict::NoFit,
            Some(d) if d <= tolerance => Verdict::Pass,
            Some(_) => Verdict::Fail,
        }
    };
    Ok(ConvergenceReport {
        errors,
        retained: points.len() - skipped,
        excluded: g.excluded.len(),
        skipped,
        fit_window,
        fitted_rate: fitted,
        theory_rate: theory,
        max_modulus,
        r_used: r,
        provenance,
        residual,
        tolerance,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::exclusion::omega_disks;
    use crate::convergence::grid::Shape;
    use crate::pade::Ray;
    use crate::series::catalog::{catalog_make, CatalogSpec};

    const P: u32 = 256;

    fn disk(radius: f64, d: usize) -> CompactGrid {
        disk2(radius, (d, d))
    }

    fn disk2(radius: f64, d: (usize, usize)) -> CompactGrid {
        CompactGrid::build(Shape::Disk { center: (0.0, 0.0), radius }, d, None, P).unwrap()
    }

    #[test]
    fn fit_recovers_geometric_rate() {
        let s: Vec<_> = (1..=40).map(|n| (n, 3.0 * 0.25f64.powi(n as i32))).collect();
        assert!((fit_rate(&trailing_half(&s)).unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(fit_rate(&[(1, 0.0), (2, 0.0)]), None);
    }

    #[test]
    fn geometric_row_is_exact() {
        let f = catalog_make(&CatalogSpec::geometric()).unwrap();
        let ray = Ray::compute(&f, &[0, 1, 1, 1, 1, 1], 1.0, Provenance::Declared, P).unwrap();
        let excl = omega_disks(&ray.entries, &ray.norms, 0.1).unwrap();
        let rep = grid_errors(&f, &ray.entries, &disk(1.5, 16), &excl, 1.0, Provenance::Declared, 0.05).unwrap();
        assert_eq!(rep.verdict, Verdict::Exact);
        assert!(rep.errors[1..].iter().all(|e| e.sup_error == 0.0));
    }

    #[test]
    fn montessus_rate() {
        let f = catalog_make(&CatalogSpec::rational(&["1", "2"], &["1", "1"])).unwrap();
        let m: Vec<usize> = (0..=40).map(|n| 1.min(n)).collect();
        let ray = Ray::compute(&f, &m, 2.0, Provenance::Declared, P).unwrap();
        let excl = omega_disks(&ray.entries, &ray.norms, 0.1).unwrap();
        let rep = grid_errors(&f, &ray.entries, &disk(0.5, 24), &excl, 2.0, Provenance::Declared, 0.05).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{:?}", rep.fitted_rate);
        assert!((rep.theory_rate - 0.25).abs() < 1e-15);
    }

    /// Nested grids: the finer one contains the coarser samples, so its sup
    /// can only grow, and by no more than a Lipschitz estimate over the cell.
    #[test]
    fn refinement_is_monotone() {
        let f = catalog_make(&CatalogSpec::log_branch("1")).unwrap();
        let m: Vec<usize> = (0..=12).map(|n| (n as f64).sqrt() as usize).collect();
        let ray = Ray::compute(&f, &m, 1.0, Provenance::Declared, P).unwrap();
        let excl = ExclusionSet::empty(0.1).unwrap();
        let coarse = grid_errors(&f, &ray.entries, &disk2(0.5, (9, 8)), &excl, 1.0, Provenance::Declared, 1.0).unwrap();
        let fine = grid_errors(&f, &ray.entries, &disk2(0.5, (17, 16)), &excl, 1.0, Provenance::Declared, 1.0).unwrap();
        let h = 0.5 * std::f64::consts::TAU / 8.0;
        for (c, d) in coarse.errors.iter().zip(&fine.errors) {
            assert!(d.sup_error >= c.sup_error);
            // |f − π_n| has Lipschitz constant ≲ (n+1)·sup on |z| ≤ 0.5 by Bernstein-type growth
            let lip = (c.n as f64 + 2.0) * c.sup_error.max(1e-300) / 0.5;
            assert!(d.sup_error <= c.sup_error + lip * h, "n = {}", c.n);
        }
    }

    #[test]
    fn errors_without_reference_or_points() {
        let plain = PowerSeries::from_fn("plain", |_| rug::Rational::from(1));
        let f = catalog_make(&CatalogSpec::geometric()).unwrap();
        let ray = Ray::compute(&f, &[0, 1], 1.0, Provenance::Declared, P).unwrap();
        let excl = ExclusionSet::empty(0.1).unwrap();
        assert!(matches!(
            grid_errors(&plain, &ray.entries, &disk(0.5, 16), &excl, 1.0, Provenance::Declared, 0.05),
            Err(Error::Capability(_))
        ));
        assert!(matches!(
            grid_errors(&f, &ray.entries, &disk(0.5, 4), &excl, 1.0, Provenance::Declared, 0.05),
            Err(Error::Grid(_))
        ));
    }
}
