//! Attraction of free poles to the true poles.

use serde::Serialize;

use super::errors::{fit_rate, trailing_half};
use crate::pade::{NormalizedDenominator, PadeEntry};
use crate::series::HpComplex;

#[derive(Debug, Clone, Serialize)]
pub struct PoleDistance {
    pub n: usize,
    pub mu: usize,
    /// Max over true poles of the distance to the nearest free pole;
    /// `None` on a deficit.
    pub distance: Option<f64>,
    /// True poles left without a free pole (`μ_n` too small).
    pub deficit: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProximityReport {
    pub distances: Vec<PoleDistance>,
    /// Geometric rate of the distances over the trailing half.
    pub fitted_rate: Option<f64>,
}

impl ProximityReport {
    /// Smallest `C` with `d_n ≤ C·base^n` for every `n ≥ 1` with a distance.
    pub fn bound_constant(&self, base: f64) -> Option<f64> {
        self.distances
            .iter()
            .filter(|d| d.n >= 1)
            .filter_map(|d| d.distance.map(|x| x / base.powi(d.n as i32)))
            .fold(None, |a: Option<f64>, c| Some(a.map_or(c, |a| a.max(c))))
    }
}

pub fn pole_proximity(entries: &[PadeEntry], norms: &[NormalizedDenominator], true_poles: &[(f64, f64)]) -> ProximityReport {
    let mut distances = Vec::new();
    if true_poles.is_empty() {
        return ProximityReport { distances, fitted_rate: None };
    }
    for (e, nd) in entries.iter().zip(norms) {
        let mu = nd.mu();
        let deficit = true_poles.len().saturating_sub(mu);
        let distance = (deficit == 0).then(|| {
            true_poles
                .iter()
                .map(|&(x, y)| {
                    let p = HpComplex::from_f64(nd.prec(), x, y);
                    nd.roots().map(|w| w.dist(&p).to_f64()).fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max)
        });
        distances.push(PoleDistance { n: e.n, mu, distance, deficit });
    }
    let samples: Vec<(usize, f64)> =
        distances.iter().filter(|d| d.n >= 1).filter_map(|d| d.distance.map(|x| (d.n, x))).collect();
    let fitted_rate = fit_rate(&trailing_half(&samples));
    ProximityReport { distances, fitted_rate }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::Ray;
    use crate::series::catalog::{catalog_make, CatalogSpec};
    use crate::series::Provenance;

    fn row(spec: CatalogSpec, h: usize) -> Ray {
        let f = catalog_make(&spec).unwrap();
        let m: Vec<usize> = (0..=h).map(|n| 1.min(n)).collect();
        Ray::compute(&f, &m, 2.0, Provenance::Declared, 256).unwrap()
    }

    #[test]
    fn geometric_pole_is_exact() {
        let ray = row(CatalogSpec::geometric(), 10);
        let rep = pole_proximity(&ray.entries, &ray.norms, &[(1.0, 0.0)]);
        assert_eq!(rep.distances[0].deficit, 1);
        assert!(rep.distances[1..].iter().all(|d| d.distance.unwrap() < 1e-60));
    }

    #[test]
    fn free_pole_attracted_at_rate_half() {
        let ray = row(CatalogSpec::rational(&["1", "2"], &["1", "1"]), 40);
        let rep = pole_proximity(&ray.entries, &ray.norms, &[(1.0, 0.0)]);
        // oracle: ζ_n = f_n/f_{n+1} with f_n = 1 + 2^{-n-1}, so ζ_n − 1 = t/(1 + t), t = 2^{-n-2}
        for d in &rep.distances[1..] {
            let t = 0.5f64.powi(d.n as i32 + 2);
            let gap = t / (1.0 + t);
            assert!((d.distance.unwrap() - gap).abs() < 1e-12 * gap, "n = {}", d.n);
        }
        let rate = rep.fitted_rate.unwrap();
        assert!((rate - 0.5).abs() < 0.01, "{rate}");
        let c = rep.bound_constant(0.55).unwrap();
        assert!(rep.distances[1..].iter().all(|d| d.distance.unwrap() <= c * 0.55f64.powi(d.n as i32) * (1.0 + 1e-12)));
    }

    #[test]
    fn exp_has_no_true_poles() {
        let ray = row(CatalogSpec::Exp, 6);
        let rep = pole_proximity(&ray.entries, &ray.norms, &[]);
        assert!(rep.distances.is_empty() && rep.fitted_rate.is_none());
    }
}
