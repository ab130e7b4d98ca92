//! Exclusion disks `Ω(ε)` around the free poles.

use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pade::{NormalizedDenominator, PadeEntry};
use crate::series::HpComplex;

#[derive(Debug, Clone)]
pub struct Disk {
    pub n: usize,
    pub center: HpComplex,
    /// `ε / (6·μ_n·n²)`, exact.
    pub radius: Rational,
    radius_hp: Float,
}

#[derive(Debug, Clone)]
pub struct ExclusionSet {
    pub disks: Vec<Disk>,
    pub eps: Rational,
    /// Sum of the disk diameters, exact.
    pub sigma_bound: Rational,
    /// Largest `n` contributing disks; the union over larger `n` is not built.
    pub horizon: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExclusionSummary {
    pub disks: usize,
    pub eps: f64,
    pub sigma_bound: String,
    pub sigma_bound_f64: f64,
    pub horizon: usize,
    pub truncated: bool,
}

impl ExclusionSet {
    pub fn empty(eps: f64) -> Result<Self> {
        let eps = exact_eps(eps)?;
        Ok(ExclusionSet { disks: Vec::new(), eps, sigma_bound: Rational::new(), horizon: 0 })
    }

    pub fn contains(&self, z: &HpComplex) -> bool {
        self.disks.iter().any(|d| z.dist(&d.center) < d.radius_hp)
    }

    /// `Σ 2·radius` recomputed from the disk list.
    pub fn diameter_sum(&self) -> Rational {
        self.disks.iter().fold(Rational::new(), |acc, d| acc + Rational::from(2 * &d.radius))
    }

    pub fn summary(&self) -> ExclusionSummary {
        ExclusionSummary {
            disks: self.disks.len(),
            eps: self.eps.to_f64(),
            sigma_bound: format!("{}/{}", self.sigma_bound.numer(), self.sigma_bound.denom()),
            sigma_bound_f64: self.sigma_bound.to_f64(),
            horizon: self.horizon,
            truncated: true,
        }
    }
}

fn exact_eps(eps: f64) -> Result<Rational> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::param("eps", "must be finite and positive"));
    }
    Ok(Rational::from_f64(eps).expect("finite"))
}

/// Disks of radius `ε/(6μ_n n²)` about every root of `Q_n`, `n ≥ 1`.
pub fn omega_disks(entries: &[PadeEntry], norms: &[NormalizedDenominator], eps: f64) -> Result<ExclusionSet> {
    let eps_q = exact_eps(eps)?;
    if entries.len() != norms.len() {
        return Err(Error::param("norms", "one normalization per entry is required"));
    }
    let mut disks = Vec::new();
    let mut sigma = Rational::new();
    let mut horizon = 0;
    for (e, nd) in entries.iter().zip(norms) {
        let mu = nd.mu();
        if e.n == 0 || mu == 0 {
            continue;
        }
        let n2 = (e.n * e.n) as u64;
        let radius = Rational::from(&eps_q / Rational::from(6 * mu as u64 * n2));
        sigma += Rational::from(&eps_q / Rational::from(3 * n2));
        horizon = horizon.max(e.n);
        let radius_hp = Float::with_val(nd.prec(), &radius);
        disks.extend(nd.roots().map(|c| Disk {
            n: e.n,
            center: c.clone(),
            radius: radius.clone(),
            radius_hp: radius_hp.clone(),
        }));
    }
    Ok(ExclusionSet { disks, eps: eps_q, sigma_bound: sigma, horizon })
}

/// `sigma_bound ≤ ε·π²/18·(1 + slack)`, compared at `prec` bits.
pub fn within_basel_bound(set: &ExclusionSet, slack: f64, prec: u32) -> bool {
    let pi = crate::series::hp::pi(prec);
    let bound = Float::with_val(prec, &pi * &pi) * &set.eps / 18u32 * (1.0 + slack);
    Float::with_val(prec, &set.sigma_bound) <= bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::{normalize_denominator, pade};
    use crate::series::catalog::{catalog_make, CatalogSpec};
    use crate::series::Provenance;

    fn row(spec: &CatalogSpec, m: usize, h: usize) -> (Vec<PadeEntry>, Vec<NormalizedDenominator>) {
        let f = catalog_make(spec).unwrap();
        let entries: Vec<_> = (0..=h).map(|n| pade(&f, n, m.min(n)).unwrap()).collect();
        let norms = entries.iter().map(|e| normalize_denominator(e, 2.0, Provenance::Declared, 128).unwrap()).collect();
        (entries, norms)
    }

    #[test]
    fn single_disk_radius() {
        let (e, n) = row(&CatalogSpec::geometric(), 1, 1);
        let set = omega_disks(&e, &n, 0.6).unwrap();
        assert_eq!(set.disks.len(), 1);
        assert!((set.disks[0].radius.to_f64() - 0.1).abs() < 1e-15);
        assert!(set.contains(&HpComplex::from_f64(128, 1.05, 0.0)));
        assert!(!set.contains(&HpComplex::from_f64(128, 1.11, 0.0)));
    }

    #[test]
    fn sigma_bound_is_exact_sum() {
        let (e, n) = row(&CatalogSpec::rational(&["1", "2"], &["1", "1"]), 2, 30);
        let set = omega_disks(&e, &n, 0.1).unwrap();
        assert_eq!(set.sigma_bound, set.diameter_sum());
        // oracle: (ε/3)·Σ 1/n² over n with μ_n > 0
        let mut s = Rational::new();
        for (entry, nd) in e.iter().zip(&n) {
            if entry.n > 0 && nd.mu() > 0 {
                s += Rational::from((1, (entry.n * entry.n) as u64));
            }
        }
        assert_eq!(set.sigma_bound, s * Rational::from_f64(0.1).unwrap() / 3u32);
        assert!(set.sigma_bound < set.eps);
        assert!(within_basel_bound(&set, 1e-3, 128));
    }

    #[test]
    fn taylor_row_has_no_disks() {
        let (e, n) = row(&CatalogSpec::Exp, 0, 10);
        let set = omega_disks(&e, &n, 0.1).unwrap();
        assert!(set.disks.is_empty());
        assert_eq!(set.sigma_bound, 0);
        assert!(omega_disks(&e, &n, -1.0).is_err());
    }
}
