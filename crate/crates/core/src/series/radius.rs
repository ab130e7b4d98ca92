//! Radius estimation from coefficients alone.
//!
//! `limsup` is approximated by the maximum over the trailing window
//! `[N/2, N]`.

use rug::Float;
use serde::Serialize;

use super::hp::{abs_root, rational_abs_root};
use super::power_series::{PowerSeries, Radius};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadiusMethod {
    CauchyHadamard,
    HankelRatio,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RadiusValue {
    Finite(Float),
    Infinite,
}

impl RadiusValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            RadiusValue::Finite(r) => r.to_f64(),
            RadiusValue::Infinite => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RadiusEstimate {
    pub value: RadiusValue,
    /// Inclusive index window used for the limsup surrogate.
    pub window: (usize, usize),
    pub method: RadiusMethod,
    /// `(n, sample)` root-magnitude samples over the window.
    pub diagnostics: Vec<(usize, f64)>,
    /// All determinants of the denominator order vanished on the window.
    pub degenerate: bool,
}

pub fn trailing_window(n: usize) -> (usize, usize) {
    ((n / 2).max(1), n)
}

/// `1 / max_{n∈[N/2,N]} |f_n|^{1/n}`.
pub fn estimate_r0(f: &PowerSeries, n: usize, prec: u32) -> RadiusEstimate {
    assert!(n >= 16, "estimate_r0 needs N ≥ 16");
    let window = trailing_window(n);
    let c = f.coeffs(n + 1);
    let mut best = Float::new(prec);
    let mut diagnostics = Vec::new();
    for k in window.0..=window.1 {
        let s = rational_abs_root(prec, &c[k], k as u64);
        diagnostics.push((k, s.to_f64()));
        if s > best {
            best = s;
        }
    }
    let value = if best.is_zero() { RadiusValue::Infinite } else { RadiusValue::Finite(Float::with_val(prec, 1 / &best)) };
    RadiusEstimate { value, window, method: RadiusMethod::CauchyHadamard, diagnostics, degenerate: false }
}

/// Hankel determinant `H_k(n) = det(f_{n+i+j})_{0≤i,j<k}`.
pub fn hankel(f: &PowerSeries, k: usize, n: usize) -> rug::Rational {
    let c = f.coeffs(n + 2 * k.max(1));
    let m: Vec<Vec<_>> = (0..k).map(|i| (0..k).map(|j| c[n + i + j].clone()).collect()).collect();
    linalg::det(&m)
}

/// Windowed `limsup |H_k(n)|^{1/n}` together with its samples.
fn hankel_root_max(f: &PowerSeries, k: usize, window: (usize, usize), prec: u32) -> (Float, Vec<(usize, f64)>) {
    if k == 0 {
        return (Float::with_val(prec, 1), Vec::new());
    }
    let mut best = Float::new(prec);
    let mut samples = Vec::new();
    for n in window.0..=window.1 {
        let h = hankel(f, k, n);
        let s = abs_root(&Float::with_val(prec, &h), n as u64);
        samples.push((n, s.to_f64()));
        if s > best {
            best = s;
        }
    }
    (best, samples)
}

/// Radius of m-meromorphy by the Hankel-ratio method, `L_m / L_{m+1}`.
pub fn estimate_rm(f: &PowerSeries, m: usize, n: usize, prec: u32) -> RadiusEstimate {
    let window = trailing_window(n);
    let (lm, _) = hankel_root_max(f, m, window, prec);
    let (lm1, diagnostics) = hankel_root_max(f, m + 1, window, prec);
    let degenerate = lm1.is_zero();
    let value = if degenerate || lm.is_zero() {
        RadiusValue::Infinite
    } else {
        RadiusValue::Finite(Float::with_val(prec, &lm / &lm1))
    };
    RadiusEstimate { value, window, method: RadiusMethod::HankelRatio, diagnostics, degenerate: degenerate || lm.is_zero() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Declared,
    Estimated,
}

/// R(f) from the declared meta when known, otherwise the largest finite
/// Hankel estimate over `m ≤ m_max`.
pub fn resolve_r_meromorphy(f: &PowerSeries, m_max: usize, n: usize, prec: u32) -> (Radius, Provenance) {
    match f.meta().r_meromorphy {
        Radius::Unknown => {
            let mut best: Option<f64> = None;
            let mut all_infinite = true;
            for m in 0..=m_max {
                let e = estimate_rm(f, m, n, prec);
                match e.value {
                    RadiusValue::Finite(r) => {
                        all_infinite = false;
                        let r = r.to_f64();
                        best = Some(best.map_or(r, |b| b.max(r)));
                    }
                    RadiusValue::Infinite => {}
                }
            }
            let r = match best {
                Some(r) => Radius::Known(r),
                None if all_infinite => Radius::Infinite,
                None => Radius::Unknown,
            };
            (r, Provenance::Estimated)
        }
        declared => (declared, Provenance::Declared),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::catalog::{catalog_make, CatalogSpec};

    #[test]
    fn r0_examples() {
        let g = catalog_make(&CatalogSpec::geometric()).unwrap();
        assert!((estimate_r0(&g, 64, 256).value.to_f64() - 1.0).abs() < 1e-6);
        let third = catalog_make(&CatalogSpec::rational(&["3"], &["3"])).unwrap();
        assert!((estimate_r0(&third, 64, 256).value.to_f64() - 3.0).abs() < 1e-6);
        let zero = PowerSeries::from_coeffs("poly", vec![rug::Rational::from(1); 3]);
        assert_eq!(estimate_r0(&zero, 32, 128).value, RadiusValue::Infinite);
    }

    #[test]
    fn r0_lacunary_matches_brute_force() {
        let f = catalog_make(&CatalogSpec::lemniscate_example()).unwrap();
        let est = estimate_r0(&f, 256, 256).value.to_f64();
        // brute force in f64 over the same window
        let best = (128..=256)
            .map(|n| {
                let c = f.coeff(n).to_f64().abs();
                if c == 0.0 {
                    0.0
                } else {
                    c.powf(1.0 / n as f64)
                }
            })
            .fold(0.0, f64::max);
        assert!(est > 0.0 && est < 1.0);
        assert!((est - 1.0 / best).abs() < 1e-9);
    }

    #[test]
    fn rm_examples() {
        let f = catalog_make(&CatalogSpec::rational(&["1", "2"], &["1", "1"])).unwrap();
        assert!((estimate_rm(&f, 0, 64, 256).value.to_f64() - 1.0).abs() < 5e-2);
        assert!((estimate_rm(&f, 1, 64, 256).value.to_f64() - 2.0).abs() < 1e-1);
        let g = catalog_make(&CatalogSpec::geometric()).unwrap();
        let e = estimate_rm(&g, 1, 32, 256);
        assert_eq!(e.value, RadiusValue::Infinite);
        assert!(e.degenerate);
    }

    #[test]
    fn hankel_vanishes_beyond_rational_type() {
        // type (3, 2): 1/(1−z) + 1/(2−z) + (1 − z); vanishing from n > 3 − 2
        let f = catalog_make(&CatalogSpec::Rational {
            poles: vec!["1".into(), "2".into()],
            residues: vec!["1".into(), "1".into()],
            polynomial: vec!["1".into(), "-1".into()],
        })
        .unwrap();
        assert_ne!(hankel(&f, 3, 1), 0);
        for n in 2..20 {
            assert_eq!(hankel(&f, 3, n), 0, "H_3({n})");
            assert_eq!(hankel(&f, 4, n), 0, "H_4({n})");
        }
        assert_ne!(hankel(&f, 2, 5), 0);
    }
}
