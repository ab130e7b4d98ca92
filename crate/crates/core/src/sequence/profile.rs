//! Per-index decay profile `|a_n|^{1/n}` along a ray.

use rug::Float;

use crate::pade::{NormalizedDenominator, PadeEntry};
use crate::series::hp::abs_root;
use crate::series::{Provenance, Radius};

#[derive(Debug, Clone)]
pub struct DecayProfile {
    /// `|a_n|^{1/n}` indexed by `n`; `values[0]` is a placeholder.
    pub values: Vec<Float>,
    /// `a_n = 0` exactly.
    pub zero: Vec<bool>,
    /// Not usable as decay evidence: `n = 0` or a positive defect.
    pub no_data: Vec<bool>,
    pub radius: Radius,
    pub provenance: Provenance,
}

impl DecayProfile {
    /// Profile from plain numbers, used for synthetic runs.
    pub fn from_values(values: &[f64], radius: Radius, prec: u32) -> Self {
        let values: Vec<Float> = values.iter().map(|v| Float::with_val(prec, v.abs())).collect();
        let zero = values.iter().map(|v| v.is_zero()).collect();
        let mut no_data = vec![false; values.len()];
        if let Some(first) = no_data.first_mut() {
            *first = true;
        }
        DecayProfile { values, zero, no_data, radius, provenance: Provenance::Declared }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `1/R`, when `R` is finite and positive.
    pub fn baseline(&self) -> Option<f64> {
        self.radius.finite().filter(|r| *r > 0.0).map(|r| 1.0 / r)
    }

    pub fn value(&self, n: usize) -> f64 {
        self.values[n].to_f64()
    }
}

/// Profile of the coefficient of `z^n` in `P_n` (scaled by the
/// normalization factor when `norms` is given).
pub fn decay_profile(
    entries: &[PadeEntry],
    norms: Option<&[NormalizedDenominator]>,
    radius: Radius,
    provenance: Provenance,
    prec: u32,
) -> DecayProfile {
    let mut values = Vec::with_capacity(entries.len());
    let mut zero = Vec::with_capacity(entries.len());
    let mut no_data = Vec::with_capacity(entries.len());
    for (i, e) in entries.iter().enumerate() {
        let a = e.top_coefficient();
        let mut mag = Float::with_val(prec, &a).abs();
        if let Some(ns) = norms {
            mag *= ns[i].scale.abs();
        }
        zero.push(a == 0);
        no_data.push(e.n == 0 || e.defect > 0);
        values.push(if e.n == 0 { mag } else { abs_root(&mag, e.n as u64) });
    }
    DecayProfile { values, zero, no_data, radius, provenance }
}
