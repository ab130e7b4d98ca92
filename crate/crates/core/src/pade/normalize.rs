//! Denominator normalization `Q = Π(z − ζ*)·Π(1 − z/ζ̃)` with the split at
//! `|ζ| = 2R`.

use rug::Float;
use serde::Serialize;

use super::entry::PadeEntry;
use super::roots::aberth_ehrlich;
use crate::error::{Error, Result};
use crate::series::hp::{two_pow_neg, HpComplex};
use crate::series::radius::Provenance;

const ROOT_ITERATIONS: usize = 2000;

#[derive(Debug, Clone)]
pub struct NormalizedDenominator {
    /// Roots with `|ζ| < 2R`.
    pub inner_roots: Vec<HpComplex>,
    /// Roots with `|ζ| ≥ 2R`.
    pub outer_roots: Vec<HpComplex>,
    /// Indices into `outer_roots` of roots within `2^{-prec/4}` of the circle.
    pub boundary_flags: Vec<usize>,
    pub r_used: f64,
    pub provenance: Provenance,
    /// `max |Q(ζ)|` over the refined roots (with `Q(0) = 1`).
    pub residual: Float,
    /// `Π(−ζ*)`: the normalized form equals `scale · Q`.
    pub scale: HpComplex,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizationSummary {
    pub inner: usize,
    pub outer: usize,
    pub boundary_flags: usize,
    pub r_used: f64,
    pub provenance: Provenance,
    pub residual: f64,
}

impl NormalizedDenominator {
    pub fn mu(&self) -> usize {
        self.inner_roots.len() + self.outer_roots.len()
    }

    pub fn prec(&self) -> u32 {
        self.scale.prec()
    }

    pub fn roots(&self) -> impl Iterator<Item = &HpComplex> {
        self.inner_roots.iter().chain(self.outer_roots.iter())
    }

    /// Leading coefficient `Π(−1/ζ̃)` of the normalized form.
    pub fn lead(&self) -> HpComplex {
        let prec = self.prec();
        self.outer_roots.iter().fold(HpComplex::one(prec), |acc, r| &acc * &(-&r.recip()))
    }

    /// `Π(z − ζ*)·Π(1 − z/ζ̃)`.
    pub fn eval(&self, z: &HpComplex) -> HpComplex {
        let prec = self.prec();
        let one = HpComplex::one(prec);
        let mut acc = one.clone();
        for r in &self.inner_roots {
            acc = &acc * &(z - r);
        }
        for r in &self.outer_roots {
            acc = &acc * &(&one - &(z / r));
        }
        acc
    }

    pub fn summary(&self) -> NormalizationSummary {
        NormalizationSummary {
            inner: self.inner_roots.len(),
            outer: self.outer_roots.len(),
            boundary_flags: self.boundary_flags.len(),
            r_used: self.r_used,
            provenance: self.provenance,
            residual: self.residual.to_f64(),
        }
    }
}

/// Roots of `Q` split at `2R`.
pub fn normalize_denominator(e: &PadeEntry, r: f64, provenance: Provenance, prec: u32) -> Result<NormalizedDenominator> {
    if !(r > 0.0) {
        return Err(Error::param("R", format!("radius must be positive, got {r}")));
    }
    let coeffs = e.q.to_floats(prec);
    let rs = aberth_ehrlich(&coeffs, prec, ROOT_ITERATIONS)?;
    let two_r = Float::with_val(prec, 2.0 * r);
    let tie = two_pow_neg(prec, (prec / 4) as i32);
    let mut inner = Vec::new();
    let mut outer = Vec::new();
    let mut flags = Vec::new();
    for root in rs.roots {
        let d = Float::with_val(prec, root.abs() - &two_r);
        if Float::with_val(prec, d.abs_ref()) <= tie {
            flags.push(outer.len());
            outer.push(root);
        } else if d < 0 {
            inner.push(root);
        } else {
            outer.push(root);
        }
    }
    let scale = inner.iter().fold(HpComplex::one(prec), |acc, z| &acc * &(-z));
    Ok(NormalizedDenominator {
        inner_roots: inner,
        outer_roots: outer,
        boundary_flags: flags,
        r_used: r,
        provenance,
        residual: rs.residual,
        scale,
    })
}
