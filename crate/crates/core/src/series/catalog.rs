//! Catalog of test functions with known analytic structure.

use std::str::FromStr;
use std::sync::Arc;

use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use super::hp::{two_pow_neg, HpComplex};
use super::poly::Polynomial;
use super::power_series::{CoefficientRule, PowerSeries, Radius, ReferenceEvaluator, SeriesMeta};
use crate::error::{Error, Result};

/// Exact rational written as `"p/q"` or `"p"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalText(pub String);

impl RationalText {
    pub fn parse(&self, field: &str) -> Result<Rational> {
        Rational::from_str(self.0.trim()).map_err(|e| Error::param(field, format!("`{}` is not a rational: {e}", self.0)))
    }
}

impl From<&str> for RationalText {
    fn from(s: &str) -> Self {
        RationalText(s.to_string())
    }
}

/// Zero-coefficient mask for the `taylor-gap` kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mask", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GapMask {
    /// `f_n = 0` for `n ∈ (2^k, 2^{k+1}]` whenever `k ≡ parity (mod 2)`, `k ≥ 1`.
    DyadicAlternating { parity: u32 },
    /// `f_n = 0` for `n ∈ (lo, hi]` for every listed pair.
    Intervals { intervals: Vec<(usize, usize)> },
}

impl GapMask {
    fn is_zero(&self, n: usize) -> bool {
        match self {
            GapMask::DyadicAlternating { parity } => {
                if n <= 2 {
                    return false;
                }
                // k with 2^k < n <= 2^{k+1}
                let k = usize::BITS - (n - 1).leading_zeros() - 1;
                k >= 1 && k % 2 == parity % 2
            }
            GapMask::Intervals { intervals } => intervals.iter().any(|&(lo, hi)| lo < n && n <= hi),
        }
    }

    fn windows(&self, limit: usize) -> Vec<(usize, usize)> {
        match self {
            GapMask::DyadicAlternating { parity } => (1..usize::BITS - 1)
                .filter(|k| k % 2 == parity % 2)
                .map(|k| (1usize << k, 1usize << (k + 1)))
                .take_while(|&(_, hi)| hi <= limit)
                .collect(),
            GapMask::Intervals { intervals } => {
                let mut v: Vec<_> = intervals.iter().copied().filter(|&(lo, hi)| hi > lo).collect();
                v.sort_unstable();
                v
            }
        }
    }
}

/// Parameters of a catalog function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CatalogSpec {
    /// `Σ r_i/(p_i − z) + polynomial(z)` with simple real rational poles.
    Rational {
        poles: Vec<RationalText>,
        residues: Vec<RationalText>,
        #[serde(default)]
        polynomial: Vec<RationalText>,
    },
    /// `log(1/(1 − z/b))`.
    LogBranch { b: RationalText },
    /// `(1 − z/b)^α`, α not an integer.
    AlgebraicBranch { b: RationalText, alpha: RationalText },
    /// `Σ_j (c·P(z))^{g^j}` with `P(0) = 0`.
    LacunaryLemniscate { p: Vec<RationalText>, gap_base: u32, c: RationalText },
    /// `Σ mask(n)·z^n / radius^n`.
    TaylorGap {
        radius: RationalText,
        #[serde(flatten)]
        mask: GapMask,
    },
    /// `exp(z)`.
    Exp,
}

impl CatalogSpec {
    pub fn geometric() -> Self {
        CatalogSpec::Rational { poles: vec!["1".into()], residues: vec!["1".into()], polynomial: vec![] }
    }

    pub fn rational(poles: &[&str], residues: &[&str]) -> Self {
        CatalogSpec::Rational {
            poles: poles.iter().map(|&s| s.into()).collect(),
            residues: residues.iter().map(|&s| s.into()).collect(),
            polynomial: vec![],
        }
    }

    pub fn lemniscate_example() -> Self {
        CatalogSpec::LacunaryLemniscate { p: vec!["0".into(), "0".into(), "1".into(), "-1".into()], gap_base: 2, c: "1".into() }
    }

    pub fn log_branch(b: &str) -> Self {
        CatalogSpec::LogBranch { b: b.into() }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CatalogSpec::Rational { .. } => "rational",
            CatalogSpec::LogBranch { .. } => "log-branch",
            CatalogSpec::AlgebraicBranch { .. } => "algebraic-branch",
            CatalogSpec::LacunaryLemniscate { .. } => "lacunary-lemniscate",
            CatalogSpec::TaylorGap { .. } => "taylor-gap",
            CatalogSpec::Exp => "exp",
        }
    }
}

/// Build a catalog series, validating its parameters.
pub fn catalog_make(spec: &CatalogSpec) -> Result<PowerSeries> {
    match spec {
        CatalogSpec::Rational { poles, residues, polynomial } => make_rational(poles, residues, polynomial),
        CatalogSpec::LogBranch { b } => {
            let b = nonzero(b.parse("b")?, "b")?;
            let meta = branch_meta(&b);
            let rule = LogRule { b: b.clone() };
            Ok(PowerSeries::new(format!("log(1/(1-z/{b}))"), Arc::new(rule), meta)
                .with_reference(Arc::new(BranchEval { b, alpha: None })))
        }
        CatalogSpec::AlgebraicBranch { b, alpha } => {
            let b = nonzero(b.parse("b")?, "b")?;
            let alpha = alpha.parse("alpha")?;
            if alpha.is_integer() {
                return Err(Error::param("alpha", "exponent must not be an integer"));
            }
            let meta = branch_meta(&b);
            let rule = AlgebraicRule { b: b.clone(), alpha: alpha.clone() };
            Ok(PowerSeries::new(format!("(1-z/{b})^({alpha})"), Arc::new(rule), meta)
                .with_reference(Arc::new(BranchEval { b, alpha: Some(alpha) })))
        }
        CatalogSpec::LacunaryLemniscate { p, gap_base, c } => make_lacunary(p, *gap_base, c),
        CatalogSpec::TaylorGap { radius, mask } => {
            let r = radius.parse("radius")?;
            if r <= 0 {
                return Err(Error::param("radius", "must be positive"));
            }
            if let GapMask::Intervals { intervals } = mask {
                if let Some(&(lo, hi)) = intervals.iter().find(|(lo, hi)| hi <= lo) {
                    return Err(Error::param("intervals", format!("empty interval ({lo}, {hi}]")));
                }
            }
            let mut meta = SeriesMeta::unknown();
            meta.r0 = match mask {
                GapMask::DyadicAlternating { .. } => Radius::Known(r.to_f64()),
                GapMask::Intervals { .. } => Radius::Known(r.to_f64()),
            };
            meta.gap_windows = mask.windows(1 << 16);
            let inv = Rational::from(1) / r.clone();
            let m = mask.clone();
            let rule = super::power_series::FnRule(move |n: usize| {
                if m.is_zero(n) {
                    Rational::new()
                } else {
                    Rational::from(inv.clone().pow(n as u32))
                }
            });
            Ok(PowerSeries::new(format!("taylor-gap(r={r})"), Arc::new(rule), meta))
        }
        CatalogSpec::Exp => {
            let mut meta = SeriesMeta::unknown();
            meta.r0 = Radius::Infinite;
            meta.rm_tail = Radius::Infinite;
            meta.r_meromorphy = Radius::Infinite;
            Ok(PowerSeries::new("exp(z)", Arc::new(ExpRule), meta).with_reference(Arc::new(ExpEval)))
        }
    }
}

fn nonzero(q: Rational, field: &str) -> Result<Rational> {
    if q == 0 {
        Err(Error::param(field, "must be nonzero"))
    } else {
        Ok(q)
    }
}

fn branch_meta(b: &Rational) -> SeriesMeta {
    let rb = b.to_f64();
    let mut meta = SeriesMeta::unknown();
    meta.r0 = Radius::Known(rb.abs());
    meta.rm_tail = Radius::Known(rb.abs());
    meta.r_meromorphy = Radius::Known(rb.abs());
    meta.branch_points = vec![(rb, 0.0)];
    meta.regular_points = vec![(-rb, 0.0), (0.0, rb.abs())];
    meta.multivalued_singularity = true;
    meta
}

// ---------------------------------------------------------------- rational

#[derive(Debug)]
struct RationalRule {
    poles: Vec<Rational>,
    residues: Vec<Rational>,
    poly: Polynomial,
}

impl CoefficientRule for RationalRule {
    fn extend(&self, known: &[Rational], upto: usize) -> Vec<Rational> {
        (known.len()..=upto)
            .map(|j| {
                let mut acc = self.poly.coeff(j);
                for (p, r) in self.poles.iter().zip(&self.residues) {
                    acc += Rational::from(r / Rational::from(p.pow((j + 1) as u32)));
                }
                acc
            })
            .collect()
    }
}

#[derive(Debug)]
struct RationalEval {
    poles: Vec<Rational>,
    residues: Vec<Rational>,
    poly: Polynomial,
}

impl ReferenceEvaluator for RationalEval {
    fn eval(&self, z: &HpComplex) -> Result<HpComplex> {
        let prec = z.prec();
        let tiny = two_pow_neg(prec, (prec / 2) as i32);
        let mut acc = self.poly.eval(z);
        for (p, r) in self.poles.iter().zip(&self.residues) {
            let d = &HpComplex::from_rational(prec, p) - z;
            if d.abs() < tiny {
                return Err(Error::Domain(format!("z coincides with the pole {p}")));
            }
            acc = &acc + &(&HpComplex::from_rational(prec, r) / &d);
        }
        Ok(acc)
    }

    fn region(&self) -> String {
        "complex plane minus the poles".into()
    }
}

fn make_rational(poles: &[RationalText], residues: &[RationalText], polynomial: &[RationalText]) -> Result<PowerSeries> {
    if poles.len() != residues.len() {
        return Err(Error::param("residues", format!("{} poles but {} residues", poles.len(), residues.len())));
    }
    let poles: Vec<Rational> = poles.iter().map(|p| p.parse("poles")).collect::<Result<_>>()?;
    let residues: Vec<Rational> = residues.iter().map(|p| p.parse("residues")).collect::<Result<_>>()?;
    let poly = Polynomial::new(polynomial.iter().map(|p| p.parse("polynomial")).collect::<Result<_>>()?);
    if poles.iter().any(|p| *p == 0) {
        return Err(Error::param("poles", "a pole at 0 gives no power series"));
    }
    if residues.iter().any(|r| *r == 0) {
        return Err(Error::param("residues", "residues must be nonzero"));
    }
    for (i, p) in poles.iter().enumerate() {
        if poles[..i].contains(p) {
            return Err(Error::param("poles", format!("duplicate pole {p}")));
        }
    }

    let mut moduli: Vec<f64> = poles.iter().map(|p| p.to_f64().abs()).collect();
    moduli.sort_by(f64::total_cmp);
    let mut meta = SeriesMeta::unknown();
    let radius_at = |m: usize| moduli.get(m).map_or(Radius::Infinite, |&r| Radius::Known(r));
    meta.r0 = radius_at(0);
    meta.rm = (0..=moduli.len()).map(radius_at).collect();
    meta.rm_tail = Radius::Infinite;
    meta.r_meromorphy = Radius::Infinite;
    meta.poles = poles.iter().map(|p| (p.to_f64(), 0.0)).collect();
    let mut distinct = moduli.clone();
    distinct.dedup();
    for rho in distinct {
        for cand in [(-rho, 0.0), (rho, 0.0), (0.0, rho)] {
            if cand.1 != 0.0 || !poles.iter().any(|p| p.to_f64() == cand.0) {
                meta.regular_points.push(cand);
                break;
            }
        }
    }

    let name = poles
        .iter()
        .zip(&residues)
        .map(|(p, r)| format!("{r}/({p}-z)"))
        .collect::<Vec<_>>()
        .join(" + ");
    let rule = RationalRule { poles: poles.clone(), residues: residues.clone(), poly: poly.clone() };
    Ok(PowerSeries::new(name, Arc::new(rule), meta).with_reference(Arc::new(RationalEval { poles, residues, poly })))
}

// ---------------------------------------------------------------- branches

#[derive(Debug)]
struct LogRule {
    b: Rational,
}

impl CoefficientRule for LogRule {
    fn extend(&self, known: &[Rational], upto: usize) -> Vec<Rational> {
        (known.len()..=upto)
            .map(|j| {
                if j == 0 {
                    Rational::new()
                } else {
                    Rational::from(1) / (Rational::from(self.b.clone().pow(j as u32)) * j as u32)
                }
            })
            .collect()
    }
}

#[derive(Debug)]
struct AlgebraicRule {
    b: Rational,
    alpha: Rational,
}

impl CoefficientRule for AlgebraicRule {
    fn extend(&self, known: &[Rational], upto: usize) -> Vec<Rational> {
        // c_j = c_{j-1}·(α − j + 1)/j·(−1/b)
        let mut out = Vec::with_capacity(upto + 1 - known.len());
        let mut prev = known.last().cloned();
        for j in known.len()..=upto {
            let c = match prev {
                None => Rational::from(1),
                Some(ref p) => {
                    let f = Rational::from(&self.alpha - (j as i64 - 1)) / (j as u32);
                    Rational::from(p * f) / Rational::from(-&self.b)
                }
            };
            out.push(c.clone());
            prev = Some(c);
        }
        out
    }
}

/// `−log(1 − z/b)` or `(1 − z/b)^α` on the plane cut along `[b, ∞)·sign(b)`.
#[derive(Debug)]
struct BranchEval {
    b: Rational,
    alpha: Option<Rational>,
}

impl ReferenceEvaluator for BranchEval {
    fn eval(&self, z: &HpComplex) -> Result<HpComplex> {
        let prec = z.prec();
        let w = &HpComplex::one(prec) - &z.scale_rational(&(Rational::from(1) / self.b.clone()));
        if w.im.is_zero() && !w.re.is_sign_positive() || w.is_zero() {
            return Err(Error::Domain("z lies on the branch cut".into()));
        }
        let l = w.ln();
        Ok(match &self.alpha {
            None => -l,
            Some(a) => l.scale(&Float::with_val(prec, a)).exp(),
        })
    }

    fn region(&self) -> String {
        format!("complex plane minus the ray [{}, ∞)", self.b)
    }
}

// ---------------------------------------------------------------- exp

#[derive(Debug)]
struct ExpRule;

impl CoefficientRule for ExpRule {
    fn extend(&self, known: &[Rational], upto: usize) -> Vec<Rational> {
        let mut prev = known.last().cloned();
        (known.len()..=upto)
            .map(|j| {
                let c = match prev.take() {
                    None => Rational::from(1),
                    Some(p) => p / (j as u32),
                };
                prev = Some(c.clone());
                c
            })
            .collect()
    }
}

#[derive(Debug)]
struct ExpEval;

impl ReferenceEvaluator for ExpEval {
    fn eval(&self, z: &HpComplex) -> Result<HpComplex> {
        Ok(z.exp())
    }

    fn region(&self) -> String {
        "complex plane".into()
    }
}

// ---------------------------------------------------------------- lacunary

#[derive(Debug, Clone)]
struct LacunaryRule {
    cp: Polynomial,
    gap_base: u32,
    low: usize,
}

impl LacunaryRule {
    /// Exact coefficients up to degree `len - 1`.
    fn expand(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::new(); len];
        let mut term = self.cp.truncate(len);
        let mut bottom = self.low;
        while bottom < len {
            for (k, c) in term.coeffs().iter().enumerate() {
                out[k] += c;
            }
            term = pow_trunc(&term, self.gap_base, len);
            bottom = bottom.saturating_mul(self.gap_base as usize);
        }
        out
    }
}

fn pow_trunc(p: &Polynomial, mut e: u32, len: usize) -> Polynomial {
    let mut base = p.clone();
    let mut acc = Polynomial::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_trunc(&base, len);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul_trunc(&base, len);
        }
    }
    acc
}

impl CoefficientRule for LacunaryRule {
    fn extend(&self, known: &[Rational], upto: usize) -> Vec<Rational> {
        let len = (upto + 1).max(64).next_power_of_two();
        let mut all = self.expand(len);
        all.drain(..known.len());
        all
    }
}

#[derive(Debug)]
struct LacunaryEval {
    cp: Polynomial,
    gap_base: u32,
}

impl ReferenceEvaluator for LacunaryEval {
    fn eval(&self, z: &HpComplex) -> Result<HpComplex> {
        let prec = z.prec();
        let w = self.cp.eval(z);
        let aw = w.abs();
        if aw >= 1 {
            return Err(Error::Domain(format!("|c·P(z)| = {} ≥ 1", aw.to_f64())));
        }
        let one_minus = Float::with_val(prec, 1 - &aw);
        let target = two_pow_neg(prec, prec as i32 - 8);
        let mut acc = HpComplex::zero(prec);
        let mut term = w;
        loop {
            acc = &acc + &term;
            term = term.powu(self.gap_base as u64);
            // tail ≤ |term| / (1 − |w|)
            if term.abs() / &one_minus < target {
                break;
            }
        }
        Ok(acc)
    }

    fn region(&self) -> String {
        "|c·P(z)| < 1".into()
    }
}

fn make_lacunary(p: &[RationalText], gap_base: u32, c: &RationalText) -> Result<PowerSeries> {
    let poly = Polynomial::new(p.iter().map(|q| q.parse("p")).collect::<Result<_>>()?);
    let c = nonzero(c.parse("c")?, "c")?;
    if gap_base < 2 {
        return Err(Error::param("gap_base", "must be an integer ≥ 2"));
    }
    let top = poly.degree().ok_or_else(|| Error::param("p", "polynomial must be nonzero"))?;
    if poly.coeff(0) != 0 {
        return Err(Error::param("p", "P(0) must vanish"));
    }
    let low = poly.coeffs().iter().position(|q| *q != 0).expect("nonzero polynomial");
    if top >= low * gap_base as usize {
        return Err(Error::param(
            "p",
            format!("gap condition violated: deg P = {top} must be below gap_base·ord P = {}", low * gap_base as usize),
        ));
    }
    let cp = poly.scale(&c);

    let mut meta = SeriesMeta::unknown();
    let floats: Vec<f64> = cp.coeffs().iter().map(|q| q.to_f64()).collect();
    let r0 = lemniscate_radius(&floats);
    meta.r0 = Radius::Known(r0);
    meta.rm_tail = Radius::Known(r0);
    meta.r_meromorphy = Radius::Known(r0);
    let mut regular = Vec::new();
    if abs_poly_f64(&floats, r0, 0.0) < 1.0 - 1e-6 {
        regular.push((r0, 0.0));
    }
    let best = (0..ANGLES)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / ANGLES as f64)
        .min_by(|a, b| {
            abs_poly_f64(&floats, r0 * a.cos(), r0 * a.sin()).total_cmp(&abs_poly_f64(&floats, r0 * b.cos(), r0 * b.sin()))
        })
        .unwrap_or(0.0);
    if best != 0.0 {
        regular.push((r0 * best.cos(), r0 * best.sin()));
    }
    meta.regular_points = regular;
    let g = gap_base as usize;
    let mut scale = 1usize;
    while scale.saturating_mul(low * g) <= 1 << 16 {
        let lo = scale * top;
        let hi = scale * g * low - 1;
        if hi > lo {
            meta.gap_windows.push((lo, hi));
        }
        scale *= g;
    }

    let rule = LacunaryRule { cp: cp.clone(), gap_base, low };
    Ok(PowerSeries::new(format!("Σ ({c}·P(z))^({gap_base}^j)"), Arc::new(rule), meta)
        .with_reference(Arc::new(LacunaryEval { cp, gap_base })))
}

const ANGLES: usize = 4096;

fn abs_poly_f64(c: &[f64], x: f64, y: f64) -> f64 {
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for &a in c.iter().rev() {
        let nr = re * x - im * y + a;
        im = re * y + im * x;
        re = nr;
    }
    re.hypot(im)
}

/// Smallest `r` with `max_{|z|=r} |c·P(z)| = 1` (bisection on a sampled circle).
fn lemniscate_radius(c: &[f64]) -> f64 {
    let circle_max = |r: f64| {
        (0..ANGLES)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / ANGLES as f64;
                abs_poly_f64(c, r * t.cos(), r * t.sin())
            })
            .fold(0.0f64, f64::max)
    };
    let mut hi = 1.0;
    while circle_max(hi) < 1.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if circle_max(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        Rational::from_str(s).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let g = catalog_make(&CatalogSpec::geometric()).unwrap();
        assert_eq!(g.coeff(5), 1);
        let l = catalog_make(&CatalogSpec::log_branch("1")).unwrap();
        assert_eq!(l.coeff(4), q("1/4"));
        assert_eq!(l.coeff(0), 0);
        let lac = catalog_make(&CatalogSpec::lemniscate_example()).unwrap();
        assert_eq!(lac.coeff(3), -1);
        assert_eq!(lac.coeff(2), 1);
    }

    /// Independent expansion of Σ_j (z²−z³)^{2^j} by repeated exact
    /// convolution without truncation, compared up to degree 3·2^6.
    #[test]
    fn lacunary_matches_full_expansion() {
        let base = Polynomial::from_ratios(&[(0, 1), (0, 1), (1, 1), (-1, 1)]);
        let mut sum = Polynomial::zero();
        let mut term = base.clone();
        for _ in 0..=6 {
            sum = sum.add(&term);
            term = term.mul(&term);
        }
        let lac = catalog_make(&CatalogSpec::lemniscate_example()).unwrap();
        // terms j ≥ 7 start at degree 2·2^7 = 256
        for n in 0..=192 {
            assert_eq!(lac.coeff(n), sum.coeff(n), "n = {n}");
        }
        for j in 0..=6u32 {
            let m = 1usize << j;
            for n in 3 * m + 1..4 * m {
                assert_eq!(lac.coeff(n), 0, "gap index {n}");
            }
            assert_ne!(lac.coeff(3 * m), 0);
            assert_ne!(lac.coeff(4 * m), 0);
        }
    }

    #[test]
    fn rational_meta_radii() {
        let f = catalog_make(&CatalogSpec::rational(&["1", "2"], &["1", "1"])).unwrap();
        let m = f.meta();
        assert_eq!(m.r0, Radius::Known(1.0));
        assert_eq!(m.rm(1), Radius::Known(2.0));
        assert_eq!(m.rm(2), Radius::Infinite);
        assert_eq!(m.rm(7), Radius::Infinite);
        assert_eq!(f.coeff(0), q("3/2"));
        assert_eq!(f.coeff(3), q("17/16"));
    }

    #[test]
    fn branch_meta_flags_multivalued_singularity() {
        let f = catalog_make(&CatalogSpec::log_branch("1")).unwrap();
        assert!(f.meta().multivalued_singularity);
        assert_eq!(f.meta().rm(5), Radius::Known(1.0));
        assert_eq!(f.meta().r_meromorphy, Radius::Known(1.0));
    }

    #[test]
    fn lacunary_meta() {
        let f = catalog_make(&CatalogSpec::lemniscate_example()).unwrap();
        let r0 = f.meta().r0.finite().unwrap();
        // r²(1 + r) = 1
        assert!((r0 * r0 * (1.0 + r0) - 1.0).abs() < 1e-9);
        assert_eq!(f.meta().regular_points[0], (r0, 0.0));
        assert_eq!(&f.meta().gap_windows[..3], &[(6, 7), (12, 15), (24, 31)]);
    }

    #[test]
    fn parameter_errors() {
        let bad = [
            CatalogSpec::rational(&["0"], &["1"]),
            CatalogSpec::rational(&["1"], &["1", "2"]),
            CatalogSpec::LacunaryLemniscate { p: vec!["0".into(), "1".into(), "0".into(), "1".into()], gap_base: 2, c: "1".into() },
            CatalogSpec::LacunaryLemniscate { p: vec!["1".into(), "1".into()], gap_base: 2, c: "1".into() },
            CatalogSpec::LacunaryLemniscate { p: vec!["0".into(), "0".into(), "1".into()], gap_base: 1, c: "1".into() },
            CatalogSpec::AlgebraicBranch { b: "1".into(), alpha: "2".into() },
            CatalogSpec::LogBranch { b: "0".into() },
            CatalogSpec::LogBranch { b: "x".into() },
        ];
        for spec in bad {
            assert!(matches!(catalog_make(&spec), Err(Error::Parameter { .. })), "{spec:?}");
        }
    }

    #[test]
    fn reference_examples() {
        let f = catalog_make(&CatalogSpec::rational(&["1", "2"], &["1", "1"])).unwrap();
        let v = f.reference_eval(&HpComplex::from_f64(256, 0.5, 0.0)).unwrap();
        assert!((v.re.to_f64() - (2.0 + 2.0 / 3.0)).abs() < 1e-15);
        let l = catalog_make(&CatalogSpec::log_branch("1")).unwrap();
        assert!(l.reference_eval(&HpComplex::zero(256)).unwrap().is_zero());
        assert!(matches!(l.reference_eval(&HpComplex::from_f64(256, 2.0, 0.0)), Err(Error::Domain(_))));
        let lac = catalog_make(&CatalogSpec::lemniscate_example()).unwrap();
        let v = lac.reference_eval(&HpComplex::from_f64(256, 0.8, 0.0)).unwrap();
        // Σ_j 0.128^{2^j}
        let mut expect = 0.0;
        let mut t = 0.128f64;
        while t > 1e-300 {
            expect += t;
            t *= t;
        }
        assert!((v.re.to_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn algebraic_coefficients() {
        let f = catalog_make(&CatalogSpec::AlgebraicBranch { b: "1".into(), alpha: "1/2".into() }).unwrap();
        // sqrt(1 − z) = 1 − z/2 − z²/8 − z³/16 − ...
        assert_eq!(f.coeffs(4), vec![q("1"), q("-1/2"), q("-1/8"), q("-1/16")]);
    }

    #[test]
    fn dyadic_mask() {
        let spec = CatalogSpec::TaylorGap { radius: "1".into(), mask: GapMask::DyadicAlternating { parity: 1 } };
        let f = catalog_make(&spec).unwrap();
        // k = 1: (2, 4] zero; k = 2: (4, 8] nonzero; k = 3: (8, 16] zero
        let zeros: Vec<usize> = (0..20).filter(|&n| f.coeff(n) == 0).collect();
        assert_eq!(zeros, vec![3, 4, 9, 10, 11, 12, 13, 14, 15, 16]);
    }
}
