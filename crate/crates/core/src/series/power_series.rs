use std::fmt;
use std::sync::{Arc, RwLock};

use rug::Rational;
use serde::{Deserialize, Serialize};

use super::hp::HpComplex;
use crate::error::Result;

/// Produces Taylor coefficients deterministically.
pub trait CoefficientRule: Send + Sync + fmt::Debug {
    /// Coefficients for indices `known.len()..=upto` (a rule may return
    /// more). `known` is the memoized prefix, which sequential rules reuse.
    fn extend(&self, known: &[Rational], upto: usize) -> Vec<Rational>;
}

/// Closed-form evaluator of the sum of a series on a declared region.
pub trait ReferenceEvaluator: Send + Sync + fmt::Debug {
    fn eval(&self, z: &HpComplex) -> Result<HpComplex>;
    /// Human-readable description of the region of validity.
    fn region(&self) -> String;
}

/// Rule backed by a closure `j -> f_j`.
pub struct FnRule<F>(pub F);

impl<F> fmt::Debug for FnRule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FnRule")
    }
}

impl<F> CoefficientRule for FnRule<F>
where
    F: Fn(usize) -> Rational + Send + Sync,
{
    fn extend(&self, known: &[Rational], upto: usize) -> Vec<Rational> {
        (known.len()..=upto).map(|j| (self.0)(j)).collect()
    }
}

/// A declared radius; `Unknown` when the catalog cannot say.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Radius {
    Known(f64),
    Infinite,
    Unknown,
}

impl Radius {
    pub fn finite(self) -> Option<f64> {
        match self {
            Radius::Known(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Radius::Infinite)
    }
}

/// Declared analytic facts about a catalog function. Only validators read
/// these; estimators work from coefficients alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesMeta {
    pub r0: Radius,
    /// `rm[m]` is the radius of m-meromorphy; indices past the end use `rm_tail`.
    pub rm: Vec<Radius>,
    pub rm_tail: Radius,
    /// Radius of meromorphy R(f).
    pub r_meromorphy: Radius,
    pub poles: Vec<(f64, f64)>,
    pub branch_points: Vec<(f64, f64)>,
    /// Regular points on the boundary circle of the relevant disk.
    pub regular_points: Vec<(f64, f64)>,
    /// Exactly-zero coefficient runs `(lo, hi]` known from the construction.
    pub gap_windows: Vec<(usize, usize)>,
    pub multivalued_singularity: bool,
}

impl SeriesMeta {
    pub fn unknown() -> Self {
        SeriesMeta {
            r0: Radius::Unknown,
            rm: Vec::new(),
            rm_tail: Radius::Unknown,
            r_meromorphy: Radius::Unknown,
            poles: Vec::new(),
            branch_points: Vec::new(),
            regular_points: Vec::new(),
            gap_windows: Vec::new(),
            multivalued_singularity: false,
        }
    }

    pub fn rm(&self, m: usize) -> Radius {
        if m == 0 {
            return self.r0;
        }
        self.rm.get(m).copied().unwrap_or(self.rm_tail)
    }
}

/// Formal power series with exact coefficients and a thread-safe memo.
pub struct PowerSeries {
    name: String,
    rule: Arc<dyn CoefficientRule>,
    memo: RwLock<Vec<Rational>>,
    reference: Option<Arc<dyn ReferenceEvaluator>>,
    meta: SeriesMeta,
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PowerSeries")
            .field("name", &self.name)
            .field("rule", &self.rule)
            .field("memoized", &self.memo.read().map(|m| m.len()).unwrap_or(0))
            .field("meta", &self.meta)
            .finish()
    }
}

impl Clone for PowerSeries {
    fn clone(&self) -> Self {
        PowerSeries {
            name: self.name.clone(),
            rule: Arc::clone(&self.rule),
            memo: RwLock::new(self.memo.read().expect("memo poisoned").clone()),
            reference: self.reference.clone(),
            meta: self.meta.clone(),
        }
    }
}

impl PowerSeries {
    pub fn new(name: impl Into<String>, rule: Arc<dyn CoefficientRule>, meta: SeriesMeta) -> Self {
        PowerSeries { name: name.into(), rule, memo: RwLock::new(Vec::new()), reference: None, meta }
    }

    pub fn from_fn<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(usize) -> Rational + Send + Sync + 'static,
    {
        PowerSeries::new(name, Arc::new(FnRule(f)), SeriesMeta::unknown())
    }

    /// Finite list of coefficients followed by zeros.
    pub fn from_coeffs(name: impl Into<String>, c: Vec<Rational>) -> Self {
        PowerSeries::from_fn(name, move |j| c.get(j).cloned().unwrap_or_default())
    }

    pub fn with_reference(mut self, r: Arc<dyn ReferenceEvaluator>) -> Self {
        self.reference = Some(r);
        self
    }

    pub fn with_meta(mut self, meta: SeriesMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn meta(&self) -> &SeriesMeta {
        &self.meta
    }

    pub fn reference(&self) -> Option<&Arc<dyn ReferenceEvaluator>> {
        self.reference.as_ref()
    }

    fn ensure(&self, upto: usize) {
        if self.memo.read().expect("memo poisoned").len() > upto {
            return;
        }
        let mut memo = self.memo.write().expect("memo poisoned");
        if memo.len() > upto {
            return;
        }
        let fresh = self.rule.extend(&memo, upto);
        debug_assert!(memo.len() + fresh.len() > upto);
        memo.extend(fresh);
    }

    /// Exact Taylor coefficient `f_j`.
    pub fn coeff(&self, j: usize) -> Rational {
        self.ensure(j);
        self.memo.read().expect("memo poisoned")[j].clone()
    }

    /// Coefficients `f_0..f_{len-1}`.
    pub fn coeffs(&self, len: usize) -> Vec<Rational> {
        if len == 0 {
            return Vec::new();
        }
        self.ensure(len - 1);
        self.memo.read().expect("memo poisoned")[..len].to_vec()
    }

    /// `f_j` with negative indices read as zero.
    pub fn coeff_signed(&self, j: i64) -> Rational {
        if j < 0 {
            Rational::new()
        } else {
            self.coeff(j as usize)
        }
    }

    /// Reference value `f(z)`.
    pub fn reference_eval(&self, z: &HpComplex) -> Result<HpComplex> {
        match &self.reference {
            Some(r) => r.eval(z),
            None => Err(crate::Error::Capability(format!("series `{}` has no reference evaluator", self.name))),
        }
    }

    /// Truncated Taylor sum `Σ_{j≤n} f_j z^j`.
    pub fn partial_sum(&self, n: usize, z: &HpComplex) -> HpComplex {
        let c = self.coeffs(n + 1);
        let fl: Vec<_> = c.iter().map(|q| rug::Float::with_val(z.prec(), q)).collect();
        super::poly::eval_float_coeffs(&fl, z)
    }
}
