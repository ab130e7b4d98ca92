use rug::Rational;
use serde::Serialize;

use super::normalize::NormalizedDenominator;
use crate::error::{Error, Result};
use crate::linalg;
use crate::series::poly::Polynomial;
use crate::series::PowerSeries;

/// Order of the zero of `f·Q − P` at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "index")]
pub enum Contact {
    /// First nonzero coefficient index.
    At(usize),
    /// No nonzero coefficient up to and including the cap.
    Exact { cap: usize },
}

impl Contact {
    /// Lower bound on the contact order.
    pub fn at_least(self) -> usize {
        match self {
            Contact::At(j) => j,
            Contact::Exact { cap } => cap + 1,
        }
    }
}

/// One entry `π_{n,m} = P/Q` of the Padé table in reduced form with `Q(0) = 1`.
#[derive(Debug, Clone)]
pub struct PadeEntry {
    pub n: usize,
    pub m: usize,
    pub p: Polynomial,
    pub q: Polynomial,
    /// `τ = min(n − deg P, m − deg Q)`.
    pub defect: usize,
    /// Exact degree of `Q`.
    pub mu: usize,
    /// Leading coefficient of `P` (0 when `P ≡ 0`).
    pub a_lead: Rational,
    pub normalized: Option<NormalizedDenominator>,
}

impl PadeEntry {
    pub fn deg_p(&self) -> usize {
        self.p.deg0()
    }

    /// Coefficient of `z^n` in `P`; equals `a_lead` when `deg P = n`.
    pub fn top_coefficient(&self) -> Rational {
        self.p.coeff(self.n)
    }

    /// Same reduced fraction.
    pub fn same_fraction(&self, other: &PadeEntry) -> bool {
        self.p == other.p && self.q == other.q
    }

    /// `P(z)/Q(z)` in the precision of `z`.
    pub fn eval(&self, z: &crate::series::HpComplex) -> crate::series::HpComplex {
        &self.p.eval(z) / &self.q.eval(z)
    }

    /// Minimal contact order guaranteed for the reduced fraction.
    pub fn guaranteed_contact(&self) -> usize {
        self.n + self.m + 1 - self.defect
    }
}

/// Compute `π_{n,m}` exactly.
///
/// The denominator is the minimal-degree null vector of the Toeplitz block
/// `(f_{n+i−j})`, `1 ≤ i ≤ m`, `0 ≤ j ≤ m`; the numerator is the truncation
/// of `f·q` to degree `n`. Both are then reduced by their gcd.
pub fn pade(f: &PowerSeries, n: usize, m: usize) -> Result<PadeEntry> {
    let c = f.coeffs(n + m + 1);
    let at = |k: i64| if k < 0 { Rational::new() } else { c[k as usize].clone() };

    let q_raw = if m == 0 {
        Polynomial::one()
    } else {
        let rows: Vec<Vec<Rational>> =
            (n + 1..=n + m).map(|i| (0..=m).map(|j| at(i as i64 - j as i64)).collect()).collect();
        let v = linalg::min_support_null_vector(&rows, m + 1)
            .ok_or_else(|| Error::InvariantViolation(format!("({n},{m}): Toeplitz block has full column rank")))?;
        Polynomial::new(v)
    };
    let p_raw = Polynomial::new(
        (0..=n)
            .map(|i| {
                let mut s = Rational::new();
                for (j, qj) in q_raw.coeffs().iter().enumerate().take(i + 1) {
                    if *qj != 0 {
                        s += Rational::from(qj * &c[i - j]);
                    }
                }
                s
            })
            .collect(),
    );

    let (p, q) = if p_raw.is_zero() {
        (Polynomial::zero(), Polynomial::one())
    } else {
        let g = p_raw.gcd(&q_raw);
        let (p, r1) = p_raw.div_rem(&g);
        let (q, r2) = q_raw.div_rem(&g);
        debug_assert!(r1.is_zero() && r2.is_zero());
        let q0 = q.coeff(0);
        if q0 == 0 {
            return Err(Error::InvariantViolation(format!("({n},{m}): reduced denominator vanishes at 0")));
        }
        let inv = Rational::from(1) / q0;
        (p.scale(&inv), q.scale(&inv))
    };

    let deg_p = p.deg0();
    let mu = q.deg0();
    // deg 0 ≡ −∞, so a zero numerator takes the whole defect from Q
    let defect = if p.is_zero() { m - mu.min(m) } else { (n - deg_p.min(n)).min(m - mu.min(m)) };
    let a_lead = p.leading();
    let e = PadeEntry { n, m, p, q, defect, mu, a_lead, normalized: None };

    let need = e.guaranteed_contact();
    if let Contact::At(j) = order_of_contact(f, &e, need - 1) {
        return Err(Error::InvariantViolation(format!(
            "({n},{m}): f·Q − P has a nonzero coefficient at {j} < {need}"
        )));
    }
    Ok(e)
}

/// First index `j ≤ cap` where `f·Q − P` has a nonzero coefficient.
pub fn order_of_contact(f: &PowerSeries, e: &PadeEntry, cap: usize) -> Contact {
    let c = f.coeffs(cap + 1);
    for j in 0..=cap {
        let mut s = -e.p.coeff(j);
        for (k, qk) in e.q.coeffs().iter().enumerate().take(j + 1) {
            s += Rational::from(qk * &c[j - k]);
        }
        if s != 0 {
            return Contact::At(j);
        }
    }
    Contact::Exact { cap }
}

/// Leading coefficient `a_n` of `P` (0 for `P ≡ 0`).
pub fn a_coefficient(e: &PadeEntry) -> Rational {
    e.a_lead.clone()
}
