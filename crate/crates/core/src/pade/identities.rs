//! Difference identity between consecutive approximants and the telescoping
//! tail series.
//!
//! With the normalized denominators `Q_n = Π(z − ζ*)Π(1 − z/ζ̃)`,
//!
//! `π_{n+1} − π_n = A_n z^{K_n} / (Q_n Q_{n+1})`, `K_n = n + m_n + 1 − τ_n`,
//!
//! where `A_n` is the coefficient of `z^{K_n}` in `P_{n+1}Q_n − P_nQ_{n+1}`.
//! Both products have degree at most `K_n`, so only their leading terms can
//! contribute; each term of the two-case formula is therefore gated on the
//! degree actually reaching `K_n`.

use rug::{Float, Rational};
use serde::Serialize;

use super::entry::PadeEntry;
use super::normalize::NormalizedDenominator;
use crate::error::{Error, Result};
use crate::series::hp::HpComplex;
use crate::series::poly::Polynomial;
use crate::series::PowerSeries;

const POLE_CLEARANCE: f64 = 1e-6;

/// Exponent `K_n = n + m_n + 1 − τ_n`.
pub fn contact_exponent(e: &PadeEntry) -> usize {
    e.n + e.m + 1 - e.defect
}

/// Leading coefficient of the numerator paired with the normalized denominator.
pub fn normalized_lead(e: &PadeEntry, norm: &NormalizedDenominator) -> HpComplex {
    norm.scale.scale_rational(&e.a_lead)
}

fn check_step(e_n: &PadeEntry, e_next: &PadeEntry) -> Result<()> {
    if e_next.n != e_n.n + 1 || !(e_next.m == e_n.m || e_next.m == e_n.m + 1) {
        return Err(Error::Schedule(format!(
            "({},{}) → ({},{}) is not a close-to-row step",
            e_n.n, e_n.m, e_next.n, e_next.m
        )));
    }
    Ok(())
}

/// `A_n` from leading coefficients and outer roots.
#[allow(non_snake_case)]
pub fn A_coefficient(
    e_n: &PadeEntry,
    e_next: &PadeEntry,
    norm_n: &NormalizedDenominator,
    norm_next: &NormalizedDenominator,
) -> Result<HpComplex> {
    check_step(e_n, e_next)?;
    if norm_n.r_used != norm_next.r_used {
        return Err(Error::param("R", "both normalizations must use the same radius"));
    }
    let k = contact_exponent(e_n);
    let prec = norm_n.prec();
    let mut a = HpComplex::zero(prec);
    if !e_next.p.is_zero() && e_next.deg_p() + e_n.mu == k {
        a = &a + &(&normalized_lead(e_next, norm_next) * &norm_n.lead());
    }
    if !e_n.p.is_zero() && e_n.deg_p() + e_next.mu == k {
        a = &a - &(&normalized_lead(e_n, norm_n) * &norm_next.lead());
    }
    Ok(a)
}

/// Exact numerator `P_{n+1}Q_n − P_nQ_{n+1}` (with `Q(0) = 1`) and its
/// coefficient at `z^{K_n}`.
pub fn difference_numerator(e_n: &PadeEntry, e_next: &PadeEntry) -> (Polynomial, Rational) {
    let num = e_next.p.mul(&e_n.q).sub(&e_n.p.mul(&e_next.q));
    let a = num.coeff(contact_exponent(e_n));
    (num, a)
}

fn eval_fraction(e: &PadeEntry, z: &HpComplex) -> HpComplex {
    e.eval(z)
}

fn pole_clearance(norms: &[&NormalizedDenominator], z: &HpComplex) -> Result<()> {
    for nd in norms {
        for r in nd.roots() {
            let d = r.dist(z).to_f64();
            if d <= POLE_CLEARANCE {
                return Err(Error::PoleProximity { distance: d });
            }
        }
    }
    Ok(())
}

/// `(π_{n+1}(z) − π_n(z)) − A·z^{K_n}/(Q_n(z)Q_{n+1}(z))`.
pub fn difference_identity_residual(
    e_n: &PadeEntry,
    e_next: &PadeEntry,
    a: &HpComplex,
    z: &HpComplex,
    norm_n: &NormalizedDenominator,
    norm_next: &NormalizedDenominator,
) -> Result<HpComplex> {
    check_step(e_n, e_next)?;
    pole_clearance(&[norm_n, norm_next], z)?;
    let lhs = &eval_fraction(e_next, z) - &eval_fraction(e_n, z);
    let rhs = &(a * &z.powu(contact_exponent(e_n) as u64)) / &(&norm_n.eval(z) * &norm_next.eval(z));
    Ok(&lhs - &rhs)
}

/// Entries of one ray `{π_{n, m_n}}` with their normalizations.
#[derive(Debug, Clone)]
pub struct Ray {
    pub m_values: Vec<usize>,
    pub entries: Vec<PadeEntry>,
    pub norms: Vec<NormalizedDenominator>,
}

impl Ray {
    pub fn compute(
        f: &PowerSeries,
        m_values: &[usize],
        r: f64,
        provenance: crate::series::radius::Provenance,
        prec: u32,
    ) -> Result<Ray> {
        use rayon::prelude::*;
        let pairs: Vec<(PadeEntry, NormalizedDenominator)> = m_values
            .par_iter()
            .enumerate()
            .map(|(n, &m)| {
                let e = super::entry::pade(f, n, m)?;
                let nd = super::normalize::normalize_denominator(&e, r, provenance, prec)?;
                Ok((e, nd))
            })
            .collect::<Result<_>>()?;
        let (entries, norms) = pairs.into_iter().unzip();
        Ok(Ray { m_values: m_values.to_vec(), entries, norms })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `A_n` for `n + 1 < len`.
    #[allow(non_snake_case)]
    pub fn A(&self, n: usize) -> Result<HpComplex> {
        A_coefficient(&self.entries[n], &self.entries[n + 1], &self.norms[n], &self.norms[n + 1])
    }

    /// `π_n(z)`.
    pub fn eval(&self, n: usize, z: &HpComplex) -> HpComplex {
        eval_fraction(&self.entries[n], z)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TailReport {
    pub n: usize,
    pub n_terms: usize,
    /// `|f(z) − π_n(z)|`.
    pub error: f64,
    /// `|Σ_{k=n}^{n+N} A_k z^{K_k}/(Q_kQ_{k+1})|`.
    pub partial_sum: f64,
    /// `|f(z) − π_n(z) − partial sum|`.
    pub gap: f64,
    /// `(|z|/R)^{n+N}`.
    pub tail_bound: f64,
    /// Steps with `τ_{k+1} ≠ 0`, where the identity is not applied and the
    /// direct difference `π_{k+1} − π_k` is summed instead.
    pub substituted: Vec<usize>,
}

/// Compare `f − π_n` with the partial telescoping sum at `z`.
pub fn tail_series_check(
    f: &PowerSeries,
    ray: &Ray,
    n: usize,
    n_terms: usize,
    z: &HpComplex,
    eps: f64,
    r: f64,
) -> Result<TailReport> {
    if f.reference().is_none() {
        return Err(Error::Capability(format!("series `{}` has no reference evaluator", f.name())));
    }
    let last = n + n_terms + 1;
    if last >= ray.len() {
        return Err(Error::param("n_terms", format!("ray has {} entries, needs {}", ray.len(), last + 1)));
    }
    let prec = z.prec();
    let az = z.abs().to_f64();
    if az >= 0.9 * r {
        return Err(Error::Domain(format!("|z| = {az} is not below 0.9·R = {}", 0.9 * r)));
    }
    for k in 1..=last {
        let mu = ray.entries[k].mu;
        if mu == 0 {
            continue;
        }
        let rad = eps / (6.0 * mu as f64 * (k * k) as f64);
        if ray.norms[k].roots().any(|w| w.dist(z).to_f64() < rad) {
            return Err(Error::Domain(format!("z lies in the exclusion disk of a free pole of π_{k}")));
        }
    }

    let lhs = &f.reference_eval(z)? - &ray.eval(n, z);
    let mut sum = HpComplex::zero(prec);
    let mut substituted = Vec::new();
    for k in n..=n + n_terms {
        let term = if ray.entries[k + 1].defect == 0 {
            let a = ray.A(k)?;
            let qq = &ray.norms[k].eval(z) * &ray.norms[k + 1].eval(z);
            &(&a * &z.powu(contact_exponent(&ray.entries[k]) as u64)) / &qq
        } else {
            substituted.push(k);
            &ray.eval(k + 1, z) - &ray.eval(k, z)
        };
        sum = &sum + &term;
    }
    let gap = (&lhs - &sum).abs();
    let tail = Float::with_val(prec, az / r).pow_ref_u((n + n_terms) as u32);
    Ok(TailReport {
        n,
        n_terms,
        error: lhs.abs().to_f64(),
        partial_sum: sum.abs().to_f64(),
        gap: gap.to_f64(),
        tail_bound: tail.to_f64(),
        substituted,
    })
}

trait PowU {
    fn pow_ref_u(&self, e: u32) -> Float;
}

impl PowU for Float {
    fn pow_ref_u(&self, e: u32) -> Float {
        use rug::ops::Pow;
        Float::with_val(self.prec(), self.pow(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::entry::pade;
    use crate::pade::normalize::normalize_denominator;
    use crate::series::catalog::{catalog_make, CatalogSpec};
    use crate::series::radius::Provenance;

    const P: u32 = 256;

    fn ray(spec: &CatalogSpec, m: &[usize], r: f64) -> (PowerSeries, Ray) {
        let f = catalog_make(spec).unwrap();
        let ray = Ray::compute(&f, m, r, Provenance::Declared, P).unwrap();
        (f, ray)
    }

    fn bound(n: usize, m: usize, z: &HpComplex) -> f64 {
        2f64.powi(-(P as i32) / 2) * (1.0 + z.abs().to_f64()).powi((n + m + 1) as i32)
    }

    #[test]
    fn taylor_row_a_is_next_coefficient() {
        let (f, ray) = ray(&CatalogSpec::log_branch("2"), &[0; 8], 2.0);
        for n in 0..7 {
            let a = ray.A(n).unwrap();
            let expect = HpComplex::from_rational(P, &f.coeff(n + 1));
            assert!(a.dist(&expect) < 1e-70, "n = {n}");
        }
    }

    /// Formula route against the exact numerator coefficient rescaled by
    /// both normalization factors.
    #[test]
    fn formula_matches_exact_numerator() {
        let sched = [0, 1, 1, 2, 2, 3, 3, 3, 4, 4];
        let (_, ray) = ray(&CatalogSpec::log_branch("1"), &sched, 1.0);
        for n in 0..sched.len() - 1 {
            let (num, exact) = difference_numerator(&ray.entries[n], &ray.entries[n + 1]);
            // numerator is a single monomial at K_n
            let k = contact_exponent(&ray.entries[n]);
            assert!(num.coeffs().iter().enumerate().all(|(j, c)| j == k || *c == 0), "n = {n}");
            let via_exact = (&ray.norms[n].scale * &ray.norms[n + 1].scale).scale_rational(&exact);
            let a = ray.A(n).unwrap();
            let tol = 1e-60 * (1.0 + via_exact.abs().to_f64());
            assert!(a.dist(&via_exact).to_f64() <= tol, "n = {n}: {a:?} vs {via_exact:?}");
        }
    }

    #[test]
    fn exp_row_identity() {
        let (_, ray) = ray(&CatalogSpec::Exp, &[1, 1, 1, 1], 1.0);
        let a = ray.A(1).unwrap();
        for (x, y) in [(0.3, 0.0), (-0.45, 0.2), (0.1, -0.7)] {
            let z = HpComplex::from_f64(P, x, y);
            let res = difference_identity_residual(&ray.entries[1], &ray.entries[2], &a, &z, &ray.norms[1], &ray.norms[2])
                .unwrap();
            assert!(res.abs() < 1e-30);
            assert!(res.abs() < bound(1, 1, &z));
        }
    }

    #[test]
    fn rational_row_identity() {
        let (_, ray) = ray(&CatalogSpec::rational(&["1", "2"], &["1", "1"]), &[1; 7], 2.0);
        let a = ray.A(4).unwrap();
        let z = HpComplex::from_f64(P, 0.25, 0.0);
        let res =
            difference_identity_residual(&ray.entries[4], &ray.entries[5], &a, &z, &ray.norms[4], &ray.norms[5]).unwrap();
        assert!(res.abs() < 1e-30);
    }

    #[test]
    fn block_interior_pair_is_zero() {
        let (_, ray) = ray(&CatalogSpec::geometric(), &[1; 5], 1.0);
        let a = ray.A(2).unwrap();
        assert!(a.is_zero());
        let z = HpComplex::from_f64(P, 0.3, 0.2);
        let res =
            difference_identity_residual(&ray.entries[2], &ray.entries[3], &a, &z, &ray.norms[2], &ray.norms[3]).unwrap();
        assert!(res.is_zero());
    }

    #[test]
    fn errors() {
        let f = catalog_make(&CatalogSpec::geometric()).unwrap();
        let e1 = pade(&f, 1, 1).unwrap();
        let e3 = pade(&f, 3, 3).unwrap();
        let n1 = normalize_denominator(&e1, 1.0, Provenance::Declared, P).unwrap();
        let n3 = normalize_denominator(&e3, 1.0, Provenance::Declared, P).unwrap();
        assert!(matches!(A_coefficient(&e1, &e3, &n1, &n3), Err(Error::Schedule(_))));
        let e2 = pade(&f, 2, 1).unwrap();
        let n2 = normalize_denominator(&e2, 1.0, Provenance::Declared, P).unwrap();
        let a = A_coefficient(&e1, &e2, &n1, &n2).unwrap();
        let near_pole = HpComplex::from_f64(P, 1.0 + 1e-9, 0.0);
        assert!(matches!(
            difference_identity_residual(&e1, &e2, &a, &near_pole, &n1, &n2),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn tail_series_examples() {
        let (g, ray_g) = ray(&CatalogSpec::geometric(), &[1; 12], 1.0);
        let rep = tail_series_check(&g, &ray_g, 3, 6, &HpComplex::from_f64(P, 0.3, 0.1), 0.1, 1.0).unwrap();
        assert_eq!(rep.partial_sum, 0.0);
        assert!(rep.error < 1e-70);

        let (f, ray_f) = ray(&CatalogSpec::rational(&["1", "2"], &["1", "1"]), &[1; 22], 2.0);
        let rep = tail_series_check(&f, &ray_f, 5, 15, &HpComplex::from_f64(P, 0.4, 0.0), 0.1, 2.0).unwrap();
        assert!(rep.gap <= 2.0 * 0.2f64.powi(20), "{rep:?}");

        let sched: Vec<usize> = (0..26).map(|n: usize| (n as f64).sqrt().floor() as usize).collect();
        let (l, ray_l) = ray(&CatalogSpec::log_branch("1"), &sched, 1.0);
        let rep = tail_series_check(&l, &ray_l, 8, 16, &HpComplex::from_f64(P, 0.3, 0.0), 0.1, 1.0).unwrap();
        assert!(rep.gap <= rep.tail_bound, "{rep:?}");

        let no_ref = PowerSeries::from_fn("plain", |_| Rational::from(1));
        assert!(matches!(
            tail_series_check(&no_ref, &ray_g, 0, 1, &HpComplex::zero(P), 0.1, 1.0),
            Err(Error::Capability(_))
        ));
    }
}
