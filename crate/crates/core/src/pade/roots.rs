//! Simultaneous polynomial root refinement (Aberth–Ehrlich).

use rug::Float;

use crate::error::{Error, Result};
use crate::series::hp::{two_pow_neg, HpComplex};

/// `p(z)` and `p'(z)` by a single Horner pass over real coefficients.
fn eval_with_derivative(coeffs: &[Float], z: &HpComplex) -> (HpComplex, HpComplex) {
    let prec = z.prec();
    let mut p = HpComplex::zero(prec);
    let mut dp = HpComplex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &p * z;
        p.re += c;
    }
    (p, dp)
}

#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<HpComplex>,
    /// `max |p(root)|`.
    pub residual: Float,
    pub iterations: usize,
}

/// All roots of the real polynomial with coefficients `coeffs` (lowest first,
/// nonzero leading coefficient) to residual below `2^{-prec/2}`.
pub fn aberth_ehrlich(coeffs: &[Float], prec: u32, max_iter: usize) -> Result<RootSet> {
    let d = coeffs.len().saturating_sub(1);
    let tol = two_pow_neg(prec, (prec / 2) as i32);
    if d == 0 {
        return Ok(RootSet { roots: Vec::new(), residual: Float::new(prec), iterations: 0 });
    }
    if d == 1 {
        let r = Float::with_val(prec, -&coeffs[0]) / &coeffs[1];
        let root = HpComplex::from_real(r);
        let residual = eval_with_derivative(coeffs, &root).0.abs();
        return Ok(RootSet { roots: vec![root], residual, iterations: 0 });
    }

    // start on a circle whose radius is the geometric mean of the root moduli
    let ratio = Float::with_val(prec, &coeffs[0] / &coeffs[d]).abs();
    let radius = if ratio.is_zero() { Float::with_val(prec, 1) } else { (ratio.ln() / d as u32).exp() };
    let mut z: Vec<HpComplex> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            HpComplex::from_polar_f64(prec, 1.0, theta).scale(&radius)
        })
        .collect();

    let step_tol = two_pow_neg(prec, prec as i32 - 16);
    let mut residual = Float::with_val(prec, f64::INFINITY);
    for it in 0..max_iter {
        let mut max_step_rel = Float::new(prec);
        residual = Float::new(prec);
        for i in 0..d {
            let (p, dp) = eval_with_derivative(coeffs, &z[i]);
            let ap = p.abs();
            if ap > residual {
                residual = ap.clone();
            }
            if p.is_zero() {
                continue;
            }
            let ratio = &p / &dp;
            let mut sum = HpComplex::zero(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    sum = &sum + &(&z[i] - zj).recip();
                }
            }
            let denom = &HpComplex::one(prec) - &(&ratio * &sum);
            let w = &ratio / &denom;
            if !w.is_finite() {
                continue;
            }
            let scale = Float::with_val(prec, z[i].abs() + 1u32);
            let rel = w.abs() / scale;
            if rel > max_step_rel {
                max_step_rel = rel;
            }
            z[i] = &z[i] - &w;
        }
        if residual < tol || max_step_rel < step_tol {
            residual = z.iter().map(|r| eval_with_derivative(coeffs, r).0.abs()).fold(Float::new(prec), |a, b| a.max(&b));
            if residual < tol {
                return Ok(RootSet { roots: z, residual, iterations: it + 1 });
            }
            if max_step_rel < step_tol {
                break;
            }
        }
    }
    Err(Error::NumericFailure {
        message: format!("root refinement of a degree-{d} polynomial did not reach 2^-{}", prec / 2),
        best_residual: residual.to_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn floats(c: &[f64]) -> Vec<Float> {
        c.iter().map(|&x| Float::with_val(256, x)).collect()
    }

    #[test]
    fn real_and_complex_roots() {
        // (z − 1)(z − 10)(z² + 1) = z⁴ − 11z³ + 11z² − 11z + 10
        let rs = aberth_ehrlich(&floats(&[10.0, -11.0, 11.0, -11.0, 1.0]), 256, 500).unwrap();
        let mut found: Vec<(f64, f64)> = rs.roots.iter().map(|r| r.to_f64()).collect();
        found.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let expect = [(0.0, -1.0), (0.0, 1.0), (1.0, 0.0), (10.0, 0.0)];
        for (f, e) in found.iter().zip(expect) {
            assert!((f.0 - e.0).abs() < 1e-30 && (f.1 - e.1).abs() < 1e-30, "{f:?} vs {e:?}");
        }
        assert!(rs.residual < 1e-38);
    }

    #[test]
    fn double_root() {
        // (1 − z)² = 1 − 2z + z²
        let rs = aberth_ehrlich(&floats(&[1.0, -2.0, 1.0]), 256, 2000).unwrap();
        // residual 2^-128 only pins a double root to about 2^-64
        for r in rs.roots {
            assert!(r.dist(&HpComplex::one(256)) < 1e-18);
        }
    }

    #[test]
    fn degree_zero_and_one() {
        assert!(aberth_ehrlich(&floats(&[3.0]), 128, 10).unwrap().roots.is_empty());
        let rs = aberth_ehrlich(&floats(&[1.0, -0.1]), 128, 10).unwrap();
        assert!((rs.roots[0].re.to_f64() - 10.0).abs() < 1e-12);
    }
}
