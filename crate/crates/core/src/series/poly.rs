//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;

use rug::{Float, Rational};

use super::hp::HpComplex;

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})z", c)?,
                _ => write!(f, "({})z^{}", c, k)?,
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from small integer ratios `(num, den)`.
    pub fn from_ratios(c: &[(i64, i64)]) -> Self {
        Polynomial::new(c.iter().map(|&(n, d)| Rational::from((n, d))).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if *c == 0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| Rational::from(c * k)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Rational::from(1) / self.leading();
        self.scale(&inv)
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        Polynomial::new(out)
    }

    /// Product truncated to degree `< len`.
    pub fn mul_trunc(&self, other: &Polynomial, len: usize) -> Self {
        let mut out = vec![Rational::new(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += Rational::from(a * b);
            }
        }
        Polynomial::new(out)
    }

    pub fn truncate(&self, len: usize) -> Self {
        Polynomial::new(self.coeffs.iter().take(len).cloned().collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let lead = divisor.leading();
        if rem.len() <= dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::new(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = Rational::from(&rem[k + dd] / &lead);
            if c != 0 {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= Rational::from(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if (self.degree() == Some(0) && !other.is_zero()) || (other.degree() == Some(0) && !self.is_zero()) {
            return Polynomial::one();
        }
        if let (Some(a), Some(b)) = (self.mod_p(), other.mod_p()) {
            // the true gcd reduces to a divisor of the gcd mod p
            if modp::gcd_degree(a, b) == 0 {
                return Polynomial::one();
            }
        }
        self.gcd_euclid(other)
    }

    fn gcd_euclid(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Coefficients of the integer multiple `lcm(denominators)·self` reduced
    /// mod `modp::P`; `None` for the zero polynomial or when `P` divides the
    /// leading coefficient.
    fn mod_p(&self) -> Option<Vec<u64>> {
        self.coeffs.last()?;
        let mut l = rug::Integer::from(1);
        for c in &self.coeffs {
            l.lcm_mut(c.denom());
        }
        let p = rug::Integer::from(modp::P);
        let red: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| {
                let v = rug::Integer::from(c.numer() * rug::Integer::from(&l / c.denom()));
                v.modulo(&p).to_u64().expect("reduced")
            })
            .collect();
        (*red.last()? != 0).then_some(red)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Coefficients rounded to `prec`-bit floats.
    pub fn to_floats(&self, prec: u32) -> Vec<Float> {
        self.coeffs.iter().map(|c| Float::with_val(prec, c)).collect()
    }

    pub fn eval(&self, z: &HpComplex) -> HpComplex {
        eval_float_coeffs(&self.to_floats(z.prec()), z)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| Rational::from(c * k as u32)).collect(),
        )
    }
}

/// Horner evaluation of a real-coefficient polynomial at a complex point.
pub fn eval_float_coeffs(coeffs: &[Float], z: &HpComplex) -> HpComplex {
    let p = z.prec();
    let mut re = Float::new(p);
    let mut im = Float::new(p);
    for c in coeffs.iter().rev() {
        // (re + i im)(zr + i zi) + c
        let nr = Float::with_val(p, &re * &z.re) - Float::with_val(p, &im * &z.im) + c;
        let ni = Float::with_val(p, &re * &z.im) + Float::with_val(p, &im * &z.re);
        re = nr;
        im = ni;
    }
    HpComplex::from_parts(re, im)
}

/// Horner evaluation of a complex-coefficient polynomial.
pub fn eval_complex_coeffs(coeffs: &[HpComplex], z: &HpComplex) -> HpComplex {
    let mut acc = HpComplex::zero(z.prec());
    for c in coeffs.iter().rev() {
        acc = &(&acc * z) + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[(i64, i64)]) -> Polynomial {
        Polynomial::from_ratios(c)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let q = p(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(q.degree(), Some(0));
        assert!(p(&[(0, 1)]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn division_identity() {
        let a = p(&[(1, 1), (-3, 2), (0, 1), (5, 7), (2, 1)]);
        let b = p(&[(2, 1), (0, 1), (1, 3)]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().map_or(true, |d| d < 2));
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = p(&[(-1, 1), (1, 1)]); // z - 1
        let a = common.mul(&p(&[(2, 1), (1, 1)]));
        let b = common.mul(&p(&[(3, 1), (0, 1), (1, 1)]));
        assert_eq!(a.gcd(&b), common);
        assert_eq!(p(&[(1, 1), (1, 1)]).gcd(&p(&[(1, 1), (-1, 1)])), Polynomial::one());
    }

    #[test]
    fn modular_shortcut_matches_euclid() {
        let cases = [
            (p(&[(1, 3), (-2, 1), (7, 5)]), p(&[(5, 2), (0, 1), (1, 9), (4, 1)])),
            (p(&[(1, 1), (1, 1)]).mul(&p(&[(2, 7), (1, 1)])), p(&[(2, 7), (1, 1)]).mul(&p(&[(-3, 1), (1, 1)]))),
            (p(&[(1, 1), (-1, 1)]), p(&[(1, 1), (0, 1), (-1, 1)])),
            (p(&[(4, 1)]), p(&[(1, 1), (1, 1)])),
        ];
        for (a, b) in &cases {
            assert_eq!(a.gcd(b), a.gcd_euclid(b));
            assert_eq!(b.gcd(a), b.gcd_euclid(a));
        }
    }

    proptest::proptest! {
        #[test]
        fn gcd_agrees_with_euclid(
            a in proptest::collection::vec((-9i64..10, 1u64..6), 1..6),
            b in proptest::collection::vec((-9i64..10, 1u64..6), 1..6),
            c in proptest::collection::vec((-3i64..4, 1u64..3), 1..3),
        ) {
            let q = |v: &[(i64, u64)]| Polynomial::new(v.iter().map(|&(n, d)| Rational::from((n, d))).collect());
            let (a, b) = (q(&a).mul(&q(&c)), q(&b).mul(&q(&c)));
            proptest::prop_assert_eq!(a.gcd(&b), a.gcd_euclid(&b));
        }
    }

    #[test]
    fn hp_eval_agrees_with_exact() {
        let a = p(&[(1, 3), (-2, 1), (7, 5)]);
        let x = Rational::from((3, 4));
        let exact = a.eval_rational(&x);
        let z = HpComplex::from_rational(200, &x);
        let v = a.eval(&z);
        let diff = Float::with_val(200, &v.re - &Float::with_val(200, &exact));
        assert!(diff.abs() < 1e-55);
        assert!(v.im.is_zero());
    }
}

/// Polynomial arithmetic over the prime field `F_P`, `P = 2^61 − 1`.
mod modp {
    pub const P: u64 = (1 << 61) - 1;

    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn inv(a: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a, P - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// Degree of `gcd(a, b)` over `F_P`; both inputs nonzero.
    pub fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // a <- a mod b
            let lb = inv(*b.last().unwrap());
            while a.len() >= b.len() {
                let k = mul(*a.last().unwrap(), lb);
                let off = a.len() - b.len();
                for (i, bi) in b.iter().enumerate() {
                    a[off + i] = (a[off + i] + P - mul(k, *bi)) % P;
                }
                trim(&mut a);
                if a.is_empty() {
                    break;
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        a.len().saturating_sub(1)
    }
}
