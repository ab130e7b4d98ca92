//! Configurable-precision complex numbers on top of MPFR floats.
//!
//! Every value carries its own precision; binary operations round to the
//! precision of the left operand (round-to-nearest).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

pub const DEFAULT_PRECISION: u32 = 256;
pub const MIN_PRECISION: u32 = 64;

/// Complex number with MPFR real and imaginary parts.
#[derive(Clone, PartialEq)]
pub struct HpComplex {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.17e} {:+.17e}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl HpComplex {
    pub fn zero(prec: u32) -> Self {
        HpComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        HpComplex::from_f64(prec, 1.0, 0.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        HpComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        HpComplex { re: Float::with_val(prec, q), im: Float::new(prec) }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        HpComplex { re, im }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        HpComplex { re, im }
    }

    /// `r·e^{iθ}` with `r`, `θ` given as f64.
    pub fn from_polar_f64(prec: u32, r: f64, theta: f64) -> Self {
        let r = Float::with_val(prec, r);
        let (s, c) = Float::with_val(prec, theta).sin_cos(Float::new(prec));
        HpComplex { re: Float::with_val(prec, &r * &c), im: Float::with_val(prec, &r * &s) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        HpComplex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        HpComplex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let a = Float::with_val(p, self.re.square_ref());
        a + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec();
        HpComplex { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        let p = self.prec();
        HpComplex { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.norm_sqr();
        HpComplex {
            re: Float::with_val(p, &self.re / &d),
            im: Float::with_val(p, -Float::with_val(p, &self.im / &d)),
        }
    }

    pub fn powu(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = HpComplex::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        HpComplex { re: Float::with_val(p, self.abs().ln()), im: self.arg() }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        HpComplex { re: Float::with_val(p, &m * &c), im: Float::with_val(p, &m * &s) }
    }

    /// Principal power `self^alpha` for a real exponent.
    pub fn powf(&self, alpha: &Float) -> Self {
        if self.is_zero() {
            return HpComplex::zero(self.prec());
        }
        self.ln().scale(alpha).exp()
    }

    pub fn dist(&self, other: &HpComplex) -> Float {
        (self - other).abs()
    }
}

impl<'a> Add<&'a HpComplex> for &'a HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: &HpComplex) -> HpComplex {
        let p = self.prec();
        HpComplex { re: Float::with_val(p, &self.re + &rhs.re), im: Float::with_val(p, &self.im + &rhs.im) }
    }
}

impl<'a> Sub<&'a HpComplex> for &'a HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: &HpComplex) -> HpComplex {
        let p = self.prec();
        HpComplex { re: Float::with_val(p, &self.re - &rhs.re), im: Float::with_val(p, &self.im - &rhs.im) }
    }
}

impl<'a> Mul<&'a HpComplex> for &'a HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: &HpComplex) -> HpComplex {
        let p = self.prec();
        let rr = Float::with_val(p, &self.re * &rhs.re);
        let ii = Float::with_val(p, &self.im * &rhs.im);
        let ri = Float::with_val(p, &self.re * &rhs.im);
        let ir = Float::with_val(p, &self.im * &rhs.re);
        HpComplex { re: rr - ii, im: ri + ir }
    }
}

impl<'a> Div<&'a HpComplex> for &'a HpComplex {
    type Output = HpComplex;
    fn div(self, rhs: &HpComplex) -> HpComplex {
        let p = self.prec();
        let d = rhs.norm_sqr();
        let rr = Float::with_val(p, &self.re * &rhs.re);
        let ii = Float::with_val(p, &self.im * &rhs.im);
        let ir = Float::with_val(p, &self.im * &rhs.re);
        let ri = Float::with_val(p, &self.re * &rhs.im);
        HpComplex { re: (rr + ii) / &d, im: (ir - ri) / &d }
    }
}

impl Add for HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: HpComplex) -> HpComplex {
        &self + &rhs
    }
}

impl Sub for HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: HpComplex) -> HpComplex {
        &self - &rhs
    }
}

impl Mul for HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: HpComplex) -> HpComplex {
        &self * &rhs
    }
}

impl Div for HpComplex {
    type Output = HpComplex;
    fn div(self, rhs: HpComplex) -> HpComplex {
        &self / &rhs
    }
}

impl Neg for &HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        let p = self.prec();
        HpComplex { re: Float::with_val(p, -&self.re), im: Float::with_val(p, -&self.im) }
    }
}

impl Neg for HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        -&self
    }
}

/// `|x|^{1/n}`; zero maps to zero.
pub fn abs_root(x: &Float, n: u64) -> Float {
    let p = x.prec();
    if x.is_zero() {
        return Float::new(p);
    }
    let l = Float::with_val(p, x.abs_ref()).ln() / Float::with_val(p, n);
    l.exp()
}

/// `|q|^{1/n}` for an exact rational.
pub fn rational_abs_root(prec: u32, q: &Rational, n: u64) -> Float {
    abs_root(&Float::with_val(prec, q), n)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `2^{-k}` at the given precision.
pub fn two_pow_neg(prec: u32, k: i32) -> Float {
    Float::with_val(prec, 2).pow(-k)
}
