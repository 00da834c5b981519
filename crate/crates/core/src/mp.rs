//! Multiprecision complex numbers backed by `astro-float`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigUint, Sign as BigSign};
use num_complex::Complex;
use num_rational::BigRational;

use crate::scalar::WorkingScalar;

const RM: RoundingMode = RoundingMode::ToEven;

fn float_from_biguint(n: &BigUint, precision: usize) -> BigFloat {
    let words = n.to_u64_digits();
    if words.is_empty() {
        return BigFloat::from_u64(0, precision);
    }
    // from_words reads the words as a fraction 0.m scaled by 2^e.
    let exponent = (64 * words.len()) as i32;
    let mut f = BigFloat::from_words(&words, Sign::Pos, exponent);
    f.set_precision(precision, RM)
        .expect("precision within astro-float limits");
    f
}

fn float_to_f64(f: &BigFloat) -> f64 {
    if f.is_nan() {
        return f64::NAN;
    }
    if f.is_inf() {
        return if f.is_inf_neg() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    if f.is_zero() {
        return 0.0;
    }
    let (words, _, sign, exponent, _) = f.as_raw_parts().expect("finite value");
    let top = *words.last().expect("nonzero mantissa") as f64;
    // top / 2^64 * 2^exponent, split to avoid intermediate overflow
    let mut scale = exponent as i64 - 64;
    let mut v = top;
    while scale > 1000 {
        v *= 2f64.powi(1000);
        scale -= 1000;
    }
    while scale < -1000 {
        v *= 2f64.powi(-1000);
        scale += 1000;
    }
    v *= 2f64.powi(scale as i32);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Complex number with `astro-float` parts at a fixed significand precision.
#[derive(Clone)]
pub struct MpComplex {
    re: BigFloat,
    im: BigFloat,
    precision: usize,
}

impl fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MpComplex({} + {}i @{})", self.re, self.im, self.precision)
    }
}

impl MpComplex {
    pub fn new(re: BigFloat, im: BigFloat, precision: u32) -> Self {
        Self {
            re,
            im,
            precision: precision as usize,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision as u32
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    /// `j^{-s}` for a positive integer `j`, computed as `exp(-s ln j)`.
    pub fn int_pow_neg(j: u64, s: Complex<f64>, precision: u32, consts: &mut Consts) -> Self {
        let p = precision as usize + 32;
        if j == 1 {
            return Self::from_complex64(Complex::new(1.0, 0.0), precision);
        }
        let ln_j = BigFloat::from_u64(j, p).ln(p, RM, consts);
        let sigma = BigFloat::from_f64(-s.re, p);
        let tau = BigFloat::from_f64(-s.im, p);
        let modulus = sigma.mul(&ln_j, p, RM).exp(p, RM, consts);
        let angle = tau.mul(&ln_j, p, RM);
        let (re, im) = if s.im == 0.0 {
            (modulus, BigFloat::from_u64(0, p))
        } else {
            (
                modulus.mul(&angle.cos(p, RM, consts), p, RM),
                modulus.mul(&angle.sin(p, RM, consts), p, RM),
            )
        };
        let mut out = Self::new(re, im, precision);
        out.round_to(precision as usize);
        out
    }

    fn round_to(&mut self, p: usize) {
        self.re.set_precision(p, RM).expect("valid precision");
        self.im.set_precision(p, RM).expect("valid precision");
        self.precision = p;
    }

    fn joint(&self, other: &Self) -> usize {
        self.precision.max(other.precision)
    }
}

impl Add for MpComplex {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let p = self.joint(&rhs);
        Self {
            re: self.re.add(&rhs.re, p, RM),
            im: self.im.add(&rhs.im, p, RM),
            precision: p,
        }
    }
}

impl Sub for MpComplex {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let p = self.joint(&rhs);
        Self {
            re: self.re.sub(&rhs.re, p, RM),
            im: self.im.sub(&rhs.im, p, RM),
            precision: p,
        }
    }
}

impl Mul for MpComplex {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let p = self.joint(&rhs);
        let wide = p + 64;
        let rr = self.re.mul(&rhs.re, wide, RM);
        let ii = self.im.mul(&rhs.im, wide, RM);
        let ri = self.re.mul(&rhs.im, wide, RM);
        let ir = self.im.mul(&rhs.re, wide, RM);
        Self {
            re: rr.sub(&ii, p, RM),
            im: ri.add(&ir, p, RM),
            precision: p,
        }
    }
}

impl Neg for MpComplex {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            re: self.re.neg(),
            im: self.im.neg(),
            precision: self.precision,
        }
    }
}

impl WorkingScalar for MpComplex {
    const MAX_PRECISION: Option<u32> = None;

    fn zero(precision: u32) -> Self {
        let p = precision as usize;
        Self {
            re: BigFloat::from_u64(0, p),
            im: BigFloat::from_u64(0, p),
            precision: p,
        }
    }

    fn from_biguint(n: &BigUint, precision: u32) -> Self {
        let p = precision as usize;
        Self {
            re: float_from_biguint(n, p),
            im: BigFloat::from_u64(0, p),
            precision: p,
        }
    }

    fn from_rational(r: &BigRational, precision: u32) -> Self {
        let p = precision as usize;
        let (sign, numer) = r.numer().clone().into_parts();
        let denom = r.denom().magnitude();
        let num_f = float_from_biguint(&numer, numer.bits().max(64) as usize);
        let den_f = float_from_biguint(denom, denom.bits().max(64) as usize);
        let mut re = num_f.div(&den_f, p, RM);
        if sign == BigSign::Minus {
            re = re.neg();
        }
        Self {
            re,
            im: BigFloat::from_u64(0, p),
            precision: p,
        }
    }

    fn from_complex64(z: Complex<f64>, precision: u32) -> Self {
        let p = precision as usize;
        Self {
            re: BigFloat::from_f64(z.re, p),
            im: BigFloat::from_f64(z.im, p),
            precision: p,
        }
    }

    fn div_biguint(&self, d: &BigUint, precision: u32) -> Self {
        let p = precision as usize;
        let d = float_from_biguint(d, d.bits().max(64) as usize);
        Self {
            re: self.re.div(&d, p, RM),
            im: self.im.div(&d, p, RM),
            precision: p,
        }
    }

    fn rounded(&self, precision: u32) -> Self {
        let mut out = self.clone();
        out.round_to(precision as usize);
        out
    }

    fn to_complex64(&self) -> Complex<f64> {
        Complex::new(float_to_f64(&self.re), float_to_f64(&self.im))
    }
}

/// Fresh constant cache for transcendental functions.
pub fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}
