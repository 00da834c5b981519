//! Scalar abstractions shared by the exact and the floating-point paths.
//!
//! Exact computations are generic over [`Coefficient`], a commutative ring
//! with a rational scaling. Floating-point Herschel sums are generic over
//! [`WorkingScalar`], implemented for `Complex<f64>` and the
//! multiprecision [`MpComplex`](crate::mp::MpComplex).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, One, ToPrimitive, Zero};

/// Exact coefficient ring for truncated series and the exact Herschel transform.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: BigRational) -> Self;

    /// Multiplication by a rational scalar.
    fn scale(&self, r: &BigRational) -> Self;

    /// Multiplicative inverse, if `self` is a unit of the ring.
    fn try_inverse(&self) -> Option<Self>;

    fn from_integer(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }
}

impl Coefficient for BigRational {
    fn from_rational(r: BigRational) -> Self {
        r
    }

    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Complex number at some working precision, used by the numeric Herschel sum.
///
/// Arithmetic between two values runs at the larger of their precisions.
pub trait WorkingScalar:
    Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Largest precision (in significand bits) this representation supports,
    /// or `None` when it is unbounded.
    const MAX_PRECISION: Option<u32>;

    fn zero(precision: u32) -> Self;
    fn from_biguint(n: &BigUint, precision: u32) -> Self;
    fn from_rational(r: &BigRational, precision: u32) -> Self;
    fn from_complex64(z: Complex<f64>, precision: u32) -> Self;

    /// Division by a positive integer.
    fn div_biguint(&self, d: &BigUint, precision: u32) -> Self;

    /// Copy rounded (or widened) to `precision` bits.
    fn rounded(&self, precision: u32) -> Self;

    fn to_complex64(&self) -> Complex<f64>;
}

macro_rules! impl_working_float {
    ($f:ty, $bits:expr) => {
        impl WorkingScalar for Complex<$f> {
            const MAX_PRECISION: Option<u32> = Some($bits);

            fn zero(_: u32) -> Self {
                Complex::new(0.0, 0.0)
            }

            fn from_biguint(n: &BigUint, _: u32) -> Self {
                Complex::new(n.to_f64().unwrap_or(f64::INFINITY) as $f, 0.0)
            }

            fn from_rational(r: &BigRational, _: u32) -> Self {
                Complex::new(r.to_f64().unwrap_or(f64::NAN) as $f, 0.0)
            }

            fn from_complex64(z: Complex<f64>, _: u32) -> Self {
                Complex::new(z.re as $f, z.im as $f)
            }

            fn div_biguint(&self, d: &BigUint, _: u32) -> Self {
                let d = d.to_f64().unwrap_or(f64::INFINITY);
                Complex::new(
                    (self.re as f64 / d) as $f,
                    (self.im as f64 / d) as $f,
                )
            }

            fn rounded(&self, _: u32) -> Self {
                *self
            }

            fn to_complex64(&self) -> Complex<f64> {
                Complex::new(self.re as f64, self.im as f64)
            }
        }
    };
}

impl_working_float!(f64, 53);

/// Running sum with Knuth's two-sum error term.
///
/// The compensation is exact for round-to-nearest arithmetic at a single
/// precision, and complex addition is componentwise, so one accumulator serves
/// both the real and imaginary parts.
#[derive(Debug, Clone)]
pub struct CompensatedSum<S> {
    sum: S,
    carry: S,
}

impl<S> CompensatedSum<S>
where
    S: Clone + Add<Output = S> + Sub<Output = S>,
{
    pub fn new(zero: S) -> Self {
        Self {
            sum: zero.clone(),
            carry: zero,
        }
    }

    pub fn add(&mut self, x: S) {
        let t = self.sum.clone() + x.clone();
        let z = t.clone() - self.sum.clone();
        let err = (self.sum.clone() - (t.clone() - z.clone())) + (x - z);
        self.sum = t;
        self.carry = self.carry.clone() + err;
    }

    pub fn total(&self) -> S {
        self.sum.clone() + self.carry.clone()
    }
}

/// `x^n` with `0^0 = 1`, for exact scalars.
pub fn pow_usize<T: Clone + One + Mul<Output = T>>(x: &T, n: usize) -> T {
    num_traits::pow(x.clone(), n)
}

/// Magnitude of a complex value over a generic float.
pub fn cabs<F: Float>(z: Complex<F>) -> F {
    z.re.hypot(z.im)
}
