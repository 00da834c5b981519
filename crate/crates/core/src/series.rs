//! Exact truncated power series in one formal variable.
//!
//! Series store ordinary coefficients. Callers converting to or from
//! exponential generating functions multiply or divide by `n!` themselves.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Coefficient;
use crate::zero_diff::factorial;

/// `c_0 + c_1 X + ... + c_N X^N + O(X^{N+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Coefficient> TruncatedSeries<R> {
    /// Series of order `coeffs.len() - 1`; an empty list is read as `[0]`.
    pub fn new(mut coeffs: Vec<R>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(R::zero());
        }
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![R::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut coeffs = vec![R::zero(); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    /// Drops terms above `order`; a no-op if the series is already shorter.
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }

    /// Product with a series of rational coefficients.
    pub fn mul_rational(&self, other: &TruncatedSeries<BigRational>) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.scale(b);
                }
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse to the same order.
    ///
    /// Fails with [`Error::NonInvertible`] unless the constant term is a unit.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_inverse().ok_or(Error::NonInvertible)?;
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = R::zero();
            for i in 1..=k {
                acc = acc + self.coeffs[i].clone() * out[k - i].clone();
            }
            out.push(-(inv0.clone() * acc));
        }
        Ok(Self { coeffs: out })
    }

    /// Quotient `self / denom`, truncated to the smaller order.
    pub fn div(&self, denom: &Self) -> Result<Self> {
        Ok(self.mul(&denom.inverse()?))
    }
}

impl<R: Coefficient> Add for TruncatedSeries<R> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let order = self.order().min(rhs.order());
        Self {
            coeffs: self
                .coeffs
                .into_iter()
                .zip(rhs.coeffs)
                .take(order + 1)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<R: Coefficient> Neg for TruncatedSeries<R> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Coefficient> Sub for TruncatedSeries<R> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `ln(1 - X) = -X - X^2/2 - X^3/3 - ...`
pub fn log_one_minus(order: usize) -> TruncatedSeries<BigRational> {
    TruncatedSeries::from_fn(order, |k| {
        if k == 0 {
            BigRational::zero()
        } else {
            -rat(1, k as i64)
        }
    })
}

/// `(1 - X)^{1-x}` over `ℚ[x]`: the `X^k` coefficient is
/// `(x-1) x (x+1) ... (x+k-2) / k!`.
pub fn binomial_series(order: usize) -> TruncatedSeries<Polynomial<BigRational>> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut rising = Polynomial::one();
    for k in 0..=order {
        if k > 0 {
            // factor (x - 1 + (k - 1))
            let shift = BigRational::from_integer(BigInt::from(k as i64 - 2));
            rising = rising * Polynomial::new(vec![shift, BigRational::one()]);
        }
        let inv_fact = BigRational::new(BigInt::one(), factorial(k).into());
        coeffs.push(rising.scale(&inv_fact));
    }
    TruncatedSeries::new(coeffs)
}

/// `1 - e^{-t} = t - t^2/2! + t^3/3! - ...`
pub fn one_minus_exp_neg(order: usize) -> TruncatedSeries<BigRational> {
    TruncatedSeries::from_fn(order, |m| {
        if m == 0 {
            return BigRational::zero();
        }
        let v = BigRational::new(BigInt::one(), factorial(m).into());
        if m % 2 == 1 {
            v
        } else {
            -v
        }
    })
}

/// `e^{at}` for rational `a`.
pub fn exp_series(a: &BigRational, order: usize) -> TruncatedSeries<BigRational> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = BigRational::one();
    for m in 0..=order {
        if m > 0 {
            term = term * a / BigRational::from_integer(BigInt::from(m));
        }
        coeffs.push(term.clone());
    }
    TruncatedSeries::new(coeffs)
}

/// Taylor coefficients in `t` of `Σ_j c_j X^j` with `X = 1 - e^{-t}`.
///
/// With `c_j` the coefficients of `φ(1 - X)`, this is the expansion of
/// `φ(e^{-t})`, computed by Horner's rule over truncated series.
pub fn compose_with_one_minus_exp<R: Coefficient>(c: &[R], order: usize) -> TruncatedSeries<R> {
    let x = one_minus_exp_neg(order);
    // X has no constant term, so c_j only reaches t^j and beyond.
    let used = c.len().min(order + 1);
    let mut acc = TruncatedSeries::<R>::zero(order);
    for cj in c[..used].iter().rev() {
        acc = acc.mul_rational(&x);
        acc.coeffs[0] = acc.coeffs[0].clone() + cj.clone();
    }
    acc
}
