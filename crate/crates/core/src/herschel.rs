//! Herschel's theorem as a coefficient transform.
//!
//! Given the coefficients `c_j` of `φ(1 - X) = Σ c_j X^j`, the Taylor
//! coefficients of `φ(e^{-t}) = Σ a_n t^n` are
//!
//! ```text
//! a_n = ((-1)^n / n!) Σ_{j=0}^{n} (-1)^j c_j Δ^j 0^n
//! ```
//!
//! Providers always supply `c_j` itself, the literal coefficient of `X^j`.
//! This equals `(-1)^j φ^{(j)}(1) / j!`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{Coefficient, CompensatedSum, WorkingScalar};
use crate::zero_diff::{self, factorial};

/// Source of the coefficients `c_j` of `φ(1 - X)`.
pub trait HerschelProvider<T> {
    /// `c_j`, or `None` if the provider does not reach index `j`.
    fn coefficient(&self, j: usize) -> Option<T>;
}

impl<T: Clone> HerschelProvider<T> for [T] {
    fn coefficient(&self, j: usize) -> Option<T> {
        self.get(j).cloned()
    }
}

impl<T: Clone> HerschelProvider<T> for Vec<T> {
    fn coefficient(&self, j: usize) -> Option<T> {
        self.get(j).cloned()
    }
}

/// Provider defined by a closure over the index.
pub struct FnProvider<F>(pub F);

impl<T, F: Fn(usize) -> T> HerschelProvider<T> for FnProvider<F> {
    fn coefficient(&self, j: usize) -> Option<T> {
        Some((self.0)(j))
    }
}

fn collect<T, P: HerschelProvider<T> + ?Sized>(provider: &P, n_max: usize) -> Result<Vec<T>> {
    (0..=n_max)
        .map(|j| {
            provider.coefficient(j).ok_or_else(|| {
                Error::InvalidArgument(format!("provider has no coefficient c_{j} (need up to c_{n_max})"))
            })
        })
        .collect()
}

/// `Σ_{j=0}^{n} (-1)^j c_j Δ^j 0^n`, exactly.
fn signed_difference_sum<R: Coefficient>(c: &[R], n: usize) -> Result<R> {
    let row = zero_diff::row(n)?;
    let mut acc = R::zero();
    for (j, d) in row.iter().enumerate() {
        if c[j].is_zero() || num_traits::Zero::is_zero(d) {
            continue;
        }
        let term = c[j].scale(&BigRational::from_integer(BigInt::from(d.clone())));
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    Ok(acc)
}

/// Taylor coefficients `a_0..=a_{n_max}` of `φ(e^{-t})`, exactly.
pub fn herschel_coefficients<R, P>(provider: &P, n_max: usize) -> Result<Vec<R>>
where
    R: Coefficient,
    P: HerschelProvider<R> + ?Sized,
{
    let c = collect(provider, n_max)?;
    (0..=n_max)
        .map(|n| {
            let sum = signed_difference_sum(&c, n)?;
            let inv = BigRational::new(BigInt::from(1), factorial(n).into());
            let a = sum.scale(&inv);
            Ok(if n % 2 == 0 { a } else { -a })
        })
        .collect()
}

/// Exponential-generating-function numbers `s_n = n! a_n`, exactly.
pub fn herschel_egf_numbers<R, P>(provider: &P, n_max: usize) -> Result<Vec<R>>
where
    R: Coefficient,
    P: HerschelProvider<R> + ?Sized,
{
    let c = collect(provider, n_max)?;
    (0..=n_max)
        .map(|n| {
            let sum = signed_difference_sum(&c, n)?;
            Ok(if n % 2 == 0 { sum } else { -sum })
        })
        .collect()
}

/// Working precision of the numeric transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    /// The same significand width for every row.
    Bits(u32),
    /// Row `n` runs at `64 + bits(max_j Δ^j 0^n)`, so at least 64 bits survive
    /// the cancellation in the alternating sum.
    Auto,
    /// Like [`Precision::Auto`] with every row width multiplied by the factor.
    AutoScaled(u32),
}

impl From<u32> for Precision {
    fn from(bits: u32) -> Self {
        Precision::Bits(bits)
    }
}

/// Guard bits kept above the largest difference in a row.
pub const AUTO_GUARD_BITS: u32 = 64;

impl Precision {
    /// Significand width used for row `n`.
    pub fn bits_for_row(self, n: usize) -> Result<u32> {
        match self {
            Precision::Bits(b) => Ok(b),
            Precision::Auto => Ok(AUTO_GUARD_BITS + zero_diff::row_max_bits(n)? as u32),
            Precision::AutoScaled(k) => Ok(k.max(1) * (AUTO_GUARD_BITS + zero_diff::row_max_bits(n)? as u32)),
        }
    }

    pub fn validate<S: WorkingScalar>(self) -> Result<()> {
        match self {
            Precision::Bits(b) if b < 53 => Err(Error::InvalidPrecision(b)),
            Precision::Bits(b) => match S::MAX_PRECISION {
                Some(max) if b > max => Err(Error::InvalidArgument(format!(
                    "{b} bits requested but the scalar type carries only {max}"
                ))),
                _ => Ok(()),
            },
            _ if S::MAX_PRECISION.is_some() => Err(Error::InvalidArgument(
                "automatic precision needs a multiprecision scalar".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Source of `c_j` at a requested working precision.
pub trait NumericProvider<S> {
    fn coefficient(&self, j: usize, precision: u32) -> S;

    /// All of `c_0..=c_{n_max}` at one precision. Override when the values
    /// share expensive setup.
    fn coefficients(&self, n_max: usize, precision: u32) -> Vec<S> {
        (0..=n_max).map(|j| self.coefficient(j, precision)).collect()
    }
}

/// Exact rational coefficients rounded to the working precision.
pub struct RationalProvider<'a>(pub &'a [BigRational]);

impl<S: WorkingScalar> NumericProvider<S> for RationalProvider<'_> {
    fn coefficient(&self, j: usize, precision: u32) -> S {
        match self.0.get(j) {
            Some(r) => S::from_rational(r, precision),
            None => S::zero(precision),
        }
    }
}

/// Double-precision complex coefficients from a closure.
pub struct ComplexFnProvider<F>(pub F);

impl<S: WorkingScalar, F: Fn(usize) -> Complex<f64>> NumericProvider<S> for ComplexFnProvider<F> {
    fn coefficient(&self, j: usize, precision: u32) -> S {
        S::from_complex64((self.0)(j), precision)
    }
}

/// Taylor coefficients `a_0..=a_{n_max}` evaluated in floating point.
///
/// Differences of zero are exact integers rounded to the row's working
/// precision; the sum runs in ascending `j` with compensated accumulation.
pub fn herschel_coefficients_numeric<S, P>(
    provider: &P,
    n_max: usize,
    precision: impl Into<Precision>,
) -> Result<Vec<S>>
where
    S: WorkingScalar,
    P: NumericProvider<S> + ?Sized,
{
    let precision = precision.into();
    precision.validate::<S>()?;
    let row_bits: Vec<u32> = (0..=n_max)
        .map(|n| precision.bits_for_row(n))
        .collect::<Result<_>>()?;
    let top = row_bits.iter().copied().max().unwrap_or(53);
    let c = provider.coefficients(n_max, top);
    (0..=n_max)
        .map(|n| numeric_row(&c, n, row_bits[n]))
        .collect()
}

/// `a_n` from precomputed coefficients at `bits` of working precision.
pub(crate) fn numeric_row<S: WorkingScalar>(c: &[S], n: usize, bits: u32) -> Result<S> {
    let row = zero_diff::row(n)?;
    let mut acc = CompensatedSum::new(S::zero(bits));
    for (j, d) in row.iter().enumerate() {
        if num_traits::Zero::is_zero(d) {
            continue;
        }
        let term = c[j].rounded(bits) * S::from_biguint(d, bits);
        acc.add(if j % 2 == 0 { term } else { -term });
    }
    let sum = acc.total();
    let a = sum.div_biguint(&factorial(n), bits);
    Ok(if n % 2 == 0 { a } else { -a })
}

/// `Σ_j |c_j| Δ^j 0^n / n!` in double precision: the scale against which the
/// rounding error of row `n` is measured.
pub fn row_magnitude(c: &[Complex<f64>], n: usize) -> Result<f64> {
    use num_traits::ToPrimitive;
    let row = zero_diff::row(n)?;
    let fact = factorial(n);
    let mut total = 0.0;
    for (j, d) in row.iter().enumerate() {
        // ratio computed exactly before rounding, to survive large n
        let ratio = BigRational::new(BigInt::from(d.clone()), BigInt::from(fact.clone()));
        total += c[j].norm() * ratio.to_f64().unwrap_or(f64::INFINITY);
    }
    Ok(total)
}
