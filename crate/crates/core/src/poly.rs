//! Dense univariate polynomials, ascending degree.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Coefficient;

/// Polynomial `c0 + c1*x + ... + cd*x^d` with trailing zeros trimmed.
///
/// The zero polynomial has no stored coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T> Polynomial<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T> + Sub<Output = T> + Neg<Output = T>,
{
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Substitutes another polynomial for the indeterminate.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc * inner.clone() + Self::constant(c.clone()))
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Vec<U> {
        self.coeffs.iter().map(f).collect()
    }
}

impl<T> Zero for Polynomial<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T> + Sub<Output = T> + Neg<Output = T>,
{
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T> One for Polynomial<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T> + Sub<Output = T> + Neg<Output = T>,
{
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T> Add for Polynomial<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T> + Sub<Output = T> + Neg<Output = T>,
{
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Self::new(long)
    }
}

impl<T> Neg for Polynomial<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T> + Sub<Output = T> + Neg<Output = T>,
{
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T> Sub for Polynomial<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T> + Sub<Output = T> + Neg<Output = T>,
{
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T> Mul for Polynomial<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T> + Sub<Output = T> + Neg<Output = T>,
{
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl Coefficient for Polynomial<BigRational> {
    fn from_rational(r: BigRational) -> Self {
        Self::constant(r)
    }

    fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn try_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => Some(Self::constant(self.coeffs[0].recip())),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn p(c: &[(i64, i64)]) -> Polynomial<Q> {
        Polynomial::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        let a = p(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(a.degree(), Some(0));
        assert!(p(&[(0, 1)]).is_zero());
        assert_eq!(Polynomial::<Q>::zero().degree(), None);
    }

    #[test]
    fn product_and_eval() {
        // (x - 1)(x + 1) = x^2 - 1
        let a = p(&[(-1, 1), (1, 1)]);
        let b = p(&[(1, 1), (1, 1)]);
        let prod = a * b;
        assert_eq!(prod, p(&[(-1, 1), (0, 1), (1, 1)]));
        assert_eq!(prod.eval(&q(3, 1)), q(8, 1));
    }

    #[test]
    fn compose_shift() {
        // x^2 at x + 1 -> 1 + 2x + x^2
        let sq = Polynomial::monomial(q(1, 1), 2);
        let shift = p(&[(1, 1), (1, 1)]);
        assert_eq!(sq.compose(&shift), p(&[(1, 1), (2, 1), (1, 1)]));
    }

    #[test]
    fn only_constants_invert() {
        assert_eq!(p(&[(2, 1)]).try_inverse(), Some(p(&[(1, 2)])));
        assert_eq!(Polynomial::<Q>::x().try_inverse(), None);
        assert_eq!(Polynomial::<Q>::zero().try_inverse(), None);
    }
}
