//! Herschel's theorem on finite differences of zero, applied to exact
//! sequence families and to the polylogarithm on the cut plane.
//!
//! The transform maps the coefficients `c_j` of `φ(1 - X)` to the Taylor
//! coefficients of `φ(e^{-t})`. The core is generic: exact paths accept any
//! [`scalar::Coefficient`] ring, numeric paths any [`scalar::WorkingScalar`].

pub mod cli;
pub mod error;
pub mod herschel;
pub mod mp;
pub mod poly;
pub mod polylog;
pub mod scalar;
pub mod selfcheck;
pub mod sequences;
pub mod series;
pub mod zero_diff;

pub use error::{Error, Result};
pub use herschel::{herschel_coefficients, herschel_coefficients_numeric, herschel_egf_numbers, Precision};
pub use polylog::{polylog, polylog_coefficients, polylog_direct, polylog_eval, PolylogStatus};
pub use sequences::SequenceFamily;
pub use series::compose_with_one_minus_exp;
pub use zero_diff::ZeroDifferenceTable;

pub type Rational = num_rational::BigRational;
pub type RationalPolynomial = poly::Polynomial<Rational>;
pub type RationalSeries = series::TruncatedSeries<Rational>;
pub type PolySeries = series::TruncatedSeries<RationalPolynomial>;
pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;
pub type PolylogRequest64 = polylog::PolylogRequest<f64>;
pub type PolylogRequest32 = polylog::PolylogRequest<f32>;
pub type PolylogResult64 = polylog::PolylogResult<f64>;
pub type PolylogResult32 = polylog::PolylogResult<f32>;
