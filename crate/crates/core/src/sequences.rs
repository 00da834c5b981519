//! Classical number and polynomial families through the Herschel transform.
//!
//! Each family is described by the coefficients `c_j` of `φ(1 - X)` where
//! `φ(e^{-t})` is its exponential generating function. The values follow from
//! [`herschel_egf_numbers`]. [`egf_oracle`] recomputes the same numbers by
//! dividing generating-function series directly, without touching the
//! difference table.
//!
//! Some of the closed forms commonly printed for these families carry sign
//! or index slips. Everything here is derived from the coefficient sequences
//! themselves and checked against the series-division oracle:
//!
//! - Bernoulli: the `j`-th term of the explicit sum carries `(-1)^{n+j+1}`,
//!   not a uniform `(-1)^{n+1}`.
//! - Euler polynomials: `c_j = 2^{-j} Σ_{k≤j} (-2)^k C(1-x, k)`; the geometric
//!   factor is `1/(1 - X/2) = Σ X^k / 2^k`.
//! - Genocchi: the inner sum of `c_j` runs to `k = j` and the outer sum
//!   alternates with `(-1)^{n-j}`; also `(1 - X) ln(1 - X) = -X + Σ X^n/((n-1)n)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::herschel::herschel_egf_numbers;
use crate::poly::Polynomial;
use crate::scalar::{pow_usize, Coefficient};
use crate::series::{binomial_series, exp_series, log_one_minus, TruncatedSeries};
use crate::zero_diff::{self, factorial};

type Q = BigRational;
type QPoly = Polynomial<BigRational>;

fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn fact_q(n: usize) -> Q {
    Q::from_integer(factorial(n).into())
}

fn into_integer(q: Q, what: impl FnOnce() -> String) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Internal(format!("{} = {q} is not an integer", what())))
    }
}

// ---------------------------------------------------------------- Bernoulli

/// `c_0 = 1`, `c_j = -1/(j(j+1))`: the coefficients of `-(1-X) ln(1-X) / X`.
pub fn bernoulli_provider(n_max: usize) -> Vec<Q> {
    (0..=n_max)
        .map(|j| {
            if j == 0 {
                Q::one()
            } else {
                -Q::new(BigInt::one(), BigInt::from(j * (j + 1)))
            }
        })
        .collect()
}

/// `B_0..=B_{n_max}` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n_max: usize) -> Result<Vec<Q>> {
    herschel_egf_numbers(&bernoulli_provider(n_max), n_max)
}

pub fn bernoulli(n: usize) -> Result<Q> {
    let c = bernoulli_provider(n);
    let row = zero_diff::row(n)?;
    // B_n = [n=0] + Σ_{j≥1} (-1)^{n+j+1} Δ^j 0^n / (j(j+1))
    let mut acc = if n == 0 { Q::one() } else { Q::zero() };
    for j in 1..=n {
        let term = -&c[j] * Q::from_integer(row[j].clone().into());
        acc = if (n + j) % 2 == 1 { acc + term } else { acc - term };
    }
    Ok(acc)
}

// ------------------------------------------------------------ Euler family

/// Coefficients of `(1-X)^{1-x} / (1 - X/2)` in `ℚ[x]`.
pub fn euler_provider(n_max: usize) -> Result<Vec<QPoly>> {
    let half_geometric = TruncatedSeries::<QPoly>::from_fn(n_max, |k| match k {
        0 => QPoly::one(),
        1 => QPoly::constant(Q::new(BigInt::from(-1), BigInt::from(2))),
        _ => QPoly::zero(),
    })
    .inverse()?;
    Ok(binomial_series(n_max).mul(&half_geometric).into_coeffs())
}

pub fn euler_polynomials(n_max: usize) -> Result<Vec<QPoly>> {
    herschel_egf_numbers(&euler_provider(n_max)?, n_max)
}

/// `E_n(x)`, with generating function `2 e^{xt} / (e^t + 1)`.
pub fn euler_polynomial(n: usize) -> Result<QPoly> {
    Ok(euler_polynomials(n)?.pop().expect("n_max + 1 entries"))
}

/// Euler number `E_n = 2^n E_n(1/2)`.
pub fn euler_number(n: usize) -> Result<BigInt> {
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let v = euler_polynomial(n)?.eval(&half) * pow_usize(&int(2), n);
    into_integer(v, || format!("2^{n} E_{n}(1/2)"))
}

// ---------------------------------------------------------- Eulerian family

/// `A_n(λ) = Σ_{j=1}^{n} λ^j (1-λ)^{n-j} Δ^j 0^n`, with `A_0 = 1`.
pub fn eulerian_polynomial(n: usize) -> Result<QPoly> {
    if n == 0 {
        return Ok(QPoly::one());
    }
    let row = zero_diff::row(n)?;
    let lambda = QPoly::x();
    let one_minus = QPoly::new(vec![int(1), int(-1)]);
    let mut acc = QPoly::zero();
    for (j, d) in row.iter().enumerate().skip(1) {
        let basis = pow_usize(&lambda, j) * pow_usize(&one_minus, n - j);
        acc = acc + basis.scale(&Q::from_integer(d.clone().into()));
    }
    Ok(acc)
}

/// Frobenius' form `A_n(λ) = λ Σ_{j=1}^{n} (λ-1)^{n-j} Δ^j 0^n`, for `n ≥ 1`.
pub fn frobenius_eulerian(n: usize) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("Frobenius' formula needs n ≥ 1".into()));
    }
    let row = zero_diff::row(n)?;
    let minus_one = QPoly::new(vec![int(-1), int(1)]);
    let mut acc = QPoly::zero();
    for (j, d) in row.iter().enumerate().skip(1) {
        acc = acc + pow_usize(&minus_one, n - j).scale(&Q::from_integer(d.clone().into()));
    }
    Ok(QPoly::x() * acc)
}

fn check_lambda(lambda: &Q) -> Result<()> {
    if lambda.is_zero() || lambda.is_one() {
        Err(Error::Domain(format!("λ = {lambda} (must differ from 0 and 1)")))
    } else {
        Ok(())
    }
}

/// `c_0 = 1`, `c_j = λ^{j-1}/(λ-1)^j`: the coefficients of
/// `(1 - X) / (1 - λX/(λ-1))`.
pub fn carlitz_provider(lambda: &Q, n_max: usize) -> Result<Vec<Q>> {
    check_lambda(lambda)?;
    let ratio = lambda / (lambda - Q::one());
    let inv = (lambda - Q::one()).recip();
    let mut out = vec![Q::one()];
    let mut cur = inv;
    for _ in 1..=n_max {
        out.push(cur.clone());
        cur = cur * &ratio;
    }
    Ok(out)
}

/// Carlitz' `H_n(λ) = A_n(λ) / (λ (λ-1)^n)`, the EGF coefficients of
/// `(1-λ)/(e^t - λ)`.
pub fn carlitz_h(n: usize, lambda: &Q) -> Result<Q> {
    Ok(carlitz_h_values(n, lambda)?.pop().expect("n + 1 entries"))
}

pub fn carlitz_h_values(n_max: usize, lambda: &Q) -> Result<Vec<Q>> {
    herschel_egf_numbers(&carlitz_provider(lambda, n_max)?, n_max)
}

// ---------------------------------------------------------------- Genocchi

/// `c_0 = 0`, `c_1 = 1`, `c_j = 2^{1-j} [1 - Σ_{k=2}^{j} 2^{k-1}/((k-1)k)]`:
/// the coefficients of `-(1-X) ln(1-X) / (1 - X/2)`.
pub fn genocchi_provider(n_max: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut inner = Q::zero();
    for j in 0..=n_max {
        let c = match j {
            0 => Q::zero(),
            1 => Q::one(),
            _ => {
                inner = inner
                    + Q::new(
                        num_traits::pow(BigInt::from(2), j - 1),
                        BigInt::from((j - 1) * j),
                    );
                (Q::one() - &inner) / Q::from_integer(num_traits::pow(BigInt::from(2), j - 1))
            }
        };
        out.push(c);
    }
    out
}

/// `G_1..=G_{n_max}` behind a leading `G_0 = 0`.
pub fn genocchi_numbers(n_max: usize) -> Result<Vec<BigInt>> {
    herschel_egf_numbers(&genocchi_provider(n_max), n_max)?
        .into_iter()
        .enumerate()
        .map(|(n, g)| into_integer(g, || format!("G_{n}")))
        .collect()
}

/// Genocchi number `G_n`, with generating function `2t / (e^t + 1)`.
pub fn genocchi(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("Genocchi numbers start at n = 1".into()));
    }
    Ok(genocchi_numbers(n)?.pop().expect("n + 1 entries"))
}

// -------------------------------------------------------- families, oracle

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceFamily {
    Bernoulli,
    EulerPoly,
    Eulerian,
    CarlitzH,
    Genocchi,
}

impl SequenceFamily {
    pub const ALL: [SequenceFamily; 5] = [
        SequenceFamily::Bernoulli,
        SequenceFamily::EulerPoly,
        SequenceFamily::Eulerian,
        SequenceFamily::CarlitzH,
        SequenceFamily::Genocchi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceFamily::Bernoulli => "bernoulli",
            SequenceFamily::EulerPoly => "euler_poly",
            SequenceFamily::Eulerian => "eulerian",
            SequenceFamily::CarlitzH => "carlitz_h",
            SequenceFamily::Genocchi => "genocchi",
        }
    }

    /// Whether the family is evaluated pointwise at a rational `λ`.
    pub fn needs_lambda(self) -> bool {
        matches!(self, SequenceFamily::Eulerian | SequenceFamily::CarlitzH)
    }

    /// `c_0..=c_{n_max}` over `ℚ[x]`; numeric families give constants.
    ///
    /// The Eulerian family is represented by its normalized form `H_n(λ)`,
    /// so it shares the Carlitz provider.
    pub fn provider(self, n_max: usize, lambda: Option<&Q>) -> Result<Vec<QPoly>> {
        let consts = |v: Vec<Q>| v.into_iter().map(QPoly::constant).collect();
        Ok(match self {
            SequenceFamily::Bernoulli => consts(bernoulli_provider(n_max)),
            SequenceFamily::EulerPoly => euler_provider(n_max)?,
            SequenceFamily::Eulerian | SequenceFamily::CarlitzH => {
                consts(carlitz_provider(require_lambda(self, lambda)?, n_max)?)
            }
            SequenceFamily::Genocchi => consts(genocchi_provider(n_max)),
        })
    }

    /// `n! [t^n]` of the generating function via the Herschel transform.
    pub fn herschel_values(self, n_max: usize, lambda: Option<&Q>) -> Result<Vec<QPoly>> {
        herschel_egf_numbers(&self.provider(n_max, lambda)?, n_max)
    }
}

fn require_lambda(family: SequenceFamily, lambda: Option<&Q>) -> Result<&Q> {
    lambda.ok_or_else(|| {
        Error::InvalidArgument(format!("family {} needs a value for λ", family.name()))
    })
}

/// `n! [t^n]` of the family's generating function by exact series division.
///
/// Numeric families come back as constant polynomials. For the Eulerian and
/// Carlitz families the values are `H_n(λ)` at the given rational `λ`.
pub fn egf_oracle(family: SequenceFamily, n_max: usize, lambda: Option<&Q>) -> Result<Vec<QPoly>> {
    let ones = exp_series(&Q::one(), n_max + 1);
    let values: TruncatedSeries<QPoly> = match family {
        SequenceFamily::Bernoulli => {
            // t / (e^t - 1) = 1 / Σ t^k/(k+1)!
            let denom = TruncatedSeries::from_fn(n_max, |k| ones.coeffs()[k + 1].clone());
            lift(&denom).inverse()?
        }
        SequenceFamily::EulerPoly => {
            // 2 e^{xt} / (e^t + 1)
            let numer = TruncatedSeries::from_fn(n_max, |k| {
                QPoly::monomial(int(2) / fact_q(k), k)
            });
            let denom = lift(&(ones.clone().truncate(n_max) + TruncatedSeries::one(n_max)));
            numer.div(&denom)?
        }
        SequenceFamily::Eulerian | SequenceFamily::CarlitzH => {
            // (1 - λ) / (e^t - λ)
            let lambda = require_lambda(family, lambda)?;
            check_lambda(lambda)?;
            let denom = ones.clone().truncate(n_max)
                - TruncatedSeries::constant(lambda.clone(), n_max);
            let numer = TruncatedSeries::constant(Q::one() - lambda, n_max);
            lift(&numer.div(&denom)?)
        }
        SequenceFamily::Genocchi => {
            // 2t / (e^t + 1)
            let denom = ones.clone().truncate(n_max) + TruncatedSeries::one(n_max);
            let two_t = TruncatedSeries::from_fn(n_max, |k| if k == 1 { int(2) } else { Q::zero() });
            lift(&two_t.div(&denom)?)
        }
    };
    Ok(values
        .into_coeffs()
        .into_iter()
        .enumerate()
        .map(|(n, v)| v.scale(&fact_q(n)))
        .collect())
}

fn lift(s: &TruncatedSeries<Q>) -> TruncatedSeries<QPoly> {
    TruncatedSeries::new(s.coeffs().iter().cloned().map(QPoly::constant).collect())
}

/// Coefficients of `-(1-X) ln(1-X) / (1 - X/2)` by series arithmetic, for
/// cross-checking [`genocchi_provider`].
pub fn genocchi_provider_by_series(n_max: usize) -> Result<Vec<Q>> {
    let one_minus = TruncatedSeries::from_fn(n_max, |k| match k {
        0 => int(1),
        1 => int(-1),
        _ => Q::zero(),
    });
    let half = TruncatedSeries::from_fn(n_max, |k| match k {
        0 => int(1),
        1 => Q::new(BigInt::from(-1), BigInt::from(2)),
        _ => Q::zero(),
    });
    let numer = -log_one_minus(n_max).mul(&one_minus);
    Ok(numer.div(&half)?.into_coeffs())
}

/// `true` when every coefficient is a positive integer.
pub fn has_positive_integer_coeffs(p: &QPoly) -> bool {
    p.coeffs()
        .iter()
        .skip_while(|c| c.is_zero())
        .all(|c| c.is_integer() && c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn qp(c: &[(i64, i64)]) -> QPoly {
        QPoly::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn binom(n: usize, k: usize) -> BigInt {
        let mut b = BigInt::one();
        for i in 0..k {
            b = b * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        b
    }

    /// B_n from Σ_{k=0}^{n} C(n+1,k) B_k = 0, B_0 = 1.
    fn bernoulli_by_recurrence(n_max: usize) -> Vec<Q> {
        let mut b = vec![Q::one()];
        for n in 1..=n_max {
            let s: Q = (0..n).map(|k| Q::from_integer(binom(n + 1, k)) * &b[k]).sum();
            b.push(-s / Q::from_integer(BigInt::from(n + 1)));
        }
        b
    }

    /// Eulerian numbers by counting descents over every permutation.
    fn eulerian_by_permutations(n: usize) -> Vec<u64> {
        fn permute(items: &mut Vec<usize>, k: usize, counts: &mut [u64]) {
            if k == items.len() {
                let descents = items.windows(2).filter(|w| w[0] > w[1]).count();
                counts[descents + 1] += 1;
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                permute(items, k + 1, counts);
                items.swap(k, i);
            }
        }
        let mut counts = vec![0u64; n + 1];
        permute(&mut (0..n).collect(), 0, &mut counts);
        counts
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0).unwrap(), int(1));
        assert_eq!(bernoulli(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_against_recurrence() {
        let expected = bernoulli_by_recurrence(30);
        assert_eq!(bernoulli_numbers(30).unwrap(), expected);
        for (n, b) in expected.iter().enumerate() {
            assert_eq!(&bernoulli(n).unwrap(), b, "B_{n}");
        }
    }

    #[test]
    fn euler_polynomial_examples() {
        assert_eq!(euler_polynomial(0).unwrap(), QPoly::one());
        assert_eq!(euler_polynomial(1).unwrap(), qp(&[(-1, 2), (1, 1)]));
        assert_eq!(
            euler_polynomial(3).unwrap(),
            qp(&[(1, 4), (0, 1), (-3, 2), (1, 1)])
        );
    }

    #[test]
    fn euler_provider_closed_form() {
        // c_j = 2^{-j} Σ_{k≤j} (-2)^k C(1-x, k)
        let c = euler_provider(8).unwrap();
        let binomials = binomial_series(8);
        for (j, cj) in c.iter().enumerate() {
            let mut expected = QPoly::zero();
            for k in 0..=j {
                // binomial_series holds (-1)^k C(1-x,k), so multiply by 2^k
                let w = Q::from_integer(num_traits::pow(BigInt::from(2), k))
                    / Q::from_integer(num_traits::pow(BigInt::from(2), j));
                expected = expected + binomials.coeffs()[k].scale(&w);
            }
            assert_eq!(cj, &expected, "c_{j}");
        }
    }

    #[test]
    fn euler_numbers() {
        let expected = [1, 0, -1, 0, 5, 0, -61, 0, 1385];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(euler_number(n).unwrap(), BigInt::from(*e), "E_{n}");
        }
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian_polynomial(0).unwrap(), QPoly::one());
        assert_eq!(eulerian_polynomial(1).unwrap(), QPoly::x());
        assert_eq!(eulerian_polynomial(2).unwrap(), qp(&[(0, 1), (1, 1), (1, 1)]));
        assert_eq!(eulerian_polynomial(3).unwrap(), qp(&[(0, 1), (1, 1), (4, 1), (1, 1)]));
        assert_eq!(frobenius_eulerian(1).unwrap(), QPoly::x());
        assert_eq!(frobenius_eulerian(2).unwrap(), qp(&[(0, 1), (1, 1), (1, 1)]));
        assert_eq!(frobenius_eulerian(3).unwrap(), qp(&[(0, 1), (1, 1), (4, 1), (1, 1)]));
        assert!(frobenius_eulerian(0).is_err());
    }

    #[test]
    fn eulerian_against_permutations() {
        for n in 1..=7 {
            let counts = eulerian_by_permutations(n);
            let poly = eulerian_polynomial(n).unwrap();
            for (k, &cnt) in counts.iter().enumerate() {
                assert_eq!(poly.coeff(k), int(cnt as i64), "A({n},{k})");
            }
        }
    }

    #[test]
    fn carlitz_examples() {
        for lambda in [int(2), rat(1, 3), int(-5)] {
            assert_eq!(carlitz_h(0, &lambda).unwrap(), int(1));
        }
        assert_eq!(carlitz_h(1, &int(2)).unwrap(), int(1));
        assert_eq!(carlitz_h(2, &int(2)).unwrap(), int(3));
        assert!(matches!(carlitz_h(3, &int(1)), Err(Error::Domain(_))));
        assert!(matches!(carlitz_h(3, &int(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn genocchi_examples() {
        assert_eq!(genocchi(1).unwrap(), BigInt::from(1));
        assert_eq!(genocchi(2).unwrap(), BigInt::from(-1));
        assert_eq!(genocchi(3).unwrap(), BigInt::from(0));
        assert_eq!(genocchi(4).unwrap(), BigInt::from(1));
        assert_eq!(genocchi(6).unwrap(), BigInt::from(-3));
        assert!(genocchi(0).is_err());
    }

    #[test]
    fn genocchi_provider_matches_series_product() {
        assert_eq!(genocchi_provider(20), genocchi_provider_by_series(20).unwrap());
    }

    #[test]
    fn oracle_examples() {
        let b = egf_oracle(SequenceFamily::Bernoulli, 4, None).unwrap();
        let expected = [rat(1, 1), rat(-1, 2), rat(1, 6), rat(0, 1), rat(-1, 30)];
        assert_eq!(b, expected.map(QPoly::constant).to_vec());

        let g = egf_oracle(SequenceFamily::Genocchi, 2, None).unwrap();
        assert_eq!(g, [int(0), int(1), int(-1)].map(QPoly::constant).to_vec());

        let h = egf_oracle(SequenceFamily::Eulerian, 2, Some(&int(2))).unwrap();
        assert_eq!(h, [int(1), int(1), int(3)].map(QPoly::constant).to_vec());

        let e = egf_oracle(SequenceFamily::EulerPoly, 1, None).unwrap();
        assert_eq!(e[1], qp(&[(-1, 2), (1, 1)]));

        assert!(egf_oracle(SequenceFamily::CarlitzH, 3, None).is_err());
        assert!(egf_oracle(SequenceFamily::CarlitzH, 3, Some(&int(1))).is_err());
    }

    #[test]
    fn families_agree_with_oracle() {
        let lambda = rat(3, 7);
        for family in SequenceFamily::ALL {
            let n_max = if family == SequenceFamily::EulerPoly { 12 } else { 20 };
            let l = family.needs_lambda().then_some(&lambda);
            assert_eq!(
                family.herschel_values(n_max, l).unwrap(),
                egf_oracle(family, n_max, l).unwrap(),
                "{}",
                family.name()
            );
        }
    }
}
