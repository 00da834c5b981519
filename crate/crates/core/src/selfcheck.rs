//! Built-in oracle and identity checks, sized to run in a few seconds.

use std::f64::consts::{LN_2, PI};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::herschel::{herschel_coefficients, Precision};
use crate::poly::Polynomial;
use crate::polylog::{polylog, polylog_coefficients, polylog_direct};
use crate::scalar::pow_usize;
use crate::sequences::{self, SequenceFamily};
use crate::series::compose_with_one_minus_exp;
use crate::zero_diff::{self, factorial};

type Q = BigRational;
type QPoly = Polynomial<BigRational>;
type C = Complex<f64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn binom(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn fail(msg: impl Into<String>) -> Result<std::result::Result<(), String>> {
    Ok(Err(msg.into()))
}

type CheckFn = fn() -> Result<std::result::Result<(), String>>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("zero_differences", check_zero_differences),
    ("herschel_vs_composition", check_herschel),
    ("bernoulli", check_bernoulli),
    ("genocchi", check_genocchi),
    ("euler_polynomials", check_euler),
    ("eulerian", check_eulerian),
    ("polylog_closed_forms", check_polylog_closed_forms),
    ("polylog_continuation", check_polylog_continuation),
    ("polylog_direct_agreement", check_polylog_direct),
    ("polylog_duplication", check_polylog_duplication),
    ("polylog_precision", check_polylog_precision),
];

/// Runs every check; errors raised inside a check count as failures.
pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, check)| {
            let (passed, detail) = match check() {
                Ok(Ok(())) => (true, String::new()),
                Ok(Err(msg)) => (false, msg),
                Err(e) => (false, e.to_string()),
            };
            CheckOutcome { name, passed, detail }
        })
        .collect()
}

fn check_zero_differences() -> Result<std::result::Result<(), String>> {
    for n in 0..=20usize {
        for j in 0..=n {
            let mut pos = BigUint::zero();
            let mut neg = BigUint::zero();
            for k in 0..=j {
                let term = binom(j, k) * BigUint::from(k).pow(n as u32);
                if (j - k) % 2 == 0 {
                    pos += term;
                } else {
                    neg += term;
                }
            }
            if zero_diff::delta_zero(j, n)? != pos - neg {
                return fail(format!("Δ^{j} 0^{n} disagrees with the direct sum"));
            }
        }
    }
    for n in 0..=100 {
        if zero_diff::delta_zero(n, n)? != factorial(n) {
            return fail(format!("Δ^{n} 0^{n} ≠ {n}!"));
        }
    }
    // Bell numbers from the Bell triangle
    let mut tri = vec![BigUint::one()];
    for n in 1..=20usize {
        let s: BigUint = (0..=n).map(|j| zero_diff::stirling2(n, j)).sum::<Result<_>>()?;
        let mut next = vec![tri.last().expect("nonempty").clone()];
        for v in &tri {
            let e = next.last().expect("nonempty") + v;
            next.push(e);
        }
        tri = next;
        if s != tri[0] {
            return fail(format!("row {n} of S(n, j) does not sum to the Bell number"));
        }
    }
    Ok(Ok(()))
}

fn check_herschel() -> Result<std::result::Result<(), String>> {
    let order = 15;
    for seed in 1..=5i64 {
        let c: Vec<Q> = (0..=order as i64)
            .map(|j| q((seed * 7 + j * 13) % 11 - 5, (seed + 3 * j) % 7 + 1))
            .collect();
        if herschel_coefficients(&c, order)? != compose_with_one_minus_exp(&c, order).into_coeffs() {
            return fail(format!("test provider {seed}"));
        }
    }
    let lambda = q(3, 2);
    for family in SequenceFamily::ALL {
        let c = family.provider(order, Some(&lambda))?;
        let a: Vec<QPoly> = herschel_coefficients(&c, order)?;
        if a != compose_with_one_minus_exp(&c, order).into_coeffs() {
            return fail(format!("{} provider", family.name()));
        }
    }
    Ok(Ok(()))
}

fn constants(v: Vec<QPoly>) -> Vec<Q> {
    v.into_iter().map(|p| p.coeff(0)).collect()
}

fn check_bernoulli() -> Result<std::result::Result<(), String>> {
    let n_max = 30;
    let b = sequences::bernoulli_numbers(n_max)?;
    if b != constants(sequences::egf_oracle(SequenceFamily::Bernoulli, n_max, None)?) {
        return fail("transform disagrees with series division");
    }
    for n in 1..=n_max {
        let s: Q = (0..=n).map(|k| Q::from_integer(binom(n + 1, k).into()) * &b[k]).sum();
        if !s.is_zero() {
            return fail(format!("recurrence fails at n = {n}"));
        }
    }
    if b[12] != q(-691, 2730) {
        return fail(format!("B_12 = {}", b[12]));
    }
    Ok(Ok(()))
}

fn check_genocchi() -> Result<std::result::Result<(), String>> {
    let n_max = 30;
    let g = sequences::genocchi_numbers(n_max)?;
    let oracle = constants(sequences::egf_oracle(SequenceFamily::Genocchi, n_max, None)?);
    let b = sequences::bernoulli_numbers(n_max)?;
    for n in 0..=n_max {
        let gq = Q::from_integer(g[n].clone());
        if gq != oracle[n] {
            return fail(format!("G_{n} disagrees with series division"));
        }
        let two_n = Q::from_integer(BigInt::one() << n);
        if gq != q(2, 1) * (Q::one() - two_n) * &b[n] {
            return fail(format!("G_{n} ≠ 2(1 - 2^{n}) B_{n}"));
        }
        if n >= 3 && n % 2 == 1 && !g[n].is_zero() {
            return fail(format!("G_{n} is not zero"));
        }
    }
    Ok(Ok(()))
}

fn check_euler() -> Result<std::result::Result<(), String>> {
    let n_max = 20;
    let e = sequences::euler_polynomials(n_max)?;
    if e != sequences::egf_oracle(SequenceFamily::EulerPoly, n_max, None)? {
        return fail("transform disagrees with series division");
    }
    let shift = QPoly::new(vec![Q::one(), Q::one()]);
    for (n, p) in e.iter().enumerate() {
        let lhs = p.compose(&shift) + p.clone();
        if lhs != QPoly::monomial(q(2, 1), n) {
            return fail(format!("E_{n}(x + 1) + E_{n}(x) ≠ 2x^{n}"));
        }
        let scaled = p.eval(&q(1, 2)) * Q::from_integer(BigInt::one() << n);
        if !scaled.is_integer() {
            return fail(format!("2^{n} E_{n}(1/2) is not an integer"));
        }
    }
    if sequences::euler_number(4)? != BigInt::from(5) {
        return fail("E_4 ≠ 5");
    }
    Ok(Ok(()))
}

fn descent_counts(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let descents = perm.windows(2).filter(|w| w[0] > w[1]).count();
        counts[descents + 1] += 1;
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return counts;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

fn check_eulerian() -> Result<std::result::Result<(), String>> {
    for n in 1..=15 {
        if sequences::eulerian_polynomial(n)? != sequences::frobenius_eulerian(n)? {
            return fail(format!("two forms of A_{n} disagree"));
        }
    }
    for n in 1..=6 {
        let a = sequences::eulerian_polynomial(n)?;
        let expected = QPoly::new(descent_counts(n).into_iter().map(|c| q(c as i64, 1)).collect());
        if a != expected {
            return fail(format!("A_{n} disagrees with descent counts"));
        }
        if a.eval(&Q::one()) != Q::from_integer(factorial(n).into()) {
            return fail(format!("A_{n}(1) ≠ {n}!"));
        }
    }
    for lambda in [q(2, 1), q(-1, 3), q(5, 2)] {
        let h = sequences::carlitz_h_values(10, &lambda)?;
        for (n, hn) in h.iter().enumerate().skip(1) {
            let a = sequences::eulerian_polynomial(n)?.eval(&lambda);
            if a != &lambda * pow_usize(&(&lambda - Q::one()), n) * hn {
                return fail(format!("A_{n}(λ) ≠ λ(λ - 1)^{n} H_{n}(λ) at λ = {lambda}"));
            }
        }
    }
    Ok(Ok(()))
}

fn rel_err(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn check_polylog_closed_forms() -> Result<std::result::Result<(), String>> {
    let one = C::new(1.0, 0.0);
    for x in [C::new(0.3, 0.2), C::new(-0.5, 0.1), C::new(0.1, -0.6), C::new(-0.9, 0.0)] {
        let li = |s: f64| polylog(C::new(s, 0.0), x);
        if (li(1.0)? + (one - x).ln()).norm() > 1e-12 {
            return fail(format!("Li_1 at {x}"));
        }
        if (li(0.0)? - x / (one - x)).norm() > 1e-12 {
            return fail(format!("Li_0 at {x}"));
        }
        if rel_err(li(-2.0)?, x * (one + x) / ((one - x) * (one - x) * (one - x))) > 1e-11 {
            return fail(format!("Li_-2 at {x}"));
        }
    }
    Ok(Ok(()))
}

fn check_polylog_continuation() -> Result<std::result::Result<(), String>> {
    let two = C::new(2.0, 0.0);
    let v = polylog(two, C::new(-1.0, 0.0))?;
    if (v.re + PI * PI / 12.0).abs() > 1e-11 || v.im.abs() > 1e-11 {
        return fail(format!("Li_2(-1) = {v}"));
    }
    let v = polylog(two, C::new(0.5, 0.0))?;
    if (v.re - (PI * PI / 12.0 - LN_2 * LN_2 / 2.0)).abs() > 1e-12 {
        return fail(format!("Li_2(1/2) = {v}"));
    }
    Ok(Ok(()))
}

fn check_polylog_direct() -> Result<std::result::Result<(), String>> {
    for s in [C::new(2.0, 0.0), C::new(-1.5, 0.0), C::new(1.0, 1.0), C::new(3.0, -2.0)] {
        for x in [C::new(0.5, 0.0), C::new(-0.4, 0.3), C::new(0.0, -0.6)] {
            let series = polylog(s, x)?;
            let direct = polylog_direct(s, x, 1e-17)?;
            if (series - direct).norm() > 1e-10 * (1.0 + direct.norm()) {
                return fail(format!("s = {s}, x = {x}: {series} vs {direct}"));
            }
        }
    }
    Ok(Ok(()))
}

fn check_polylog_duplication() -> Result<std::result::Result<(), String>> {
    for s in [2.0, 3.0, 1.5] {
        let s = C::new(s, 0.0);
        for x in [C::new(0.3, 0.0), C::new(0.0, 0.4), C::new(-0.25, 0.25)] {
            let lhs = polylog(s, x)? + polylog(s, -x)?;
            let rhs = C::new(2.0, 0.0).powc(C::new(1.0, 0.0) - s) * polylog(s, x * x)?;
            if rel_err(lhs, rhs) > 1e-9 {
                return fail(format!("s = {s}, x = {x}"));
            }
        }
    }
    Ok(Ok(()))
}

fn check_polylog_precision() -> Result<std::result::Result<(), String>> {
    let s = C::new(2.0, 0.0);
    let lo = polylog_coefficients(s, 40, Precision::Auto)?;
    let hi = polylog_coefficients(s, 40, Precision::AutoScaled(2))?;
    for n in 1..=40 {
        // b_n = B_{n-1}/n! vanishes for even n ≥ 4; those rows are measured
        // against the preceding coefficient
        let scale = if n >= 4 && n % 2 == 0 { hi[n - 1].norm() } else { hi[n].norm() };
        if (lo[n] - hi[n]).norm() > 1e-10 * scale {
            return fail(format!("b_{n} changes with precision"));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descent_counts_small() {
        assert_eq!(descent_counts(3), vec![0, 1, 4, 1]);
        assert_eq!(descent_counts(1), vec![0, 1]);
    }

    #[test]
    fn all_checks_pass() {
        for outcome in run_all() {
            assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
        }
    }
}
