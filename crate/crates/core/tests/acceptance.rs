//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::f64::consts::{LN_2, PI};
use std::process::Command;
use std::time::Instant;

use herschel::herschel::herschel_coefficients;
use herschel::mp::MpComplex;
use herschel::poly::Polynomial;
use herschel::scalar::WorkingScalar;
use herschel::polylog::{polylog_coefficients, polylog_direct, polylog_eval, PolylogRequest, PolylogStatus};
use herschel::sequences::{self, egf_oracle, SequenceFamily};
use herschel::{compose_with_one_minus_exp, zero_diff, Precision};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = BigRational;
type QPoly = Polynomial<Q>;
type C = Complex<f64>;
type Outcome = Result<(), String>;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn qi(n: impl Into<BigInt>) -> Q {
    Q::from_integer(n.into())
}

fn binom(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: herschel::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn constants(v: Vec<QPoly>) -> Vec<Q> {
    v.into_iter().map(|p| p.coeff(0)).collect()
}

/// Bernoulli numbers by the Akiyama-Tanigawa algorithm (which yields
/// B_1 = +1/2; the sign is flipped to match t/(e^t - 1)).
fn akiyama_tanigawa(n_max: usize) -> Vec<Q> {
    let mut a: Vec<Q> = Vec::new();
    let mut out = Vec::new();
    for m in 0..=n_max {
        a.push(q(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = qi(j as i64) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    if n_max >= 1 {
        out[1] = -out[1].clone();
    }
    out
}

fn criterion_1() -> Outcome {
    let order = 25;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..20 {
        let c: Vec<Q> = (0..=order)
            .map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
            .collect();
        let a: Vec<Q> = lib(herschel_coefficients(&c, order))?;
        ensure(a == compose_with_one_minus_exp(&c, order).into_coeffs(), || {
            format!("random provider {trial}")
        })?;
    }
    let lambda = q(3, 2);
    for family in SequenceFamily::ALL {
        let c = lib(family.provider(order, Some(&lambda)))?;
        let a: Vec<QPoly> = lib(herschel_coefficients(&c, order))?;
        ensure(a == compose_with_one_minus_exp(&c, order).into_coeffs(), || {
            format!("{} provider", family.name())
        })?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let n_max = 50;
    let b = lib(sequences::bernoulli_numbers(n_max))?;
    let oracle = constants(lib(egf_oracle(SequenceFamily::Bernoulli, n_max, None))?);
    ensure(b == oracle, || "transform vs series division".into())?;
    ensure(b == akiyama_tanigawa(n_max), || "transform vs Akiyama-Tanigawa".into())?;
    for n in 1..=n_max {
        let s: Q = (0..=n).map(|k| qi(binom(n + 1, k)) * &b[k]).sum();
        ensure(s.is_zero(), || format!("recurrence at n = {n}"))?;
    }
    ensure(b[12] == q(-691, 2730), || format!("B_12 = {}", b[12]))
}

fn criterion_3() -> Outcome {
    let n_max = 40;
    let g = lib(sequences::genocchi_numbers(n_max))?;
    let oracle = constants(lib(egf_oracle(SequenceFamily::Genocchi, n_max, None))?);
    let b = akiyama_tanigawa(n_max);
    for n in 1..=n_max {
        ensure(oracle[n].is_integer(), || format!("oracle G_{n} not an integer"))?;
        ensure(qi(g[n].clone()) == oracle[n], || format!("G_{n} vs series division"))?;
        let two_n = qi(BigInt::one() << n);
        ensure(qi(g[n].clone()) == q(2, 1) * (Q::one() - two_n) * &b[n], || {
            format!("G_{n} vs 2(1 - 2^n) B_n")
        })?;
        if n >= 3 && n % 2 == 1 {
            ensure(g[n].is_zero(), || format!("G_{n} = {}", g[n]))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let n_max = 30;
    let e = lib(sequences::euler_polynomials(n_max))?;
    ensure(e == lib(egf_oracle(SequenceFamily::EulerPoly, n_max, None))?, || {
        "transform vs series division".into()
    })?;
    let shift = QPoly::new(vec![Q::one(), Q::one()]);
    for (n, p) in e.iter().enumerate() {
        ensure(p.compose(&shift) + p.clone() == QPoly::monomial(q(2, 1), n), || {
            format!("E_{n}(x + 1) + E_{n}(x) ≠ 2x^{n}")
        })?;
        let scaled = p.eval(&q(1, 2)) * qi(BigInt::one() << n);
        ensure(scaled.is_integer(), || format!("2^{n} E_{n}(1/2) = {scaled}"))?;
    }
    let e4 = e[4].eval(&q(1, 2)) * qi(16);
    ensure(e4 == qi(5), || format!("E_4 = {e4}"))
}

fn descent_counts(n: usize) -> Vec<u64> {
    fn walk(prefix: &mut Vec<usize>, used: &mut [bool], counts: &mut [u64]) {
        if prefix.len() == used.len() {
            let d = prefix.windows(2).filter(|w| w[0] > w[1]).count();
            counts[d + 1] += 1;
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                walk(prefix, used, counts);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut counts = vec![0; n + 1];
    walk(&mut Vec::new(), &mut vec![false; n], &mut counts);
    counts
}

fn criterion_5() -> Outcome {
    for n in 1..=25 {
        ensure(
            lib(sequences::eulerian_polynomial(n))? == lib(sequences::frobenius_eulerian(n))?,
            || format!("A_{n}: two forms disagree"),
        )?;
    }
    for n in 1..=8 {
        let a = lib(sequences::eulerian_polynomial(n))?;
        let brute = QPoly::new(descent_counts(n).into_iter().map(|c| qi(c)).collect());
        ensure(a == brute, || format!("A_{n} vs descent counts"))?;
    }
    for n in 1..=25 {
        let a = lib(sequences::eulerian_polynomial(n))?;
        ensure(a.eval(&Q::one()) == qi(factorial(n)), || format!("A_{n}(1) ≠ {n}!"))?;
    }
    for lambda in [q(2, 1), q(-1, 1), q(1, 2), q(-3, 7), q(5, 3)] {
        let h = lib(sequences::carlitz_h_values(25, &lambda))?;
        for n in 1..=25 {
            let a = lib(sequences::eulerian_polynomial(n))?.eval(&lambda);
            let rhs = (0..n).fold(lambda.clone(), |acc, _| acc * (&lambda - Q::one())) * &h[n];
            ensure(a == rhs, || format!("A_{n}(λ) vs λ(λ - 1)^n H_n(λ) at λ = {lambda}"))?;
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for n in 0..=30usize {
        for j in 0..=n {
            let mut acc = BigInt::zero();
            for k in 0..=j {
                let term = BigInt::from(binom(j, k) * BigUint::from(k).pow(n as u32));
                acc += if (j - k) % 2 == 0 { term } else { -term };
            }
            ensure(BigInt::from(lib(zero_diff::delta_zero(j, n))?) == acc, || {
                format!("Δ^{j} 0^{n} vs direct sum")
            })?;
        }
    }
    for n in 0..=200 {
        ensure(lib(zero_diff::delta_zero(n, n))? == factorial(n), || format!("Δ^{n} 0^{n} ≠ {n}!"))?;
    }
    // Bell numbers by B_{n+1} = Σ C(n, k) B_k
    let mut bell = vec![BigUint::one()];
    for n in 0..25 {
        let next = (0..=n).map(|k| binom(n, k) * &bell[k]).sum();
        bell.push(next);
    }
    for n in 0..=25 {
        let s: BigUint = (0..=n).map(|j| lib(zero_diff::stirling2(n, j))).sum::<Result<_, _>>()?;
        ensure(s == bell[n], || format!("Bell number {n}"))?;
    }
    Ok(())
}

fn li(s: C, x: C) -> Result<C, String> {
    let r = lib(polylog_eval(&PolylogRequest::new(s, x)))?;
    match (r.status, r.value) {
        (PolylogStatus::Converged, Some(v)) => Ok(v),
        (status, _) => Err(format!("Li_{s}({x}): {status:?}")),
    }
}

/// Ten points `x = 1 - e^{-t}` with `|t| ≤ 0.9` spread over the disk.
fn guard_grid() -> Vec<C> {
    (0..10)
        .map(|k| {
            let r = 0.9 * (k + 1) as f64 / 10.0;
            let theta = 2.0 * PI * k as f64 * 0.3819660112501051;
            let t = C::from_polar(r, theta);
            C::new(1.0, 0.0) - (-t).exp()
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let one = C::new(1.0, 0.0);
    let real = |s: f64| C::new(s, 0.0);
    for x in guard_grid() {
        let d = (li(real(1.0), x)? + (one - x).ln()).norm();
        ensure(d <= 1e-12, || format!("Li_1 at {x}: {d:e}"))?;
        let d = (li(real(0.0), x)? - x / (one - x)).norm();
        ensure(d <= 1e-12, || format!("Li_0 at {x}: {d:e}"))?;
        let exact = x * (one + x) / ((one - x) * (one - x) * (one - x));
        let d = (li(real(-2.0), x)? - exact).norm() / exact.norm();
        ensure(d <= 1e-11, || format!("Li_-2 at {x}: {d:e}"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let two = C::new(2.0, 0.0);
    let d = (li(two, C::new(-1.0, 0.0))? + PI * PI / 12.0).norm();
    ensure(d <= 1e-11, || format!("Li_2(-1): {d:e}"))?;
    let d = (li(two, C::new(0.5, 0.0))? - (PI * PI / 12.0 - LN_2 * LN_2 / 2.0)).norm();
    ensure(d <= 1e-12, || format!("Li_2(1/2): {d:e}"))
}

fn criterion_9() -> Outcome {
    for s in [C::new(2.0, 0.0), C::new(-1.5, 0.0), C::new(1.0, 1.0), C::new(3.0, -2.0)] {
        for k in 0..25 {
            let x = C::from_polar(0.6 * ((k / 5) + 1) as f64 / 5.0, 2.0 * PI * (k % 5) as f64 / 5.0 + 0.1 * k as f64);
            let series = li(s, x)?;
            let direct = lib(polylog_direct(s, x, 1e-17))?;
            let d = (series - direct).norm() / direct.norm();
            ensure(d <= 1e-10, || format!("s = {s}, x = {x}: {d:e}"))?;
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    for s in [2.0, 3.0, 1.5] {
        let s = C::new(s, 0.0);
        for x in [C::new(0.3, 0.0), C::new(0.0, 0.4), C::new(-0.25, 0.25)] {
            let lhs = li(s, x)? + li(s, -x)?;
            let rhs = C::new(2.0, 0.0).powc(C::new(1.0, 0.0) - s) * li(s, x * x)?;
            let d = (lhs - rhs).norm() / rhs.norm();
            ensure(d <= 1e-9, || format!("s = {s}, x = {x}: {d:e}"))?;
        }
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    let n_max = 80;
    let s = C::new(2.0, 0.0);
    let lo = lib(polylog_coefficients(s, n_max, Precision::Auto))?;
    let hi = lib(polylog_coefficients(s, n_max, Precision::AutoScaled(2)))?;
    // Li_2(1 - e^{-t}) has derivative t/(e^t - 1), so b_n = B_{n-1}/n!
    let b = akiyama_tanigawa(n_max);
    for n in 1..=n_max {
        let exact = &b[n - 1] / qi(factorial(n));
        let exact = MpComplex::from_rational(&exact, 128).to_complex64().re;
        let vanishes = exact == 0.0;
        // the relative measure is undefined where b_n = 0; there the
        // preceding coefficient sets the scale
        let scale = if vanishes { hi[n - 1].norm() } else { hi[n].norm() };
        let d = (lo[n] - hi[n]).norm();
        ensure(d <= 1e-10 * scale, || format!("b_{n}: P vs 2P differ by {d:e} (scale {scale:e})"))?;
        if !vanishes {
            let e = (hi[n].re - exact).abs() / exact.abs();
            ensure(e <= 1e-14 && hi[n].im == 0.0, || format!("b_{n} vs B_(n-1)/n!: {e:e}"))?;
        }
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_herschel"))
        .args(args)
        .env_remove("HERSCHEL_TABLE_CAP")
        .output()
        .map_err(|e| format!("cannot run herschel: {e}"))?;
    let code = out.status.code().unwrap_or(-1);
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn criterion_12() -> Outcome {
    let (code, out) = run_cli(&["bernoulli", "12"])?;
    ensure(code == 0 && out == "-691/2730\n", || format!("bernoulli 12: {code} {out:?}"))?;

    let (code, out) = run_cli(&["polylog", "--s", "2", "--x", "-1"])?;
    let expected = "-0.82246703342411322";
    let v: f64 = out.trim().parse().map_err(|_| format!("polylog output {out:?}"))?;
    let shape_ok = out.ends_with('\n') && out.trim().len() == expected.len() && out.starts_with("-0.8224670334241");
    ensure(code == 0 && shape_ok && (v - expected.parse::<f64>().unwrap()).abs() <= 1e-11, || {
        format!("polylog: {code} {out:?}")
    })?;

    let (code, out) = run_cli(&["eulerian", "3", "--format", "csv"])?;
    ensure(code == 0 && out.lines().nth(1) == Some("3,1,4,1"), || {
        format!("eulerian csv: {code} {out:?}")
    })?;

    let (code, out) = run_cli(&["selfcheck"])?;
    ensure(code == 0, || format!("selfcheck exit {code}: {out}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("herschel transform equals composition with 1 - e^-t", criterion_1),
        ("bernoulli numbers", criterion_2),
        ("genocchi numbers", criterion_3),
        ("euler polynomials", criterion_4),
        ("eulerian polynomials", criterion_5),
        ("stirling numbers and differences of zero", criterion_6),
        ("polylog closed forms", criterion_7),
        ("polylog continuation values", criterion_8),
        ("polylog agreement with the direct series", criterion_9),
        ("polylog duplication identity", criterion_10),
        ("polylog coefficient precision stability", criterion_11),
        ("command line examples and selfcheck", criterion_12),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS {name} ({ms} ms)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({ms} ms): {msg}", k + 1);
            }
        }
    }
    let total = start.elapsed();
    println!("{} of 12 criteria passed in {:.2} s", 12 - failed, total.as_secs_f64());
    if failed > 0 || total.as_secs() >= 60 {
        std::process::exit(1);
    }
}
