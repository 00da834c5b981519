//! Polylogarithm `Li_s(x)` on the cut plane `ℂ \ [1, ∞)`.
//!
//! With `t = -Log(1 - x)` (principal branch), `Li_s(1 - e^{-t}) = Σ_{n≥1} b_n t^n`
//! where the `b_n` are the Herschel coefficients of `c_j = j^{-s}`:
//!
//! ```text
//! b_n = ((-1)^n / n!) Σ_{j=1}^{n} (-1)^j j^{-s} Δ^j 0^n
//! ```
//!
//! The alternating sum cancels heavily, so coefficients are computed in
//! multiprecision and accepted only when two working precisions agree.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num_complex::Complex;
use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};
use crate::herschel::{numeric_row, row_magnitude, NumericProvider, Precision};
use crate::mp::{self, MpComplex};
use crate::scalar::{cabs, CompensatedSum, WorkingScalar};

pub const DEFAULT_REL_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_TERMS: usize = 200;
pub const DEFAULT_RADIUS_GUARD: f64 = 0.99;

/// Relative agreement required between the two working precisions.
pub const PRECISION_AGREEMENT: f64 = 1e-10;

/// Largest `|x|` accepted by [`polylog_direct`].
pub const DIRECT_RADIUS: f64 = 0.75;

/// `c_0 = 0`, `c_j = j^{-s}`.
#[derive(Debug, Clone, Copy)]
pub struct PowerProvider {
    pub s: Complex<f64>,
}

impl NumericProvider<MpComplex> for PowerProvider {
    fn coefficient(&self, j: usize, precision: u32) -> MpComplex {
        self.coefficients(j, precision).pop().expect("j + 1 entries")
    }

    fn coefficients(&self, n_max: usize, precision: u32) -> Vec<MpComplex> {
        let mut consts = mp::consts();
        std::iter::once(MpComplex::zero(precision))
            .chain((1..=n_max).map(|j| MpComplex::int_pow_neg(j as u64, self.s, precision, &mut consts)))
            .collect()
    }
}

impl NumericProvider<Complex<f64>> for PowerProvider {
    fn coefficient(&self, j: usize, _: u32) -> Complex<f64> {
        if j == 0 {
            Complex::new(0.0, 0.0)
        } else {
            (-self.s * (j as f64).ln()).exp()
        }
    }
}

fn doubled(p: Precision) -> Precision {
    match p {
        Precision::Bits(b) => Precision::Bits(2 * b),
        Precision::Auto => Precision::AutoScaled(2),
        Precision::AutoScaled(k) => Precision::AutoScaled(2 * k.max(1)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct CacheKey {
    re: u64,
    im: u64,
    precision: Precision,
}

impl CacheKey {
    fn new(s: Complex<f64>, precision: Precision) -> Self {
        // +0.0 and -0.0 give the same coefficients
        let norm = |v: f64| if v == 0.0 { 0.0f64 } else { v };
        Self {
            re: norm(s.re).to_bits(),
            im: norm(s.im).to_bits(),
            precision,
        }
    }
}

static CACHE: LazyLock<RwLock<HashMap<CacheKey, Arc<Vec<Complex<f64>>>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Rows `from..=to` at `precision`, each checked against twice the precision.
fn compute_rows(
    s: Complex<f64>,
    from: usize,
    to: usize,
    precision: Precision,
) -> Result<Vec<Complex<f64>>> {
    let provider = PowerProvider { s };
    let check = doubled(precision);
    let bits: Vec<(u32, u32)> = (from..=to)
        .map(|n| Ok((precision.bits_for_row(n)?, check.bits_for_row(n)?)))
        .collect::<Result<_>>()?;
    let top = bits.iter().map(|b| b.1).max().unwrap_or(64);
    let c: Vec<MpComplex> = NumericProvider::<MpComplex>::coefficients(&provider, to, top + 16);
    let c64: Vec<Complex<f64>> = c.iter().map(WorkingScalar::to_complex64).collect();

    let mut out = Vec::with_capacity(to + 1 - from);
    for (n, &(lo, hi)) in (from..=to).zip(&bits) {
        let value = numeric_row(&c, n, lo)?.to_complex64();
        let reference = numeric_row(&c, n, hi)?.to_complex64();
        let floor = 2f64.powi(8 - lo.min(1000) as i32) * row_magnitude(&c64, n)?;
        let diff = (value - reference).norm();
        if !(diff <= PRECISION_AGREEMENT * reference.norm() + floor) {
            return Err(Error::PrecisionTooLow {
                index: n,
                detail: format!(
                    "{lo} bits give {value}, {hi} bits give {reference}"
                ),
            });
        }
        out.push(value);
    }
    Ok(out)
}

/// `b_0..=b_{n_max}` for order `s`, with `b_0 = 0`.
///
/// Values are cached per `(s, precision)`; extending a cached sequence only
/// computes the new rows. Fails with [`Error::PrecisionTooLow`] when a row
/// computed at `precision` disagrees with the same row at twice the precision.
pub fn polylog_coefficients(
    s: Complex<f64>,
    n_max: usize,
    precision: impl Into<Precision>,
) -> Result<Arc<Vec<Complex<f64>>>> {
    let precision = precision.into();
    if n_max < 1 {
        return Err(Error::InvalidArgument("need at least one coefficient".into()));
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("order s = {s} is not finite")));
    }
    precision.validate::<MpComplex>()?;
    let key = CacheKey::new(s, precision);
    let cached = CACHE.read().expect("cache lock poisoned").get(&key).cloned();
    let have = match &cached {
        Some(v) if v.len() > n_max => return Ok(Arc::clone(v)),
        Some(v) => v.len(),
        None => 1,
    };
    let fresh = compute_rows(s, have, n_max, precision)?;

    let mut cache = CACHE.write().expect("cache lock poisoned");
    let entry = cache.entry(key).or_insert_with(|| Arc::new(vec![Complex::new(0.0, 0.0)]));
    if entry.len() <= n_max {
        let mut extended = (**entry).clone();
        // another writer may have extended the entry meanwhile
        extended.extend(fresh.into_iter().skip(extended.len() - have));
        *entry = Arc::new(extended);
    }
    Ok(Arc::clone(entry))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolylogStatus {
    Converged,
    Truncated,
    OutsideGuard,
}

impl PolylogStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PolylogStatus::Converged => "converged",
            PolylogStatus::Truncated => "truncated",
            PolylogStatus::OutsideGuard => "outside_guard",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylogRequest<F> {
    pub s: Complex<F>,
    pub x: Complex<F>,
    pub rel_tol: F,
    pub max_terms: usize,
    /// Largest `|t|` at which the series is summed.
    pub radius_guard: F,
    pub precision: Precision,
}

impl<F: Float + FromPrimitive> PolylogRequest<F> {
    pub fn new(s: Complex<F>, x: Complex<F>) -> Self {
        Self {
            s,
            x,
            rel_tol: F::from_f64(DEFAULT_REL_TOL).expect("representable"),
            max_terms: DEFAULT_MAX_TERMS,
            radius_guard: F::from_f64(DEFAULT_RADIUS_GUARD).expect("representable"),
            precision: Precision::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylogResult<F> {
    /// `None` only when the argument lies outside the guard radius.
    pub value: Option<Complex<F>>,
    pub abs_error_estimate: F,
    pub terms_used: usize,
    pub status: PolylogStatus,
}

fn is_on_cut<F: Float>(x: Complex<F>) -> bool {
    x.im == F::zero() && x.re >= F::one()
}

/// `t = -Log(1 - x)` on the principal branch.
pub fn continuation_variable<F: Float>(x: Complex<F>) -> Complex<F> {
    -(Complex::new(F::one(), F::zero()) - x).ln()
}

/// `Li_s(x)` by the continuation series in `t = -Log(1 - x)`.
///
/// Terms are summed in ascending order until three consecutive terms and the
/// first omitted term are each below `rel_tol · |partial sum|` (plus the
/// smallest normal number, so a zero sum can converge).
pub fn polylog_eval<F: Float + FromPrimitive>(req: &PolylogRequest<F>) -> Result<PolylogResult<F>> {
    let finite = |z: Complex<F>| z.re.is_finite() && z.im.is_finite();
    if !finite(req.x) || !finite(req.s) {
        return Err(Error::Domain("non-finite argument".into()));
    }
    if is_on_cut(req.x) {
        return Err(Error::Domain(format!(
            "x = {} lies on the branch cut [1, ∞)",
            req.x.re.to_f64().unwrap_or(f64::NAN)
        )));
    }
    if !(req.rel_tol > F::zero()) || !(req.radius_guard > F::zero()) {
        return Err(Error::InvalidArgument("rel_tol and radius_guard must be positive".into()));
    }
    let t = continuation_variable(req.x);
    if !(cabs(t) < req.radius_guard) {
        return Ok(PolylogResult {
            value: None,
            abs_error_estimate: F::infinity(),
            terms_used: 0,
            status: PolylogStatus::OutsideGuard,
        });
    }
    if t == Complex::new(F::zero(), F::zero()) {
        return Ok(PolylogResult {
            value: Some(t),
            abs_error_estimate: F::zero(),
            terms_used: 0,
            status: PolylogStatus::Converged,
        });
    }

    let s64 = Complex::new(
        req.s.re.to_f64().expect("finite"),
        req.s.im.to_f64().expect("finite"),
    );
    let to_f = |z: Complex<f64>| Complex::new(F::from_f64(z.re).unwrap(), F::from_f64(z.im).unwrap());
    let guard = F::min_positive_value();

    let mut block = 32.min(req.max_terms + 1).max(2);
    let mut b = polylog_coefficients(s64, block, req.precision)?;
    let mut coeff = |n: usize, b: &mut Arc<Vec<Complex<f64>>>| -> Result<Complex<F>> {
        if n >= b.len() {
            while block < n {
                block *= 2;
            }
            *b = polylog_coefficients(s64, block.min(req.max_terms + 1).max(n), req.precision)?;
        }
        Ok(to_f(b[n]))
    };

    let mut sum = CompensatedSum::new(Complex::new(F::zero(), F::zero()));
    let mut power = Complex::new(F::one(), F::zero());
    let mut small_run = 0;
    let mut last = F::zero();
    for n in 1..=req.max_terms {
        power = power * t;
        let term = coeff(n, &mut b)? * power;
        sum.add(term);
        let partial = sum.total();
        last = cabs(term);
        if last <= req.rel_tol * cabs(partial) + guard {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 3 {
            let next = cabs(coeff(n + 1, &mut b)? * power * t);
            if next <= req.rel_tol * cabs(partial) + guard {
                return Ok(PolylogResult {
                    value: Some(partial),
                    abs_error_estimate: next,
                    terms_used: n,
                    status: PolylogStatus::Converged,
                });
            }
        }
    }
    Ok(PolylogResult {
        value: Some(sum.total()),
        abs_error_estimate: last,
        terms_used: req.max_terms,
        status: PolylogStatus::Truncated,
    })
}

/// Convenience wrapper: `Li_s(x)` with default settings, failing unless the
/// series converged.
pub fn polylog<F: Float + FromPrimitive>(s: Complex<F>, x: Complex<F>) -> Result<Complex<F>> {
    let r = polylog_eval(&PolylogRequest::new(s, x))?;
    match (r.status, r.value) {
        (PolylogStatus::Converged, Some(v)) => Ok(v),
        (status, _) => Err(Error::InvalidArgument(format!(
            "series did not converge ({})",
            status.as_str()
        ))),
    }
}

/// `Σ_{n≥1} x^n / n^s` summed directly, for `|x| ≤ 0.75`.
pub fn polylog_direct<F: Float + FromPrimitive>(s: Complex<F>, x: Complex<F>, rel_tol: F) -> Result<Complex<F>> {
    let radius = F::from_f64(DIRECT_RADIUS).expect("representable");
    if !(cabs(x) <= radius) {
        return Err(Error::Domain(format!(
            "direct series needs |x| ≤ {DIRECT_RADIUS}"
        )));
    }
    let zero = Complex::new(F::zero(), F::zero());
    if x == zero {
        return Ok(zero);
    }
    let guard = F::min_positive_value();
    let mut sum = CompensatedSum::new(zero);
    let mut power = Complex::new(F::one(), F::zero());
    let mut small_run = 0;
    for n in 1..=100_000usize {
        power = power * x;
        let ln_n = F::from_usize(n).expect("representable").ln();
        let term = (-s * ln_n).exp() * power;
        sum.add(term);
        if cabs(term) <= rel_tol * cabs(sum.total()) + guard {
            small_run += 1;
            if small_run >= 3 {
                return Ok(sum.total());
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::InvalidArgument("direct series did not converge".into()))
}
