//! The `herschel` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain or resource
//! error, 3 convergence failure (truncated, outside the guard radius, or
//! insufficient working precision), 4 internal failure or failed self-check.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::herschel::Precision;
use crate::poly::Polynomial;
use crate::polylog::{self, PolylogRequest, PolylogStatus};
use crate::selfcheck;
use crate::sequences;
use crate::zero_diff;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Environment variable overriding the difference-table row cap.
pub const TABLE_CAP_ENV: &str = "HERSCHEL_TABLE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "herschel", version, about = "Exact sequence tables and polylogarithms via finite differences of zero")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rows 0..=n_max of the table Δ^j 0^n
    DiffTable { n_max: usize },
    /// Stirling numbers of the second kind S(n, j), or the whole row n
    Stirling2 { n: usize, j: Option<usize> },
    /// Bernoulli number B_n (B_1 = -1/2)
    Bernoulli {
        n: usize,
        /// Print B_0..=B_n
        #[arg(long)]
        table: bool,
    },
    /// Genocchi number G_n, n ≥ 1
    Genocchi {
        n: usize,
        #[arg(long)]
        table: bool,
    },
    /// Euler number E_n = 2^n E_n(1/2)
    EulerNumber {
        n: usize,
        #[arg(long)]
        table: bool,
    },
    /// Euler polynomial E_n(x), or its value at a rational point
    EulerPoly {
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Eulerian polynomial A_n(λ), or its value at a rational point
    Eulerian {
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Carlitz number H_n(λ) at a rational λ ∉ {0, 1}
    CarlitzH {
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Polylogarithm Li_s(x) on the cut plane
    Polylog {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = polylog::DEFAULT_REL_TOL)]
        rel_tol: f64,
        #[arg(long, default_value_t = polylog::DEFAULT_MAX_TERMS)]
        max_terms: usize,
        #[arg(long, default_value_t = polylog::DEFAULT_RADIUS_GUARD)]
        radius_guard: f64,
        /// Fixed working precision in bits (default: per-row automatic)
        #[arg(long)]
        precision_bits: Option<u32>,
    },
    /// Run the built-in oracle and identity checks
    Selfcheck,
}

// ------------------------------------------------------------- formatting

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Ascending powers, zero terms omitted: `"-1/2 + 1*x"`, `"0"`.
pub fn format_polynomial(p: &Polynomial<BigRational>) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = if out.is_empty() {
            format_rational(c)
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            format_rational(&c.abs())
        };
        out.push_str(&body);
        match k {
            0 => {}
            1 => out.push_str("*x"),
            _ => out.push_str(&format!("*x^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// 17 significant digits; positional for decimal exponents in `-7..21`.
pub fn format_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    if !(-7..21).contains(&exp) {
        return format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..]);
    }
    let body = if exp < 0 {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{digits}{}", "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    };
    format!("{sign}{body}")
}

/// `"re"` when the imaginary part is zero, else `"re+imi"` / `"re-imi"`.
pub fn format_complex(z: Complex<f64>) -> String {
    if z.im == 0.0 {
        return format_f64(z.re);
    }
    let im = format_f64(z.im);
    let sep = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sep}{im}i", format_f64(z.re))
}

// ---------------------------------------------------------------- parsing

/// `"p/q"`, an integer, or a finite decimal such as `"-0.125"`.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    let bad = || format!("invalid rational number '{text}'");
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(format!("zero denominator in '{text}'"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        if (int.is_empty() && frac.is_empty()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let whole = if int.is_empty() { BigInt::zero() } else { BigUint::from_str(int).map_err(|_| bad())?.into() };
        let frac_num = if frac.is_empty() { BigInt::zero() } else { BigUint::from_str(frac).map_err(|_| bad())?.into() };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = BigRational::new(whole * &scale + frac_num, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| bad())
}

fn parse_real(text: &str, whole: &str) -> Result<f64, String> {
    let v: f64 = match text {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => text.parse().map_err(|_| format!("invalid complex number '{whole}'"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("complex number '{whole}' is not finite"))
    }
}

/// `"a+bi"`, `"a-bi"`, `"a"`, `"bi"`, `"i"`, with optional exponents.
pub fn parse_complex(text: &str) -> Result<Complex<f64>, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    let Some(imag) = t.strip_suffix(['i', 'j']) else {
        let re = t.parse::<f64>().map_err(|_| format!("invalid complex number '{text}'"))?;
        return parse_real(&re.to_string(), text).map(|re| Complex::new(re, 0.0));
    };
    let bytes = imag.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&imag[..k], text)?, parse_real(&imag[k..], text)?),
        None => (0.0, parse_real(imag, text)?),
    };
    Ok(Complex::new(re, im))
}

// ----------------------------------------------------------------- output

#[derive(Debug, Serialize)]
struct JsonReport {
    command: &'static str,
    inputs: BTreeMap<&'static str, Value>,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_estimate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<&'static str>,
}

/// Everything a command produces, rendered according to `--format`.
struct Report {
    json: JsonReport,
    plain: Vec<String>,
    csv_header: Vec<String>,
    csv_rows: Vec<Vec<String>>,
    exit: i32,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            json: JsonReport {
                command,
                inputs: BTreeMap::new(),
                result: Value::Null,
                error_estimate: None,
                terms_used: None,
                status: None,
            },
            plain: Vec::new(),
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            exit: EXIT_OK,
        }
    }

    fn input(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.json.inputs.insert(key, value.into());
        self
    }

    fn header(mut self, cols: &[&str]) -> Self {
        self.csv_header = cols.iter().map(|c| c.to_string()).collect();
        self
    }

    fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Plain => {
                for line in &self.plain {
                    writeln!(out, "{line}")?;
                }
            }
            Format::Csv => {
                writeln!(out, "{}", self.csv_header.join(","))?;
                for row in &self.csv_rows {
                    writeln!(out, "{}", row.join(","))?;
                }
            }
            Format::Json => {
                serde_json::to_writer(&mut *out, &self.json)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::InvalidPrecision(_) => EXIT_USAGE,
        Error::Domain(_) | Error::ResourceLimit { .. } | Error::NonInvertible => EXIT_DOMAIN,
        Error::PrecisionTooLow { .. } => EXIT_CONVERGENCE,
        Error::Internal(_) => EXIT_INTERNAL,
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn usage<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn single_or_table(
    command: &'static str,
    n: usize,
    table: bool,
    values: Vec<String>,
) -> Report {
    let mut r = Report::new(command).input("n", n).input("table", table).header(&["n", "value"]);
    let first = if table { 0 } else { n };
    for (k, v) in values.iter().enumerate().skip(first) {
        r.plain.push(if table { format!("{k} {v}") } else { v.clone() });
        r.csv_rows.push(vec![k.to_string(), v.clone()]);
    }
    r.json.result = if table {
        json!(values)
    } else {
        json!(values[n])
    };
    r
}

fn polynomial_report(
    command: &'static str,
    n: usize,
    p: &Polynomial<BigRational>,
    first_col: usize,
    at: Option<&str>,
) -> Result<Report, Failure> {
    let mut r = Report::new(command).input("n", n);
    if let Some(text) = at {
        let point = usage(parse_rational(text))?;
        let value = format_rational(&p.eval(&point));
        r = r.input("at", format_rational(&point)).header(&["n", "at", "value"]);
        r.plain.push(value.clone());
        r.csv_rows.push(vec![n.to_string(), format_rational(&point), value.clone()]);
        r.json.result = json!(value);
        return Ok(r);
    }
    let coeffs: Vec<String> = (first_col..=n).map(|k| format_rational(&p.coeff(k))).collect();
    let prefix = if command == "eulerian" { "k" } else { "c" };
    let mut header = vec!["n".to_string()];
    header.extend((first_col..=n).map(|k| format!("{prefix}{k}")));
    r.csv_header = header;
    r.plain.push(format_polynomial(p));
    r.csv_rows.push(std::iter::once(n.to_string()).chain(coeffs).collect());
    r.json.result = json!((0..=n).map(|k| format_rational(&p.coeff(k))).collect::<Vec<_>>());
    Ok(r)
}

fn execute(command: Command, err: &mut dyn Write) -> Result<Report, Failure> {
    Ok(match command {
        Command::DiffTable { n_max } => {
            let mut r = Report::new("diff-table").input("n_max", n_max).header(&["n", "j", "value"]);
            // fails fast when n_max exceeds the table cap
            zero_diff::row(n_max)?;
            let mut rows = Vec::new();
            for n in 0..=n_max {
                let row: Vec<String> = zero_diff::row(n)?.iter().map(ToString::to_string).collect();
                r.plain.push(row.join(" "));
                for (j, v) in row.iter().enumerate() {
                    r.csv_rows.push(vec![n.to_string(), j.to_string(), v.clone()]);
                }
                rows.push(row);
            }
            r.json.result = json!(rows);
            r
        }
        Command::Stirling2 { n, j } => {
            let mut r = Report::new("stirling2").input("n", n).header(&["n", "j", "value"]);
            let js: Vec<usize> = match j {
                Some(j) => {
                    r = r.input("j", j);
                    vec![j]
                }
                None => (0..=n).collect(),
            };
            let values: Vec<String> = js
                .iter()
                .map(|&j| zero_diff::stirling2(n, j).map(|v| v.to_string()))
                .collect::<Result<_, _>>()?;
            r.plain.push(values.join(" "));
            for (j, v) in js.iter().zip(&values) {
                r.csv_rows.push(vec![n.to_string(), j.to_string(), v.clone()]);
            }
            r.json.result = if j.is_some() { json!(values[0]) } else { json!(values) };
            r
        }
        Command::Bernoulli { n, table } => {
            let values = sequences::bernoulli_numbers(n)?.iter().map(format_rational).collect();
            single_or_table("bernoulli", n, table, values)
        }
        Command::Genocchi { n, table } => {
            if n == 0 {
                return Err(Failure::Usage("Genocchi numbers start at n = 1".into()));
            }
            let mut values: Vec<String> = sequences::genocchi_numbers(n)?.iter().map(ToString::to_string).collect();
            let mut r = single_or_table("genocchi", n, table, values.clone());
            if table {
                // G_0 is not part of the sequence
                values.remove(0);
                r.plain.remove(0);
                r.csv_rows.remove(0);
                r.json.result = json!(values);
            }
            r
        }
        Command::EulerNumber { n, table } => {
            let values = (0..=n)
                .filter(|&k| table || k == n)
                .map(|k| sequences::euler_number(k).map(|v| v.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let padded = if table {
                values
            } else {
                let mut v = vec![String::new(); n];
                v.extend(values);
                v
            };
            single_or_table("euler-number", n, table, padded)
        }
        Command::EulerPoly { n, at } => {
            let p = sequences::euler_polynomial(n)?;
            polynomial_report("euler-poly", n, &p, 0, at.as_deref())?
        }
        Command::Eulerian { n, at } => {
            let p = sequences::eulerian_polynomial(n)?;
            polynomial_report("eulerian", n, &p, n.min(1), at.as_deref())?
        }
        Command::CarlitzH { n, at } => {
            let lambda = usage(parse_rational(&at))?;
            let value = format_rational(&sequences::carlitz_h(n, &lambda)?);
            let mut r = Report::new("carlitz-h")
                .input("n", n)
                .input("at", format_rational(&lambda))
                .header(&["n", "lambda", "value"]);
            r.plain.push(value.clone());
            r.csv_rows.push(vec![n.to_string(), format_rational(&lambda), value.clone()]);
            r.json.result = json!(value);
            r
        }
        Command::Polylog { s, x, rel_tol, max_terms, radius_guard, precision_bits } => {
            let s = usage(parse_complex(&s))?;
            let x = usage(parse_complex(&x))?;
            let mut req = PolylogRequest::new(s, x);
            req.rel_tol = rel_tol;
            req.max_terms = max_terms;
            req.radius_guard = radius_guard;
            if let Some(bits) = precision_bits {
                req.precision = Precision::Bits(bits);
            }
            let res = polylog::polylog_eval(&req)?;
            let mut r = Report::new("polylog")
                .input("s", json!([s.re, s.im]))
                .input("x", json!([x.re, x.im]))
                .input("rel_tol", rel_tol)
                .input("max_terms", max_terms)
                .input("radius_guard", radius_guard)
                .header(&["s", "x", "value", "error_estimate", "terms_used", "status"]);
            let estimate = format_f64(res.abs_error_estimate);
            let value = res.value.map(format_complex).unwrap_or_default();
            if let Some(v) = res.value {
                r.plain.push(value.clone());
                r.json.result = json!([v.re, v.im]);
            }
            r.csv_rows.push(vec![
                format_complex(s),
                format_complex(x),
                value,
                estimate,
                res.terms_used.to_string(),
                res.status.as_str().to_string(),
            ]);
            r.json.error_estimate = Some(if res.abs_error_estimate.is_finite() {
                json!(res.abs_error_estimate)
            } else {
                Value::Null
            });
            r.json.terms_used = Some(res.terms_used);
            r.json.status = Some(res.status.as_str());
            match res.status {
                PolylogStatus::Converged => {}
                PolylogStatus::Truncated => {
                    let _ = writeln!(err, "herschel: series truncated after {} terms", res.terms_used);
                    r.exit = EXIT_CONVERGENCE;
                }
                PolylogStatus::OutsideGuard => {
                    let _ = writeln!(
                        err,
                        "herschel: |Log(1 - x)| is not below the radius guard {radius_guard}"
                    );
                    r.exit = EXIT_CONVERGENCE;
                }
            }
            r
        }
        Command::Selfcheck => {
            let outcomes = selfcheck::run_all();
            let mut r = Report::new("selfcheck").header(&["check", "passed", "detail"]);
            for o in &outcomes {
                r.plain.push(if o.passed {
                    format!("PASS {}", o.name)
                } else {
                    format!("FAIL {}: {}", o.name, o.detail)
                });
                r.csv_rows.push(vec![o.name.to_string(), o.passed.to_string(), o.detail.replace(',', ";")]);
            }
            r.json.result = outcomes
                .iter()
                .map(|o| json!({"check": o.name, "passed": o.passed, "detail": o.detail}))
                .collect();
            if outcomes.iter().any(|o| !o.passed) {
                r.exit = EXIT_INTERNAL;
            }
            r
        }
    })
}

/// Parses `argv` (including the program name), runs the command and writes
/// results to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    if let Ok(cap) = std::env::var(TABLE_CAP_ENV) {
        match cap.trim().parse::<usize>() {
            Ok(cap) => zero_diff::set_table_cap(cap),
            Err(_) => {
                let _ = writeln!(err, "herschel: {TABLE_CAP_ENV} must be a nonnegative integer, got '{cap}'");
                return EXIT_USAGE;
            }
        }
    }
    match execute(cli.command, err) {
        Ok(report) => match report.render(cli.format, out) {
            Ok(()) => report.exit,
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => report.exit,
            Err(e) => {
                let _ = writeln!(err, "herschel: cannot write output: {e}");
                EXIT_INTERNAL
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "herschel: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "herschel: {e}");
            exit_code(&e)
        }
    }
}
