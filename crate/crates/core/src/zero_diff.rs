//! Finite differences of zero and Stirling numbers of the second kind.
//!
//! `Δ^j 0^n` is the `j`-th forward difference of `m ↦ m^n` at `m = 0`, with
//! the convention `0^0 = 1`. Rows are built with the recurrence
//!
//! ```text
//! Δ^j 0^n = j · (Δ^{j-1} 0^{n-1} + Δ^j 0^{n-1})
//! ```
//!
//! which needs no subtraction. A process-wide table caches every row built so
//! far; see [`delta_zero`] and [`row`].

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TABLE_CAP: usize = 1000;

static TABLE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_TABLE_CAP);

static SHARED: LazyLock<RwLock<ZeroDifferenceTable>> =
    LazyLock::new(|| RwLock::new(ZeroDifferenceTable::new()));

/// Largest row index the shared table may grow to.
pub fn table_cap() -> usize {
    TABLE_CAP.load(Ordering::Relaxed)
}

pub fn set_table_cap(cap: usize) {
    TABLE_CAP.store(cap, Ordering::Relaxed);
}

/// Triangular table of `Δ^j 0^n` for `0 ≤ j ≤ n ≤ n_max`.
#[derive(Debug, Clone)]
pub struct ZeroDifferenceTable {
    rows: Vec<Arc<[BigUint]>>,
}

impl Default for ZeroDifferenceTable {
    fn default() -> Self {
        Self::new()
    }
}

impl ZeroDifferenceTable {
    /// Table holding only row 0.
    pub fn new() -> Self {
        Self {
            rows: vec![Arc::from(vec![BigUint::one()])],
        }
    }

    /// Builds rows `0..=n_max` under the current [`table_cap`].
    pub fn build(n_max: usize) -> Result<Self> {
        Self::build_with_cap(n_max, table_cap())
    }

    pub fn build_with_cap(n_max: usize, cap: usize) -> Result<Self> {
        let mut table = Self::new();
        table.extend_to(n_max, cap)?;
        Ok(table)
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Grows the table so that row `n_max` exists.
    pub fn extend_to(&mut self, n_max: usize, cap: usize) -> Result<()> {
        if n_max > cap {
            return Err(Error::ResourceLimit {
                requested: n_max,
                cap,
            });
        }
        while self.n_max() < n_max {
            let prev = self.rows.last().expect("row 0 always present");
            let n = prev.len();
            let mut next = Vec::with_capacity(n + 1);
            next.push(BigUint::zero());
            for j in 1..=n {
                let left = &prev[j - 1];
                let sum = match prev.get(j) {
                    Some(up) => left + up,
                    None => left.clone(),
                };
                next.push(sum * BigUint::from(j));
            }
            self.rows.push(Arc::from(next));
        }
        Ok(())
    }

    /// `Δ^j 0^n` if row `n` is built; zero for `j > n`.
    pub fn entry(&self, n: usize, j: usize) -> Option<BigUint> {
        let row = self.rows.get(n)?;
        Some(row.get(j).cloned().unwrap_or_default())
    }

    pub fn row(&self, n: usize) -> Option<Arc<[BigUint]>> {
        self.rows.get(n).cloned()
    }
}

/// Row `n` of the shared table, `[Δ^0 0^n, ..., Δ^n 0^n]`.
pub fn row(n: usize) -> Result<Arc<[BigUint]>> {
    if let Some(r) = SHARED.read().expect("table lock poisoned").row(n) {
        return Ok(r);
    }
    let mut table = SHARED.write().expect("table lock poisoned");
    table.extend_to(n, table_cap())?;
    Ok(table.row(n).expect("row just built"))
}

/// `Δ^j 0^n`; zero when `j > n`.
pub fn delta_zero(j: usize, n: usize) -> Result<BigUint> {
    if j > n {
        return Ok(BigUint::zero());
    }
    Ok(row(n)?[j].clone())
}

/// Stirling number of the second kind `S(n, j) = Δ^j 0^n / j!`.
pub fn stirling2(n: usize, j: usize) -> Result<BigUint> {
    let d = delta_zero(j, n)?;
    let fact = factorial(j);
    let (q, r) = d.div_rem(&fact);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "Δ^{j} 0^{n} = {d} is not divisible by {j}!"
        )));
    }
    Ok(q)
}

/// Number of bits in the largest entry of row `n`.
pub fn row_max_bits(n: usize) -> Result<u64> {
    Ok(row(n)?.iter().map(BigUint::bits).max().unwrap_or(0))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}
