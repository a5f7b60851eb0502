//! The majorant series `T(r) = Σ_m t_m(r)` and its certified truncation.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::constants::PolTable;
use crate::error::{ensure, Error, Result};
use crate::scalar::CompensatedSum;

/// Largest truncation order supported by [`SeriesContext::shared`].
pub const DEFAULT_M_CAP: usize = 1 << 12;

/// `ln t_m(r)` for one degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub m: usize,
    pub log_term: f64,
}

/// Truncated sum plus a rigorous bound on everything past the truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub sum: f64,
    pub tail_bound: f64,
    /// Ratio bound used for the geometric tail.
    pub rho: f64,
    /// Split `k` of the polynomial bound used as the envelope past `M`.
    pub envelope_k: usize,
    pub truncation: usize,
}

impl SeriesValue {
    pub fn total(&self) -> f64 {
        self.sum + self.tail_bound
    }
}

/// Per-degree `ln B̄^pol_m` shared by every `n`.
#[derive(Debug)]
pub struct SeriesContext {
    table: PolTable,
    log_bound: Vec<f64>,
}

impl SeriesContext {
    /// Supports truncation orders up to `max_truncation`.
    pub fn new(max_truncation: usize) -> Self {
        let m_max = max_truncation.max(1) + 1;
        let table = PolTable::new(m_max);
        let log_bound = (0..=m_max).map(|m| table.available_log(m)).collect();
        Self { table, log_bound }
    }

    pub fn shared() -> &'static Self {
        static SHARED: OnceLock<SeriesContext> = OnceLock::new();
        SHARED.get_or_init(|| SeriesContext::new(DEFAULT_M_CAP))
    }

    pub fn max_truncation(&self) -> usize {
        self.table.m_max() - 1
    }

    /// `ln t_m(r) = m ln r + ln B̄^pol_m + (m−1)/(2m) · ln C(n+m−1, m)` for `m = 1..=M`.
    pub fn terms(&self, r: f64, n: usize, truncation: usize) -> Result<Vec<SeriesTerm>> {
        self.validate(r, n, truncation)?;
        let log_r = r.ln();
        let mut log_count = 0.0;
        Ok((1..=truncation)
            .map(|m| {
                log_count += ((n + m - 1) as f64 / m as f64).ln();
                let mf = m as f64;
                let log_term = mf * log_r + self.log_bound[m] + (mf - 1.0) / (2.0 * mf) * log_count;
                SeriesTerm { m, log_term }
            })
            .collect())
    }

    /// `Σ_{m ≤ M} t_m(r)` and a bound on `Σ_{m > M} t_m(r)`.
    ///
    /// Past `M` each `B̄^pol_m` is replaced by the single-split bound with a
    /// fixed `k ≤ M`, whose terms `e_m` satisfy `e_{m+1} ≤ ρ e_m` with
    ///
    /// `ln ρ = ln r + ½ln(1+1/k) + ½ln((M+2)/(M+2−k)) + 1/(2(M+1−k))
    ///        + (1 + ln(1+n/(M+1)))/(2(M+2)) + ½ln((n+M+1)/(M+2))`.
    ///
    /// The first three terms bound the one-step growth of the split bound,
    /// using `(1+1/m)^m ≤ e` and `(1+1/j)^j ≥ e^{1−1/(2j)}`; the last two bound
    /// the growth of the monomial-count factor using `C(n+m,m+1) = C(n+m−1,m)(n+m)/(m+1)`
    /// and `C(n+m−1,m) ≤ eᵐ(1+n/m)ᵐ`. Every piece is nonincreasing in `m`, so the
    /// tail is at most `e_{M+1}/(1−ρ)`; the `k` giving the smallest tail is used.
    pub fn value(&self, r: f64, n: usize, truncation: usize) -> Result<SeriesValue> {
        let terms = self.terms(r, n, truncation)?;
        let mut sum = CompensatedSum::new();
        for t in &terms {
            sum.add(t.log_term.exp());
        }
        let big_m = truncation as f64;
        let nf = n as f64;
        let log_r = r.ln();
        let log_count_next: f64 = (1..=truncation + 1).map(|m| ((n + m - 1) as f64 / m as f64).ln()).sum();
        let count_growth =
            (1.0 + (nf / (big_m + 1.0)).ln_1p()) / (2.0 * (big_m + 2.0)) + 0.5 * ((nf + big_m + 1.0) / (big_m + 2.0)).ln();
        let next_count_log = big_m / (2.0 * (big_m + 1.0)) * log_count_next + (big_m + 1.0) * log_r;

        let mut best: Option<(f64, f64, usize)> = None;
        let mut min_rho = f64::INFINITY;
        for k in 1..=truncation {
            let kf = k as f64;
            let log_rho = log_r
                + 0.5 * (1.0 / kf).ln_1p()
                + 0.5 * ((big_m + 2.0) / (big_m + 2.0 - kf)).ln()
                + 1.0 / (2.0 * (big_m + 1.0 - kf))
                + count_growth;
            let rho = log_rho.exp();
            min_rho = min_rho.min(rho);
            if rho >= 1.0 {
                continue;
            }
            let tail = (next_count_log + self.table.step_log(truncation + 1, k)).exp() / (1.0 - rho);
            if best.is_none_or(|b| tail < b.0) {
                best = Some((tail, rho, k));
            }
        }
        let (tail_bound, rho, envelope_k) =
            best.ok_or(Error::NeedsLargerTruncation { m: truncation, rho: min_rho })?;
        Ok(SeriesValue { sum: sum.value(), tail_bound, rho, envelope_k, truncation })
    }

    fn validate(&self, r: f64, n: usize, truncation: usize) -> Result<()> {
        ensure!(r > 0.0 && r < 1.0, Rejected, "radius must lie in (0, 1), got {r}");
        ensure!(n >= 2, Rejected, "dimension must be >= 2, got {n}");
        ensure!(truncation >= 1, Contract, "truncation must be >= 1");
        ensure!(
            truncation <= self.max_truncation(),
            Contract,
            "truncation {truncation} exceeds the table size {}",
            self.max_truncation()
        );
        Ok(())
    }
}

/// [`SeriesContext::value`] with a suitably sized context.
pub fn series_value(r: f64, n: usize, truncation: usize) -> Result<SeriesValue> {
    let shared = SeriesContext::shared();
    if truncation <= shared.max_truncation() {
        shared.value(r, n, truncation)
    } else {
        SeriesContext::new(truncation).value(r, n, truncation)
    }
}
