//! Certified lower bounds and empirical upper estimates for the Bohr radius
//! `K_n` of the polydisk.
//!
//! For `‖P‖_∞ ≤ 1` Wiener's lemma gives `‖P_m‖_∞ ≤ 1 − |a₀|²` for every
//! homogeneous part, and Hölder plus the polynomial BH bound give
//! `Σ_{|α|=m}|a_α| r^m ≤ (1−|a₀|²) t_m(r)`. So `Σ_α |a_α| r^{|α|} ≤ 1` as soon
//! as `|a₀| + (1−|a₀|²) T(r) ≤ 1` for all `|a₀| ≤ 1`, which holds once
//! `T(r) ≤ 1/2`.

mod series;
mod upper;

pub use series::{series_value, SeriesContext, SeriesTerm, SeriesValue, DEFAULT_M_CAP};
pub use upper::{bohr_upper_empirical, sign_polynomial, BohrUpper, EmpiricalConfig, DEFAULT_MAX_MONOMIALS};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

/// `K_1`, the classical one-variable Bohr radius.
pub const K1: f64 = 1.0 / 3.0;

pub const DEFAULT_TOL: f64 = 1e-9;

/// `T(r)` must not exceed this for `r` to be certified.
pub const THRESHOLD: f64 = 0.5;

const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BohrConfig {
    pub tol: f64,
    pub m_cap: usize,
    /// Empirical upper estimate settings; skipped when `None` or over budget.
    pub empirical: Option<EmpiricalConfig>,
}

impl Default for BohrConfig {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, m_cap: DEFAULT_M_CAP, empirical: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BohrRecord {
    pub n: usize,
    /// Certified: `K_n ≥ r_lower`.
    pub r_lower: f64,
    /// `r_lower · √(n / ln n)`.
    pub b_lower: f64,
    pub r_upper_emp: Option<f64>,
    /// Truncation order `M` of the certificate.
    pub truncation: usize,
    pub tail_bound: f64,
    /// `n^{-1/2}/3`.
    pub classical_lower: f64,
    /// `2√(ln n / n)`.
    pub classical_upper: f64,
}

impl BohrRecord {
    /// Re-evaluates the certificate: `T(r_lower) ≤ 1/2` and
    /// `T(r_lower·(1 + 10·tol)) > 1/2` (or no longer certifiable at that `M`).
    pub fn replay(&self, tol: f64) -> bool {
        let at = series_value(self.r_lower, self.n, self.truncation);
        let above = series_value(self.r_lower * (1.0 + 10.0 * tol), self.n, self.truncation);
        let certified = matches!(at, Ok(v) if v.total() <= THRESHOLD);
        let tight = match above {
            Ok(v) => v.total() > THRESHOLD,
            Err(Error::NeedsLargerTruncation { .. }) => true,
            Err(_) => false,
        };
        certified && tight
    }
}

pub fn classical_lower(n: usize) -> f64 {
    1.0 / (3.0 * (n as f64).sqrt())
}

pub fn classical_upper(n: usize) -> f64 {
    let nf = n as f64;
    2.0 * (nf.ln() / nf).sqrt()
}

fn initial_truncation(n: usize) -> usize {
    4 * ((n as f64).ln().ceil() as usize).max(1)
}

/// Largest `r` with `T(r) ≤ 1/2` at fixed truncation, to relative `tol`.
/// Returns `(r, first rejected radius)`.
fn bisect(ctx: &SeriesContext, n: usize, truncation: usize, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut last_total = 0.0;
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol * lo {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match ctx.value(mid, n, truncation) {
            Ok(v) if v.total() <= THRESHOLD => {
                assert!(v.total() >= last_total, "series total decreased as r increased");
                last_total = v.total();
                lo = mid;
            }
            _ => hi = mid,
        }
    }
    (lo, hi)
}

fn certify(ctx: &SeriesContext, n: usize, config: &BohrConfig) -> Result<BohrRecord> {
    ensure!(n >= 2, Rejected, "n must be >= 2 (K_1 = 1/3 is classical)");
    ensure!(config.tol > 0.0 && config.tol < 1e-2, Contract, "tol must lie in (0, 0.01)");
    let cap = config.m_cap.min(ctx.max_truncation());
    let mut truncation = initial_truncation(n).min(cap);
    loop {
        let (r, rejected) = bisect(ctx, n, truncation, config.tol);
        ensure!(r > 0.0, NotRepresentable, "no certified radius found for n = {n}");
        let truncation_bound = matches!(
            ctx.value(rejected, n, truncation),
            Err(Error::NeedsLargerTruncation { .. })
        );
        if truncation_bound && truncation < cap {
            truncation = (2 * truncation).min(cap);
            continue;
        }
        let v = ctx.value(r, n, truncation)?;
        let nf = n as f64;
        return Ok(BohrRecord {
            n,
            r_lower: r,
            b_lower: r * (nf / nf.ln()).sqrt(),
            r_upper_emp: None,
            truncation,
            tail_bound: v.tail_bound,
            classical_lower: classical_lower(n),
            classical_upper: classical_upper(n),
        });
    }
}

/// Certified lower bound for `K_n`, `n ≥ 2`.
pub fn bohr_lower_certified(n: usize, config: &BohrConfig) -> Result<BohrRecord> {
    if config.m_cap <= SeriesContext::shared().max_truncation() {
        certify(SeriesContext::shared(), n, config)
    } else {
        certify(&SeriesContext::new(config.m_cap), n, config)
    }
}

/// Degree used for the empirical upper estimate: `m ≈ ln n`.
pub fn empirical_degree(n: usize) -> usize {
    ((n as f64).ln().round() as usize).max(1)
}

/// One record per `n`, in input order. Empirical columns are filled only when
/// the configured monomial budget allows.
pub fn bohr_table(n_list: &[usize], config: &BohrConfig) -> Result<Vec<BohrRecord>> {
    ensure!(n_list.iter().all(|&n| n >= 2), Rejected, "every n must be >= 2");
    let owned;
    let ctx = if config.m_cap <= SeriesContext::shared().max_truncation() {
        SeriesContext::shared()
    } else {
        owned = SeriesContext::new(config.m_cap);
        &owned
    };
    n_list
        .par_iter()
        .map(|&n| {
            let mut record = certify(ctx, n, config)?;
            if let Some(emp) = &config.empirical {
                match bohr_upper_empirical(n, empirical_degree(n), emp) {
                    Ok(u) => record.r_upper_emp = Some(u.r_upper_emp),
                    Err(Error::Rejected(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(record)
        })
        .collect()
}
