use serde::{Deserialize, Serialize};

use super::multilinear::closed_log_table;
use super::{ln_factorial, BoundValue};
use crate::error::{ensure, Result};

/// Best `k` and the bound it gives for the polynomial constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolBest {
    pub k_star: usize,
    pub bound: BoundValue,
}

/// Precomputed `ln B̄^mult_k` and `ln k!` up to `m_max`.
#[derive(Debug, Clone)]
pub struct PolTable {
    closed: Vec<f64>,
    ln_fact: Vec<f64>,
}

impl PolTable {
    pub fn new(m_max: usize) -> Self {
        let m_max = m_max.max(1);
        Self {
            closed: closed_log_table(m_max),
            ln_fact: (0..=m_max).map(ln_factorial).collect(),
        }
    }

    pub fn m_max(&self) -> usize {
        self.closed.len() - 1
    }

    pub fn closed_log(&self, m: usize) -> f64 {
        self.closed[m]
    }

    /// `ln` of `(1+1/k)^{(m−k)/2} · m^m/(m−k)^{m−k} · ((m−k)!/m!)^{1/2} · B̄^mult_k`.
    pub fn step_log(&self, m: usize, k: usize) -> f64 {
        debug_assert!(m >= 2 && k >= 1 && k < m && m <= self.m_max());
        let (mf, kf) = (m as f64, k as f64);
        let r = (m - k) as f64;
        0.5 * r * (1.0 / kf).ln_1p() + mf * mf.ln() - r * r.ln()
            + 0.5 * (self.ln_fact[m - k] - self.ln_fact[m])
            + self.closed[k]
    }

    pub fn best(&self, m: usize) -> PolBest {
        debug_assert!(m >= 2);
        let (k_star, log) = (1..m)
            .map(|k| (k, self.step_log(m, k)))
            .fold((1, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best });
        PolBest { k_star, bound: BoundValue::from_log(log) }
    }

    pub fn dfoos_log(&self, m: usize) -> f64 {
        let r = (m - 1) as f64;
        r * (1.0 / r).ln_1p() + 0.5 * (m as f64).ln() + 0.5 * r * std::f64::consts::LN_2
    }

    /// `B̄^mult_m · m^{m/2} (m+1)^{(m+1)/2} / (2^m (m!)^{(m+1)/(2m)})`.
    pub fn polarization_log(&self, m: usize) -> f64 {
        let mf = m as f64;
        self.closed[m] + 0.5 * mf * mf.ln() + 0.5 * (mf + 1.0) * (mf + 1.0).ln()
            - mf * std::f64::consts::LN_2
            - (mf + 1.0) / (2.0 * mf) * self.ln_fact[m]
    }

    /// Smallest of the polynomial bounds on offer: `1` at `m = 1`, otherwise
    /// `min(best k-scan, polarization)`.
    pub fn available_log(&self, m: usize) -> f64 {
        if m <= 1 {
            0.0
        } else {
            self.best(m).bound.log_value.min(self.polarization_log(m))
        }
    }
}

/// One step of the polynomial-from-multilinear bound with split `k`.
pub fn bh_pol_step(m: usize, k: usize) -> Result<BoundValue> {
    ensure!(m >= 2, Contract, "m must be >= 2, got {m}");
    ensure!(k >= 1 && k < m, Contract, "k = {k} outside [1, {}]", m - 1);
    Ok(BoundValue::from_log(PolTable::new(m).step_log(m, k)))
}

/// Exhaustive scan of `k ∈ [1, m−1]`.
pub fn bh_pol_best(m: usize) -> Result<PolBest> {
    ensure!(m >= 2, Contract, "m must be >= 2, got {m}");
    Ok(PolTable::new(m).best(m))
}

/// `round(√(m / ln m))` clamped to `[1, m−1]`, the asymptotic choice.
pub fn bh_pol_analytic_k(m: usize) -> usize {
    if m < 3 {
        return 1;
    }
    let mf = m as f64;
    ((mf / mf.ln()).sqrt().round() as usize).clamp(1, m - 1)
}

/// `(1 + 1/(m−1))^{m−1} √m (√2)^{m−1}`.
pub fn bh_pol_dfoos(m: usize) -> Result<BoundValue> {
    ensure!(m >= 2, Contract, "m must be >= 2, got {m}");
    Ok(BoundValue::from_log(PolTable::new(1).dfoos_log(m)))
}

/// Polarization bound built on the closed multilinear bound.
pub fn bh_pol_polarization(m: usize) -> Result<BoundValue> {
    ensure!(m >= 1, Contract, "m must be >= 1");
    Ok(BoundValue::from_log(PolTable::new(m).polarization_log(m)))
}

/// Best polynomial bound available at `m` (see [`PolTable::available_log`]).
pub fn bh_pol_available(m: usize) -> BoundValue {
    BoundValue::from_log(PolTable::new(m.max(1)).available_log(m))
}
