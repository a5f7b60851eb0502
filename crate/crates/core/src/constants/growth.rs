use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::multilinear::{bh_mult_classical, ClassicalBound, KSchedule, MultAnchor, MultRecursion};
use super::polynomial::{bh_pol_analytic_k, PolTable};
use super::{ScalarField, MULT_GROWTH_EXPONENT_C};
use crate::error::{ensure, Result};

/// One row of the constant-growth table. Values may be `+∞` when only the
/// log is representable; the `log_*` columns are always finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub m: usize,
    pub closed: f64,
    pub recursive: f64,
    pub bh1931: f64,
    pub davie_kaijser: f64,
    pub queffelec: f64,
    pub pol_best: f64,
    pub log_pol_best: f64,
    pub k_star: usize,
    pub pol_analytic: f64,
    pub k_analytic: usize,
    pub dfoos: f64,
    pub log_dfoos: f64,
    pub polarization: f64,
    /// `closed(m) / m^{(1−γ)/2}`.
    pub ratio: f64,
    /// `closed(m) − closed(m−1)`.
    pub diff: f64,
}

/// Complex-field bound table for `m = 2..=m_max`.
pub fn growth_report(m_max: usize) -> Result<Vec<GrowthRow>> {
    ensure!(m_max >= 2, Contract, "m_max must be >= 2");
    let table = PolTable::new(m_max);
    let rec = MultRecursion::compute(m_max, ScalarField::Complex, KSchedule::Predecessor, MultAnchor::base())?;
    let rows = (2..=m_max)
        .into_par_iter()
        .map(|m| {
            let mf = m as f64;
            let closed = table.closed_log(m).exp();
            let best = table.best(m);
            let ka = bh_pol_analytic_k(m);
            GrowthRow {
                m,
                closed,
                recursive: rec.bound(m).expect("in table").value,
                bh1931: bh_mult_classical(m, ClassicalBound::Bh1931).value,
                davie_kaijser: bh_mult_classical(m, ClassicalBound::DavieKaijser).value,
                queffelec: bh_mult_classical(m, ClassicalBound::Queffelec).value,
                pol_best: best.bound.value,
                log_pol_best: best.bound.log_value,
                k_star: best.k_star,
                pol_analytic: table.step_log(m, ka).exp(),
                k_analytic: ka,
                dfoos: table.dfoos_log(m).exp(),
                log_dfoos: table.dfoos_log(m),
                polarization: table.polarization_log(m).exp(),
                ratio: (table.closed_log(m) - MULT_GROWTH_EXPONENT_C * mf.ln()).exp(),
                diff: closed - table.closed_log(m - 1).exp(),
            }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m2_row() {
        let rows = growth_report(10).unwrap();
        assert_eq!(rows.len(), 9);
        let r = &rows[0];
        assert_eq!(r.m, 2);
        assert!((r.closed - r.recursive).abs() <= 1e-15 * r.closed);
        assert!((r.pol_best - 4.0).abs() < 1e-13);
        assert_eq!(r.k_star, 1);
    }

    #[test]
    fn differences_shrink() {
        let rows = growth_report(2000).unwrap();
        assert!(rows.iter().all(|r| r.diff > 0.0));
        // monotone decreasing beyond small m
        assert!(rows.windows(2).skip(5).all(|w| w[1].diff < w[0].diff));
        assert!(rows.last().unwrap().diff < rows[0].diff / 100.0);
    }
}
