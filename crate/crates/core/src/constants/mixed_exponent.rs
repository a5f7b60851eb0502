use serde::{Deserialize, Serialize};

use super::multilinear::{bh_mult_recursive, closed_log_table, KSchedule};
use super::{ln_khintchine, BoundValue, ScalarField};
use crate::error::{ensure, Error, Result};
use crate::tensor_core::MixedExponent;

const EXPONENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedExponentBound {
    /// Number of slots carrying `2k/(k+1)` in the vertex exponents interpolated.
    pub k: usize,
    pub bound: BoundValue,
}

/// Constant for a Bohnenblust–Hille exponent `q` (`Σ 1/q_i = (m+1)/2`)
/// obtained by interpolating the vertex exponents `(2k/(k+1), …, 2, …)`.
///
/// Picks the largest `k` with every `q_i ∈ [2k/(k+1), 2]`; the constant is
/// `A_{𝕂,2k/(k+1)}^{m−k} B̄_k` whatever the interpolation weights.
pub fn bh_mixed_exponent_bound(q: &MixedExponent<f64>, field: ScalarField) -> Result<MixedExponentBound> {
    let m = q.len();
    let target = (m as f64 + 1.0) / 2.0;
    let sum = q.reciprocal_sum();
    ensure!(
        (sum - target).abs() <= 1e-9,
        Rejected,
        "sum of 1/q_i is {sum}, a Bohnenblust-Hille exponent needs {target}"
    );
    let qs = q.as_slice();
    let lo = qs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = qs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let vertex = |k: usize| 2.0 * k as f64 / (k as f64 + 1.0);
    let k = (1..=m).rev().find(|&k| lo >= vertex(k) - EXPONENT_TOL);
    let k = match k {
        Some(k) if hi <= 2.0 + EXPONENT_TOL => k,
        _ => {
            return Err(Error::NotRepresentable(format!(
                "exponents span [{lo}, {hi}], not inside any [2k/(k+1), 2]"
            )))
        }
    };
    let log_bk = match field {
        ScalarField::Complex => closed_log_table(k)[k],
        ScalarField::Real => bh_mult_recursive(k, field, KSchedule::Predecessor)?.log_value,
    };
    let log_a = if k == m { 0.0 } else { ln_khintchine(vertex(k), field)? };
    Ok(MixedExponentBound {
        k,
        bound: BoundValue::from_log((m - k) as f64 * log_a + log_bk),
    })
}
