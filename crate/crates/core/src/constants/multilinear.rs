use serde::{Deserialize, Serialize};
use super::{ln_gamma_two_minus, ln_khintchine, BoundValue, ScalarField};
use crate::error::{ensure, Result};

/// How `k` is chosen at each step of `B_m ≤ A_{2k/(k+1)}^{m-k} B_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KSchedule {
    /// `k = m - 1`.
    Predecessor,
    /// `k = ⌊m/2⌋`.
    Halving,
    /// Best `k` at every step (dynamic programming).
    Optimal,
}

impl KSchedule {
    pub fn name(self) -> &'static str {
        match self {
            KSchedule::Predecessor => "pred",
            KSchedule::Halving => "half",
            KSchedule::Optimal => "opt",
        }
    }
}

impl std::str::FromStr for KSchedule {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pred" => Ok(KSchedule::Predecessor),
            "half" => Ok(KSchedule::Halving),
            "opt" => Ok(KSchedule::Optimal),
            other => Err(crate::Error::Rejected(format!("unknown k-schedule {other:?}"))),
        }
    }
}

/// Known value `B_{m0}` the recursion bottoms out at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultAnchor {
    pub m0: usize,
    pub log_value: f64,
}

impl MultAnchor {
    /// `B_1 = 1`.
    pub fn base() -> Self {
        Self { m0: 1, log_value: 0.0 }
    }
}

/// Table of recursive multilinear bounds `m0..=m_max` with the `k` used per step.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultRecursion {
    pub field: ScalarField,
    pub schedule: KSchedule,
    pub anchor: MultAnchor,
    log_bound: Vec<f64>,
    k_used: Vec<usize>,
}

impl MultRecursion {
    pub fn compute(m_max: usize, field: ScalarField, schedule: KSchedule, anchor: MultAnchor) -> Result<Self> {
        ensure!(anchor.m0 >= 1, Contract, "anchor order must be >= 1");
        ensure!(anchor.log_value.is_finite(), Contract, "anchor value must be finite");
        ensure!(m_max >= anchor.m0, Contract, "m = {m_max} is below the anchor order {}", anchor.m0);
        let m0 = anchor.m0;
        // ln A_{2k/(k+1)} for every k the recursion may touch
        let ln_a = (0..m_max)
            .map(|k| {
                if k < m0 {
                    Ok(f64::NAN)
                } else {
                    ln_khintchine(2.0 * k as f64 / (k as f64 + 1.0), field)
                }
            })
            .collect::<Result<Vec<f64>>>()?;
        let mut log_bound = vec![f64::NAN; m_max + 1];
        let mut k_used = vec![0; m_max + 1];
        log_bound[m0] = anchor.log_value;
        k_used[m0] = m0;
        for m in m0 + 1..=m_max {
            let step = |k: usize| (m - k) as f64 * ln_a[k] + log_bound[k];
            let (k, v) = match schedule {
                KSchedule::Predecessor => (m - 1, step(m - 1)),
                KSchedule::Halving => {
                    let k = (m / 2).max(m0);
                    (k, step(k))
                }
                KSchedule::Optimal => (m0..m)
                    .map(|k| (k, step(k)))
                    .fold((m - 1, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best }),
            };
            log_bound[m] = v;
            k_used[m] = k;
        }
        Ok(Self { field, schedule, anchor, log_bound, k_used })
    }

    pub fn m_max(&self) -> usize {
        self.log_bound.len() - 1
    }

    pub fn bound(&self, m: usize) -> Option<BoundValue> {
        if m < self.anchor.m0 || m > self.m_max() {
            None
        } else {
            Some(BoundValue::from_log(self.log_bound[m]))
        }
    }

    /// The `k` used to reach `m` (equal to `m0` at the anchor).
    pub fn k_used(&self, m: usize) -> Option<usize> {
        (m >= self.anchor.m0 && m <= self.m_max()).then(|| self.k_used[m])
    }
}

/// Recursive multilinear bound with the default anchor `B_1 = 1`.
///
/// For the real field the first steps would need the Khintchine constant
/// at `p = 1`, which has no closed form here; use
/// [`bh_mult_recursive_anchored`] with an anchor at `m0 ≥ 13`.
pub fn bh_mult_recursive(m: usize, field: ScalarField, schedule: KSchedule) -> Result<BoundValue> {
    bh_mult_recursive_anchored(m, field, schedule, MultAnchor::base())
}

pub fn bh_mult_recursive_anchored(
    m: usize,
    field: ScalarField,
    schedule: KSchedule,
    anchor: MultAnchor,
) -> Result<BoundValue> {
    ensure!(m >= 1, Contract, "m must be >= 1");
    let table = MultRecursion::compute(m, field, schedule, anchor)?;
    Ok(table.bound(m).expect("m within table"))
}

/// `ln B̄_m` for `m = 0..=m_max` from `∏_{j=2}^m Γ(2 − 1/j)^{j/(2−2j)}`; index 0 is unused.
pub fn closed_log_table(m_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for j in 1..=m_max {
        if j >= 2 {
            let jf = j as f64;
            acc += jf / (2.0 - 2.0 * jf) * ln_gamma_two_minus(1.0 / jf);
        }
        out.push(acc);
    }
    out
}

/// Closed product form of the complex `k = m − 1` recursion.
pub fn bh_mult_closed(m: usize) -> BoundValue {
    BoundValue::from_log(closed_log_table(m.max(1))[m.max(1)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassicalBound {
    /// `m^{(m+1)/(2m)} (√2)^{m−1}`
    Bh1931,
    /// `(√2)^{m−1}`
    DavieKaijser,
    /// `(2/√π)^{m−1}`
    Queffelec,
}

/// Historical multilinear bounds, for comparison columns.
pub fn bh_mult_classical(m: usize, which: ClassicalBound) -> BoundValue {
    let mf = m.max(1) as f64;
    let half_ln2 = 0.5 * std::f64::consts::LN_2;
    let log = match which {
        ClassicalBound::Bh1931 => (mf + 1.0) / (2.0 * mf) * mf.ln() + (mf - 1.0) * half_ln2,
        ClassicalBound::DavieKaijser => (mf - 1.0) * half_ln2,
        ClassicalBound::Queffelec => {
            (mf - 1.0) * (std::f64::consts::LN_2 - 0.5 * std::f64::consts::PI.ln())
        }
    };
    BoundValue::from_log(log)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_OVER_SQRT_PI: f64 = 1.128_379_167_095_512_6;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn base_and_first_steps() {
        let c = ScalarField::Complex;
        assert_eq!(bh_mult_recursive(1, c, KSchedule::Predecessor).unwrap().value, 1.0);
        let b2 = bh_mult_recursive(2, c, KSchedule::Predecessor).unwrap().value;
        assert!(rel(b2, TWO_OVER_SQRT_PI) < 1e-13);
        // mpmath: 2/√π · Γ(5/3)^{-3/4}
        let b3 = bh_mult_recursive(3, c, KSchedule::Predecessor).unwrap().value;
        assert!(rel(b3, 1.218_375_437_007_418_9) < 1e-13);
    }

    #[test]
    fn closed_matches_oracle() {
        assert_eq!(bh_mult_closed(1).value, 1.0);
        assert!(rel(bh_mult_closed(2).value, TWO_OVER_SQRT_PI) < 1e-13);
        assert!(rel(bh_mult_closed(10).value, 1.551_502_156_917_469_4) < 1e-13);
        let got = bh_mult_closed(10_000).log_value;
        assert!((got - 1.893_930_711_245_595_5).abs() < 1e-12, "{got:.17}");
    }

    #[test]
    fn closed_equals_predecessor_recursion() {
        let rec = MultRecursion::compute(200, ScalarField::Complex, KSchedule::Predecessor, MultAnchor::base()).unwrap();
        let closed = closed_log_table(200);
        for m in 1..=200 {
            let a = rec.bound(m).unwrap().value;
            let b = closed[m].exp();
            assert!(rel(a, b) < 1e-12, "m = {m}");
        }
    }

    #[test]
    fn optimal_schedule_never_worse() {
        let c = ScalarField::Complex;
        let pred = MultRecursion::compute(300, c, KSchedule::Predecessor, MultAnchor::base()).unwrap();
        let half = MultRecursion::compute(300, c, KSchedule::Halving, MultAnchor::base()).unwrap();
        let opt = MultRecursion::compute(300, c, KSchedule::Optimal, MultAnchor::base()).unwrap();
        for m in 1..=300 {
            let o = opt.bound(m).unwrap().log_value;
            assert!(o <= pred.bound(m).unwrap().log_value + 1e-12);
            assert!(o <= half.bound(m).unwrap().log_value + 1e-12);
        }
        assert_eq!(half.k_used(10), Some(5));
        assert_eq!(pred.k_used(10), Some(9));
    }

    #[test]
    fn real_field_needs_anchor() {
        let r = ScalarField::Real;
        assert!(bh_mult_recursive(20, r, KSchedule::Predecessor).is_err());
        let bad = MultAnchor { m0: 12, log_value: 0.0 };
        assert!(bh_mult_recursive_anchored(20, r, KSchedule::Predecessor, bad).is_err());
        let ok = MultAnchor { m0: 13, log_value: 0.0 };
        let v = bh_mult_recursive_anchored(20, r, KSchedule::Predecessor, ok).unwrap();
        assert!(v.log_value > 0.0);
        // halving can't go below the anchor
        let h = MultRecursion::compute(40, r, KSchedule::Halving, ok).unwrap();
        assert!(h.k_used(20).unwrap() >= 13);
    }

    #[test]
    fn classical_values() {
        assert!(rel(bh_mult_classical(3, ClassicalBound::DavieKaijser).value, 2.0) < 1e-15);
        assert!(rel(bh_mult_classical(2, ClassicalBound::Queffelec).value, TWO_OVER_SQRT_PI) < 1e-14);
        assert_eq!(bh_mult_classical(1, ClassicalBound::Bh1931).value, 1.0);
    }

    #[test]
    fn log_space_survives_large_m() {
        let b = bh_mult_closed(100_000);
        assert!(b.log_value.is_finite() && !b.overflowed());
        let q = bh_mult_classical(100_000, ClassicalBound::Bh1931);
        assert!(q.log_value.is_finite());
        assert!(q.overflowed());
    }
}
