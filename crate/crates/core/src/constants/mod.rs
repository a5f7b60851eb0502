//! Closed-form constants and constant upper bounds, all evaluated in
//! log-space so that `m` up to `10^5` neither overflows nor underflows.

mod cache;
mod growth;
mod mixed_exponent;
mod multilinear;
mod polynomial;

pub use cache::{BoundCache, BoundKind, CacheEntry};
pub use growth::{growth_report, GrowthRow};
pub use mixed_exponent::{bh_mixed_exponent_bound, MixedExponentBound};
pub use multilinear::{
    bh_mult_classical, bh_mult_closed, bh_mult_recursive, bh_mult_recursive_anchored, closed_log_table,
    ClassicalBound, KSchedule, MultAnchor, MultRecursion,
};
pub use polynomial::{
    bh_pol_analytic_k, bh_pol_available, bh_pol_best, bh_pol_dfoos, bh_pol_polarization, bh_pol_step, PolBest,
    PolTable,
};

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{ensure, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Lower end of the range where the real Khintchine constant has the
/// Gamma-function closed form.
pub const REAL_KHINTCHINE_P0: f64 = 1.847;

/// `(1 − γ)/2`, the growth exponent of the complex multilinear bound.
pub const MULT_GROWTH_EXPONENT_C: f64 = (1.0 - EULER_GAMMA) / 2.0;

/// `(2 − ln 2 − γ)/2`, the growth exponent of the real multilinear bound.
pub const MULT_GROWTH_EXPONENT_R: f64 = (2.0 - std::f64::consts::LN_2 - EULER_GAMMA) / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScalarField {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl ScalarField {
    pub fn tag(self) -> &'static str {
        match self {
            ScalarField::Real => "R",
            ScalarField::Complex => "C",
        }
    }
}

impl std::str::FromStr for ScalarField {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" | "real" => Ok(ScalarField::Real),
            "C" | "c" | "complex" => Ok(ScalarField::Complex),
            other => Err(crate::Error::Rejected(format!("unknown scalar field {other:?}"))),
        }
    }
}

/// A positive bound carried by its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub log_value: f64,
    /// `exp(log_value)`; `+∞` when not representable.
    pub value: f64,
}

impl BoundValue {
    pub fn from_log(log_value: f64) -> Self {
        debug_assert!(log_value.is_finite(), "log bound must be finite");
        Self { log_value, value: log_value.exp() }
    }

    pub fn one() -> Self {
        Self::from_log(0.0)
    }

    pub fn overflowed(&self) -> bool {
        self.value.is_infinite()
    }
}

/// `ζ(k) − 1` for `k = 2..=41`.
const ZETA_MINUS_ONE: [f64; 40] = [
    0.64493406684822643647,
    0.2020569031595942854,
    0.082323233711138191516,
    0.036927755143369926331,
    0.017343061984449139715,
    0.0083492773819228268398,
    0.0040773561979443393787,
    0.0020083928260822144179,
    0.00099457512781808533715,
    0.0004941886041194645587,
    0.00024608655330804829864,
    0.00012271334757848914675,
    0.000061248135058704829259,
    0.000030588236307020493552,
    0.000015282259408651871733,
    7.6371976378997622736e-6,
    3.8172932649998398565e-6,
    1.9082127165539389257e-6,
    9.5396203387279611315e-7,
    4.7693298678780646312e-7,
    2.3845050272773299e-7,
    1.1921992596531107307e-7,
    5.9608189051259479612e-8,
    2.9803503514652280186e-8,
    1.4901554828365041235e-8,
    7.450711789835429492e-9,
    3.7253340247884570548e-9,
    1.8626597235130490064e-9,
    9.3132743241966818287e-10,
    4.656629065033784073e-10,
    2.328311833676505492e-10,
    1.1641550172700519776e-10,
    5.8207720879027008892e-11,
    2.9103850444970996869e-11,
    1.4551921891041984236e-11,
    7.2759598350574810145e-12,
    3.6379795473786511902e-12,
    1.8189896503070659476e-12,
    9.0949478402638892825e-13,
    4.5474737830421540268e-13,
];

/// `ln Γ(2 − ε)` for `ε ∈ [0, 1/2]`, from
/// `ln Γ(2 − ε) = −(1 − γ)ε + Σ_{k≥2} (ζ(k) − 1) ε^k / k`.
///
/// Every term past the first is positive, so the sum keeps full relative
/// accuracy where `Γ` is close to 1.
pub fn ln_gamma_two_minus(eps: f64) -> f64 {
    debug_assert!((0.0..=0.5).contains(&eps));
    let mut acc = 0.0;
    let mut pow = eps;
    for (i, z) in ZETA_MINUS_ONE.iter().enumerate() {
        pow *= eps;
        let term = z * pow / (i + 2) as f64;
        acc += term;
        if term < 1e-18 * acc {
            break;
        }
    }
    acc - (1.0 - EULER_GAMMA) * eps
}

/// `ln(n!)`.
pub fn ln_factorial(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// `ln C(n, k)`.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `ln A_{𝕂,p}`. No extrapolation outside the closed-form range.
pub fn ln_khintchine(p: f64, field: ScalarField) -> Result<f64> {
    match field {
        ScalarField::Complex => {
            ensure!((1.0..=2.0).contains(&p), Domain, "complex Khintchine needs p in [1, 2], got {p}");
            if p == 2.0 {
                return Ok(0.0);
            }
            // Γ((p+2)/2) = Γ(2 − ε) with ε = 1 − p/2
            Ok(-ln_gamma_two_minus(1.0 - p / 2.0) / p)
        }
        ScalarField::Real => {
            ensure!(
                p > REAL_KHINTCHINE_P0 && p <= 2.0,
                Domain,
                "real Khintchine closed form needs p in ({REAL_KHINTCHINE_P0}, 2], got {p}"
            );
            let half_ln_pi = 0.5 * std::f64::consts::PI.ln();
            Ok(-0.5 * std::f64::consts::LN_2 - (ln_gamma((1.0 + p) / 2.0) - half_ln_pi) / p)
        }
    }
}

/// Best Khintchine constant `A_{𝕂,p}` (Steinhaus for ℂ, Rademacher for ℝ).
pub fn khintchine(p: f64, field: ScalarField) -> Result<BoundValue> {
    ln_khintchine(p, field).map(BoundValue::from_log)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_series_matches_oracle() {
        // mpmath, 25 digits
        let cases = [
            (0.5, -0.120_782_237_635_245_222_3),
            (0.25, -0.084_401_121_020_485_555_96),
            (0.001, -0.000_422_461_800_692_153_776_1),
            (1.0 / 3.0, -0.102_314_832_960_640_813_3),
        ];
        for (eps, want) in cases {
            let got = ln_gamma_two_minus(eps);
            assert!((got - want).abs() <= 2e-16 * want.abs(), "eps = {eps}: {got:e} vs {want:e}");
        }
        assert_eq!(ln_gamma_two_minus(0.0), 0.0);
    }

    #[test]
    fn khintchine_at_two_is_one() {
        assert_eq!(khintchine(2.0, ScalarField::Complex).unwrap().value, 1.0);
        let r = khintchine(2.0, ScalarField::Real).unwrap().value;
        assert!((r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn khintchine_complex_at_one() {
        let v = khintchine(1.0, ScalarField::Complex).unwrap().value;
        assert!((v - 2.0 / std::f64::consts::PI.sqrt()).abs() < 1e-14);
        let near = khintchine(1.0 + 1e-9, ScalarField::Complex).unwrap().value;
        assert!((near - v).abs() < 1e-8);
    }

    #[test]
    fn khintchine_oracle_values() {
        // mpmath, 40 digits
        let c = khintchine(4.0 / 3.0, ScalarField::Complex).unwrap().value;
        assert!((c - 1.079_757_117_586_245_3).abs() < 1e-14);
        let r = khintchine(1.9, ScalarField::Real).unwrap().value;
        assert!((r - 1.018_750_310_742_647_8).abs() < 1e-14);
    }

    #[test]
    fn khintchine_domains() {
        assert!(khintchine(0.9, ScalarField::Complex).is_err());
        assert!(khintchine(2.1, ScalarField::Complex).is_err());
        assert!(khintchine(1.847, ScalarField::Real).is_err());
        assert!(khintchine(1.5, ScalarField::Real).is_err());
        assert!(khintchine(1.85, ScalarField::Real).is_ok());
    }

    #[test]
    fn khintchine_complex_nonincreasing() {
        let grid: Vec<f64> = (0..=200).map(|i| 1.0 + i as f64 / 200.0).collect();
        let vals: Vec<f64> = grid.iter().map(|&p| khintchine(p, ScalarField::Complex).unwrap().value).collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0] + 1e-15));
    }

    #[test]
    fn growth_exponents() {
        // 0.211392…, i.e. (1 − 0.5772…)/2
        assert!((MULT_GROWTH_EXPONENT_C - 0.211392).abs() < 5e-7);
        assert!((MULT_GROWTH_EXPONENT_R - 0.36481).abs() < 1e-5);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("C".parse::<ScalarField>().unwrap(), ScalarField::Complex);
        assert_eq!("R".parse::<ScalarField>().unwrap(), ScalarField::Real);
        assert!("Q".parse::<ScalarField>().is_err());
    }
}
