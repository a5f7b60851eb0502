//! Empirical upper estimates for `K_n` from random-sign polynomials.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::ln_binomial;
use crate::error::{ensure, Result};
use crate::rng::{child_seed, rng_from};
use crate::scalar::Cplx;
use crate::tensor_core::ordered_indices;
use crate::witness::{sup_norm_polynomial, CoeffDistribution, EquivClassInfo, HomogeneousPolynomial};

/// Monomials allowed in one random-sign polynomial by default.
pub const DEFAULT_MAX_MONOMIALS: u128 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalConfig {
    pub sign_trials: usize,
    pub restarts: usize,
    pub samples: usize,
    pub seed: u64,
    pub max_monomials: u128,
}

impl Default for EmpiricalConfig {
    fn default() -> Self {
        Self { sign_trials: 16, restarts: 8, samples: 2048, seed: 0, max_monomials: DEFAULT_MAX_MONOMIALS }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BohrUpper {
    /// Not certified: the norm estimate is itself a lower bound.
    pub r_upper_emp: f64,
    pub best_polynomial_seed: u64,
    pub norm_est: f64,
    pub degree: usize,
}

/// `Σ_{|α|=m} ε_α (m choose α) z^α` with Rademacher signs drawn from `seed`.
pub fn sign_polynomial(n: usize, m: usize, seed: u64) -> Result<HomogeneousPolynomial<f64>> {
    let mut rng = rng_from(seed);
    let terms = ordered_indices(m, n)
        .into_iter()
        .map(|idx| {
            let eps: Cplx<f64> = CoeffDistribution::Rademacher.sample(&mut rng);
            let multinomial = EquivClassInfo::of(&idx).cardinality as f64;
            (idx, eps * multinomial)
        })
        .collect();
    HomogeneousPolynomial::from_terms(m, n, terms)
}

/// `Σ_α |c_α| = nᵐ`, so `K_nᵐ nᵐ ≤ ‖P‖_∞` for each sign pattern and
/// `K_n ≤ (‖P‖_∞/nᵐ)^{1/m}`. Returns the smallest value over `sign_trials`.
pub fn bohr_upper_empirical(n: usize, m: usize, config: &EmpiricalConfig) -> Result<BohrUpper> {
    ensure!(n >= 1 && m >= 1, Contract, "n and m must be >= 1");
    ensure!(config.sign_trials >= 1, Contract, "sign_trials must be >= 1");
    let log_count = ln_binomial(n + m - 1, m);
    ensure!(
        log_count <= (config.max_monomials as f64).ln() + 1e-9,
        Rejected,
        "C({}, {m}) monomials exceed the budget of {}",
        n + m - 1,
        config.max_monomials
    );
    let trials: Vec<(f64, u64, f64)> = (0..config.sign_trials)
        .into_par_iter()
        .map(|t| -> Result<(f64, u64, f64)> {
            let s = child_seed(config.seed, t as u64);
            let p = sign_polynomial(n, m, s)?;
            let est = sup_norm_polynomial(&p, config.restarts, config.samples, child_seed(s, 1))?;
            let r = (est.value.ln() - m as f64 * (n as f64).ln()) / m as f64;
            Ok((r.exp().min(1.0), s, est.value))
        })
        .collect::<Result<_>>()?;
    let (r_upper_emp, best_polynomial_seed, norm_est) = trials
        .into_iter()
        .fold((f64::INFINITY, 0, 0.0), |best, t| if t.0 < best.0 { t } else { best });
    Ok(BohrUpper { r_upper_emp, best_polynomial_seed, norm_est, degree: m })
}
