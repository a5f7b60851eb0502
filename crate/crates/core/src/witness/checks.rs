//! Empirical checks that compare coefficient norms with estimated sup norms
//! or Monte-Carlo moments.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    random_torus_point, sup_norm_multilinear, sup_norm_polynomial, symmetrize, CoeffDistribution, HomogeneousPolynomial,
    MultilinearForm, DEFAULT_RESTARTS,
};
use crate::constants::{khintchine, ln_factorial, ScalarField};
use crate::error::{ensure, Result};
use crate::report::CheckReport;
use crate::rng::{child_rng, child_seed, rng_from, Rng};
use crate::scalar::{Cplx, Real};
use crate::tensor_core::{mixed_norm, MixedExponent};

/// Iteration cap for alternating ascent inside the checks.
const ASCENT_ITERS: usize = 500;

/// Monte-Carlo samples drawn per parallel task; fixes the seed layout.
const MC_CHUNK: usize = 4096;

/// Below this many samples a Monte-Carlo verdict is flagged inconclusive.
const MIN_STABLE_TRIALS: usize = 1000;

const HARRIS_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BhRatio {
    pub lhs: f64,
    pub norm_est: f64,
    /// `lhs / norm_est`; an upper estimate of the true ratio. `None` for the zero form.
    pub ratio: Option<f64>,
    pub restarts: usize,
}

/// Mixed coefficient norm against the estimated `‖L‖`. Defaults to the
/// symmetric exponent `q_i = 2m/(m+1)`.
pub fn bh_ratio<T: Real>(
    form: &MultilinearForm<T>,
    q: Option<&MixedExponent<T>>,
    restarts: usize,
    seed: u64,
) -> Result<BhRatio> {
    let default;
    let q = match q {
        Some(q) => q,
        None => {
            default = MixedExponent::bohnenblust_hille(form.order());
            &default
        }
    };
    let lhs = mixed_norm(form.coeffs(), q)?.as_f64();
    let norm = sup_norm_multilinear(form, restarts, ASCENT_ITERS, seed)?;
    let norm_est = norm.value.as_f64();
    let ratio = (norm_est > 0.0).then(|| lhs / norm_est);
    Ok(BhRatio { lhs, norm_est, ratio, restarts })
}

/// `(m₁!⋯m_k! / m₁^{m₁}⋯m_k^{m_k}) · mᵐ/m!`.
pub fn harris_factor(partition: &[usize]) -> f64 {
    let m: usize = partition.iter().sum();
    let ln_part: f64 = partition.iter().map(|&mj| ln_factorial(mj) - mj as f64 * (mj as f64).ln()).sum();
    (ln_part + m as f64 * (m as f64).ln() - ln_factorial(m)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarrisConfig {
    pub trials: usize,
    /// Phase-ascent restarts for `‖P‖_∞`, before the 8× allocation.
    pub restarts: usize,
    /// Random torus samples for `‖P‖_∞`, before the 8× allocation.
    pub samples: usize,
    pub seed: u64,
}

impl Default for HarrisConfig {
    fn default() -> Self {
        Self { trials: 10_000, restarts: DEFAULT_RESTARTS, samples: 4096, seed: 0 }
    }
}

fn ones_then(tail: usize) -> impl Iterator<Item = usize> {
    std::iter::repeat_n(1, tail)
}

/// Checks `|L(w₁,…,w₁, …, w_k,…,w_k)| ≤ factor · ‖P‖_∞` with `w_j` repeated
/// `m_j` times and `L` the symmetrization of `P`.
///
/// The norm side gets 8× the configured effort; every diagonal value `|P(w)|`
/// seen along the way also lower-bounds `‖P‖_∞` and is folded in. A failure
/// is re-run once at 10× effort before it is reported.
pub fn harris_check<T: Real>(p: &HomogeneousPolynomial<T>, partition: &[usize], config: &HarrisConfig) -> Result<CheckReport> {
    ensure!(
        !partition.is_empty() && partition.iter().all(|&mj| mj >= 1),
        Rejected,
        "partition parts must be >= 1"
    );
    let total: usize = partition.iter().sum();
    ensure!(total == p.degree(), Rejected, "partition {partition:?} does not sum to degree {}", p.degree());
    ensure!(config.trials >= 1, Contract, "trials must be >= 1");

    let form = symmetrize(p)?;
    let factor = harris_factor(partition);
    let n = p.dim();
    let trial_seed = child_seed(config.seed, 1);

    let chunks = config.trials.div_ceil(MC_CHUNK);
    let (max_lhs, max_diag) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = child_rng(trial_seed, c as u64);
            let count = MC_CHUNK.min(config.trials - c * MC_CHUNK);
            let (mut lhs, mut diag) = (0.0f64, 0.0f64);
            for _ in 0..count {
                let ws: Vec<Vec<Cplx<T>>> = partition.iter().map(|_| random_torus_point(n, &mut rng)).collect();
                let slots: Vec<&[Cplx<T>]> = partition
                    .iter()
                    .zip(&ws)
                    .flat_map(|(&mj, w)| ones_then(mj).map(move |_| w.as_slice()))
                    .collect();
                lhs = lhs.max(form.eval(&slots).expect("slot shapes match").norm().as_f64());
                for w in &ws {
                    diag = diag.max(p.eval(w).norm().as_f64());
                }
            }
            (lhs, diag)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));

    let mut escalated = false;
    let mut effort = 8;
    loop {
        let est = sup_norm_polynomial(p, config.restarts * effort, config.samples * effort, child_seed(config.seed, 2))?;
        let norm = est.value.as_f64().max(max_diag);
        let rhs = factor * norm;
        let report = CheckReport::with_abs_slack(max_lhs, rhs, HARRIS_REL_TOL * rhs);
        if report.holds || escalated {
            let max_ratio = report.ratio();
            return Ok(report
                .with("factor", factor)
                .with("norm_est", norm)
                .with("max_ratio", max_ratio)
                .with("trials", config.trials as u64)
                .with("escalated", escalated));
        }
        escalated = true;
        effort *= 10;
    }
}

/// Mean and standard error of a Monte-Carlo sample of `|X|^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloMoment {
    pub mean: f64,
    pub std_err: f64,
    pub samples: usize,
}

impl MonteCarloMoment {
    /// Draws `samples` values in fixed-size chunks, each with its own child seed.
    fn collect(samples: usize, seed: u64, draw: impl Fn(&mut Rng) -> f64 + Sync) -> Self {
        let chunks = samples.div_ceil(MC_CHUNK);
        let parts: Vec<(f64, f64)> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = child_rng(seed, c as u64);
                let count = MC_CHUNK.min(samples - c * MC_CHUNK);
                let (mut s, mut s2) = (0.0, 0.0);
                for _ in 0..count {
                    let x = draw(&mut rng);
                    s += x;
                    s2 += x * x;
                }
                (s, s2)
            })
            .collect();
        let (s, s2) = parts.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
        let k = samples as f64;
        let mean = s / k;
        let var = if samples > 1 { ((s2 - k * mean * mean) / (k - 1.0)).max(0.0) } else { f64::INFINITY };
        Self { mean, std_err: (var / k).sqrt(), samples }
    }

    /// `(mean + 3·std_err)^{1/p}`, the upper end of the 3σ band for the p-norm.
    fn upper_root(&self, p: f64) -> f64 {
        (self.mean + 3.0 * self.std_err).powf(1.0 / p)
    }

    fn inconclusive(&self) -> bool {
        self.samples < MIN_STABLE_TRIALS || !(3.0 * self.std_err < self.mean)
    }
}

fn mc_report(lhs: f64, constant: f64, p: f64, moment: MonteCarloMoment) -> CheckReport {
    let estimate = moment.mean.powf(1.0 / p);
    let rhs = constant * estimate;
    let slack = constant * (moment.upper_root(p) - estimate);
    CheckReport::with_abs_slack(lhs, rhs, slack)
        .with("constant", constant)
        .with("lp_estimate", estimate)
        .with("std_err", moment.std_err)
        .with("trials", moment.samples as u64)
        .with("inconclusive", moment.inconclusive())
}

/// `(Σ|a_i|²)^{1/2} ≤ A_{𝕂,p} (𝔼|Σ a_i ξ_i|^p)^{1/p}` for a given vector `a`,
/// with `ξ` Rademacher (real) or Steinhaus (complex).
pub fn khintchine_empirical_for(a: &[Cplx<f64>], p: f64, trials: usize, field: ScalarField, seed: u64) -> Result<CheckReport> {
    ensure!(!a.is_empty() && trials >= 1, Contract, "need a nonempty vector and trials >= 1");
    let constant = khintchine(p, field)?.value;
    let lhs = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let xi = match field {
        ScalarField::Real => CoeffDistribution::Rademacher,
        ScalarField::Complex => CoeffDistribution::Steinhaus,
    };
    let moment = MonteCarloMoment::collect(trials, seed, |rng| {
        let s: Cplx<f64> = a.iter().map(|ai| ai * xi.sample::<f64>(rng)).sum();
        s.norm().powf(p)
    });
    Ok(mc_report(lhs, constant, p, moment).with("p", p).with("field", field.tag()))
}

/// Khintchine check for a Gaussian vector of length `n` (real Gaussian for
/// the real field) drawn from `seed`.
pub fn khintchine_empirical(p: f64, n: usize, trials: usize, field: ScalarField, seed: u64) -> Result<CheckReport> {
    ensure!(n >= 1, Contract, "n must be >= 1");
    let dist = match field {
        ScalarField::Real => CoeffDistribution::RealGaussian,
        ScalarField::Complex => CoeffDistribution::Gaussian,
    };
    let mut rng = rng_from(child_seed(seed, 0));
    let a: Vec<Cplx<f64>> = (0..n).map(|_| dist.sample(&mut rng)).collect();
    khintchine_empirical_for(&a, p, trials, field, child_seed(seed, 1))
}

/// `(Σ|a_α|²)^{1/2} ≤ (2/p)^{m/2} ‖P‖_{L^p(𝕋ⁿ)}` with the `L^p` norm estimated
/// from uniform torus samples.
pub fn poly_khintchine_check<T: Real>(p: &HomogeneousPolynomial<T>, exponent: f64, trials: usize, seed: u64) -> Result<CheckReport> {
    ensure!((1.0..=2.0).contains(&exponent), Rejected, "exponent must lie in [1, 2], got {exponent}");
    ensure!(trials >= 1, Contract, "trials must be >= 1");
    let lhs = p.coefficient_l2().as_f64();
    let constant = (2.0 / exponent).powf(p.degree() as f64 / 2.0);
    let n = p.dim();
    let moment = MonteCarloMoment::collect(trials, seed, |rng| {
        let z = random_torus_point::<T>(n, rng);
        p.eval(&z).norm().as_f64().powf(exponent)
    });
    Ok(mc_report(lhs, constant, exponent, moment).with("p", exponent))
}
