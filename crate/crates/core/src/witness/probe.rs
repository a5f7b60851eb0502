//! Growth of the BH ratio in the dimension, for admissible and inadmissible
//! exponents.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{character_form, random_form, sup_norm_multilinear, CoeffDistribution, MultilinearForm};
use crate::error::{ensure, Result};
use crate::rng::child_seed;
use crate::tensor_core::{mixed_norm, MixedExponent};

// The ascent creeps on large structured forms; after 50 sweeps it sits within
// 0.1% of the optimum, far below what moves a log-log slope.
const PROBE_ASCENT_ITERS: usize = 50;

/// Forms drawn by the probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeEnsemble {
    /// Independent `±1` coefficients.
    Rademacher,
    /// Independent unimodular coefficients.
    Steinhaus,
    /// Twisted character forms, see [`character_form`].
    Character,
}

impl ProbeEnsemble {
    fn draw(self, m: usize, n: usize, seed: u64) -> Result<MultilinearForm<f64>> {
        match self {
            Self::Rademacher => random_form(m, n, CoeffDistribution::Rademacher, seed),
            Self::Steinhaus => random_form(m, n, CoeffDistribution::Steinhaus, seed),
            Self::Character => character_form(m, n, seed),
        }
    }
}

impl std::str::FromStr for ProbeEnsemble {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rademacher" => Ok(Self::Rademacher),
            "steinhaus" => Ok(Self::Steinhaus),
            "character" => Ok(Self::Character),
            other => Err(crate::Error::Rejected(format!("unknown ensemble {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthPoint {
    pub n: usize,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub q: Vec<f64>,
    pub ensemble: ProbeEnsemble,
    pub trials: usize,
    pub restarts: usize,
    pub points: Vec<GrowthPoint>,
    /// Least-squares slope of `log max_ratio` against `log n`.
    pub slope: f64,
}

/// For each `n`, the largest BH ratio with exponent `q` over `trials` forms
/// from `ensemble`, and the fitted log-log slope across `n_list`.
///
/// Every ensemble has unimodular coefficients, so the coefficient side is
/// exactly `n^{Σ 1/q_j}` and the slope only reflects how the sup norm scales.
pub fn unboundedness_probe(
    q: &MixedExponent<f64>,
    n_list: &[usize],
    ensemble: ProbeEnsemble,
    trials: usize,
    restarts: usize,
    seed: u64,
) -> Result<GrowthReport> {
    ensure!(n_list.len() >= 2, Contract, "need at least two dimensions to fit a slope");
    ensure!(n_list.iter().all(|&n| n >= 1), Contract, "dimensions must be >= 1");
    ensure!(trials >= 1 && restarts >= 1, Contract, "trials and restarts must be >= 1");
    let m = q.len();
    let mut points = Vec::with_capacity(n_list.len());
    for (pos, &n) in n_list.iter().enumerate() {
        let n_seed = child_seed(seed, pos as u64);
        let ratios: Vec<f64> = (0..trials)
            .into_par_iter()
            .map(|t| -> Result<f64> {
                let s = child_seed(n_seed, t as u64);
                let form = ensemble.draw(m, n, s)?;
                let lhs = mixed_norm(form.coeffs(), q)?;
                let norm = sup_norm_multilinear(&form, restarts, PROBE_ASCENT_ITERS, child_seed(s, 1))?.value;
                Ok(if norm > 0.0 { lhs / norm } else { 0.0 })
            })
            .collect::<Result<_>>()?;
        let max_ratio = ratios.into_iter().fold(0.0, f64::max);
        points.push(GrowthPoint { n, max_ratio });
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.max_ratio.ln()).collect();
    let slope = least_squares_slope(&xs, &ys);
    Ok(GrowthReport { q: q.as_slice().to_vec(), ensemble, trials, restarts, points, slope })
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 { 0.0 } else { sxy / sxx }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power() {
        let xs = [1.0f64, 2.0, 4.0, 8.0].map(f64::ln);
        let ys = xs.map(|x| 0.5 * x + 1.0);
        assert!((least_squares_slope(&xs, &ys) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn character_probe_separates_exponents() {
        let ns = [2, 4, 8, 16];
        let run = |q: Vec<f64>| unboundedness_probe(&MixedExponent::new(q).unwrap(), &ns, ProbeEnsemble::Character, 3, 8, 1).unwrap();
        let bh = run(vec![4.0 / 3.0, 4.0 / 3.0]);
        assert!(bh.slope.abs() < 0.1, "{bh:?}");
        let l1 = run(vec![1.0, 1.0]);
        assert!((l1.slope - 0.5).abs() < 0.15, "{l1:?}");
        let boundary = run(vec![1.0, 2.0]);
        assert!(boundary.slope.abs() < 0.1, "{boundary:?}");
    }

    #[test]
    fn unimodular_ensembles_differ_by_half_power() {
        // ‖a‖₁/‖a‖_{4/3} = √n for every unimodular 2-tensor, so the slopes differ by 1/2
        let ns = [2, 4, 8];
        for ens in [ProbeEnsemble::Rademacher, ProbeEnsemble::Steinhaus] {
            let a = unboundedness_probe(&MixedExponent::uniform(2, 4.0 / 3.0).unwrap(), &ns, ens, 10, 4, 5).unwrap();
            let b = unboundedness_probe(&MixedExponent::uniform(2, 1.0).unwrap(), &ns, ens, 10, 4, 5).unwrap();
            assert!((b.slope - a.slope - 0.5).abs() < 1e-9);
            assert!(a.slope < 0.1);
        }
        assert!(unboundedness_probe(&MixedExponent::uniform(2, 1.0).unwrap(), &[4], ProbeEnsemble::Rademacher, 3, 1, 0).is_err());
        assert_eq!("character".parse::<ProbeEnsemble>().unwrap(), ProbeEnsemble::Character);
    }
}
