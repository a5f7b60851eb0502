//! Lower estimates of sup norms over the torus.
//!
//! By the maximum modulus principle both `‖L‖` and `‖P‖_∞` over the closed
//! polydisk are attained on `𝕋ⁿ`, so every value found at a torus point is a
//! certified lower bound.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{random_torus_point, HomogeneousPolynomial, MultilinearForm};
use crate::error::{ensure, Result};
use crate::rng::{child_rng, child_seed};
use crate::scalar::{unimodular, Cplx, Real};

pub const DEFAULT_RESTARTS: usize = 32;

/// Coordinate sweeps per polynomial restart.
const POLY_MAX_SWEEPS: usize = 200;

const REL_IMPROVEMENT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    /// Attained at an explicit torus point; never exceeds the true norm.
    LowerCertified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate<T> {
    pub value: T,
    pub kind: NormKind,
    pub restarts: usize,
    pub converged: bool,
}

/// One run of alternating slot-wise maximization.
#[derive(Debug, Clone)]
pub struct AscentRun<T> {
    pub value: T,
    pub converged: bool,
    /// Objective after every slot update.
    pub trace: Vec<T>,
    pub point: Vec<Vec<Cplx<T>>>,
}

/// Alternating maximization of `|L|` from `start`.
///
/// With all slots but `j` fixed, `L` is linear in `z⁽ʲ⁾` with coefficients
/// `c`; the best unimodular choice is `z_i = conj(c_i)/|c_i|`, giving `Σ|c_i|`.
pub fn alternating_ascent<T: Real>(form: &MultilinearForm<T>, start: Vec<Vec<Cplx<T>>>, max_iters: usize) -> AscentRun<T> {
    let mut slots = start;
    let mut trace = Vec::new();
    let mut value = T::zero();
    let mut converged = false;
    let tol = T::lit(REL_IMPROVEMENT);
    for _ in 0..max_iters.max(1) {
        let before = value;
        for j in 0..form.order() {
            let c = form.slot_functional(j, &slots);
            let mut total = T::zero();
            for (zi, ci) in slots[j].iter_mut().zip(&c) {
                let r = ci.norm();
                if r > T::zero() {
                    *zi = ci.conj() / r;
                    total = total + r;
                }
            }
            debug_assert!(
                total >= value * (T::one() - T::lit(1e-12)),
                "slot update decreased the objective"
            );
            value = total;
            trace.push(total);
        }
        if value - before <= tol * value {
            converged = true;
            break;
        }
    }
    AscentRun { value, converged, trace, point: slots }
}

/// Multistart alternating maximization; returns the best lower estimate of `‖L‖`.
///
/// Restart `r` uses a seed derived from `(seed, r)`, so adding restarts never
/// lowers the estimate. Restart 0 starts from the all-ones point.
pub fn sup_norm_multilinear<T: Real>(
    form: &MultilinearForm<T>,
    restarts: usize,
    max_iters: usize,
    seed: u64,
) -> Result<NormEstimate<T>> {
    ensure!(restarts >= 1, Contract, "restarts must be >= 1");
    if form.coeffs().is_zero() {
        return Ok(NormEstimate { value: T::zero(), kind: NormKind::LowerCertified, restarts, converged: true });
    }
    let (m, n) = (form.order(), form.dim());
    let runs: Vec<(T, bool)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let start = if r == 0 {
                vec![vec![Cplx::new(T::one(), T::zero()); n]; m]
            } else {
                let mut rng = child_rng(seed, r as u64);
                (0..m).map(|_| random_torus_point(n, &mut rng)).collect()
            };
            let run = alternating_ascent(form, start, max_iters);
            (run.value, run.converged)
        })
        .collect();
    let (value, converged) = runs
        .into_iter()
        .fold((T::zero(), false), |best, r| if r.0 > best.0 { r } else { best });
    Ok(NormEstimate { value, kind: NormKind::LowerCertified, restarts, converged })
}

fn eval_univariate<T: Real>(b: &[Cplx<T>], theta: T) -> T {
    // Horner in w = e^{iθ}
    let w = unimodular(theta);
    let mut acc = Cplx::new(T::zero(), T::zero());
    for bd in b.iter().rev() {
        acc = acc * w + bd;
    }
    acc.norm()
}

/// `argmax_θ |Σ_d b_d e^{idθ}|` by dense grid then golden-section refinement.
fn maximize_phase<T: Real>(b: &[Cplx<T>]) -> (T, T) {
    let degree = b.len().saturating_sub(1);
    let grid = 64.max(16 * (degree + 1));
    let step = T::lit(std::f64::consts::TAU / grid as f64);
    let (mut best_t, mut best_v) = (T::zero(), T::neg_infinity());
    for g in 0..grid {
        let t = step * T::lit(g as f64);
        let v = eval_univariate(b, t);
        if v > best_v {
            best_t = t;
            best_v = v;
        }
    }
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let (mut lo, mut hi) = (best_t - step, best_t + step);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (eval_univariate(b, x1), eval_univariate(b, x2));
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval_univariate(b, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval_univariate(b, x1);
        }
    }
    let (t, v) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    if v >= best_v {
        (t, v)
    } else {
        (best_t, best_v)
    }
}

/// Cyclic coordinate phase ascent for `|P|` from `z`.
pub fn phase_ascent<T: Real>(p: &HomogeneousPolynomial<T>, mut z: Vec<Cplx<T>>, max_sweeps: usize) -> (T, Vec<Cplx<T>>, bool) {
    let mut value = p.eval(&z).norm();
    let tol = T::lit(REL_IMPROVEMENT);
    let mut converged = false;
    for _ in 0..max_sweeps.max(1) {
        let before = value;
        for j in 0..p.dim() {
            let b = p.coordinate_coefficients(j, &z);
            let (theta, v) = maximize_phase(&b);
            if v > value {
                z[j] = unimodular(theta);
                value = v;
            }
        }
        if value - before <= tol * value {
            converged = true;
            break;
        }
    }
    // report the value at the final point itself so the bound stays attained
    (p.eval(&z).norm(), z, converged)
}

/// Lower estimate of `‖P‖_∞`: best of `samples` uniform torus points and
/// `restarts` coordinate phase ascents (restart 0 starts at the best sample).
pub fn sup_norm_polynomial<T: Real>(
    p: &HomogeneousPolynomial<T>,
    restarts: usize,
    samples: usize,
    seed: u64,
) -> Result<NormEstimate<T>> {
    ensure!(restarts >= 1 && samples >= 1, Contract, "restarts and samples must be >= 1");
    if p.is_zero() {
        return Ok(NormEstimate { value: T::zero(), kind: NormKind::LowerCertified, restarts, converged: true });
    }
    let n = p.dim();
    const CHUNK: usize = 256;
    let chunks = samples.div_ceil(CHUNK);
    let sample_seed = child_seed(seed, u64::MAX);
    let best_sample = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = child_rng(sample_seed, c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut best = (T::neg_infinity(), Vec::new());
            for _ in 0..count {
                let z = random_torus_point(n, &mut rng);
                let v = p.eval(&z).norm();
                if v > best.0 {
                    best = (v, z);
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((T::neg_infinity(), Vec::new()), |a, b| if b.0 > a.0 { b } else { a });

    let runs: Vec<(T, bool)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let start = if r == 0 {
                best_sample.1.clone()
            } else {
                random_torus_point(n, &mut child_rng(seed, r as u64))
            };
            let (v, _, conv) = phase_ascent(p, start, POLY_MAX_SWEEPS);
            (v, conv)
        })
        .collect();
    let (value, converged) = runs
        .into_iter()
        .fold((best_sample.0, false), |best, r| if r.0 > best.0 { r } else { best });
    Ok(NormEstimate { value, kind: NormKind::LowerCertified, restarts, converged })
}
