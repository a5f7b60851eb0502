//! Randomized and brute-force witnesses: random forms and polynomials, torus
//! sup-norm estimators, symmetrization, and Monte-Carlo checks of the
//! probabilistic inequalities.

mod checks;
mod norm;
mod poly;
mod probe;

pub use checks::{
    bh_ratio, harris_check, harris_factor, khintchine_empirical, khintchine_empirical_for, poly_khintchine_check,
    BhRatio, HarrisConfig, MonteCarloMoment,
};
pub use norm::{alternating_ascent, phase_ascent, sup_norm_multilinear, AscentRun, sup_norm_polynomial, NormEstimate, NormKind, DEFAULT_RESTARTS};
pub use poly::{symmetrize, EquivClassInfo, HomogeneousPolynomial};
pub use probe::{unboundedness_probe, GrowthPoint, GrowthReport, ProbeEnsemble};

use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::rng::{rng_from, Rng};
use crate::scalar::{unimodular, Cplx, Real};
use crate::tensor_core::{ordered_indices, DenseTensor};

/// Coefficient ensembles for random draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffDistribution {
    /// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
    Gaussian,
    /// Real standard Gaussian.
    RealGaussian,
    /// `±1` with equal probability.
    Rademacher,
    /// Uniform on the unit circle.
    Steinhaus,
}

impl CoeffDistribution {
    pub fn sample<T: Real>(self, rng: &mut Rng) -> Cplx<T> {
        match self {
            CoeffDistribution::Gaussian => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Cplx::new(T::lit(re * s), T::lit(im * s))
            }
            CoeffDistribution::RealGaussian => {
                let re: f64 = StandardNormal.sample(rng);
                Cplx::new(T::lit(re), T::zero())
            }
            CoeffDistribution::Rademacher => {
                let v = if rng.random::<bool>() { 1.0 } else { -1.0 };
                Cplx::new(T::lit(v), T::zero())
            }
            CoeffDistribution::Steinhaus => random_phase(rng),
        }
    }
}

impl std::str::FromStr for CoeffDistribution {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Self::Gaussian),
            "real-gaussian" => Ok(Self::RealGaussian),
            "rademacher" => Ok(Self::Rademacher),
            "steinhaus" => Ok(Self::Steinhaus),
            other => Err(crate::Error::Rejected(format!("unknown distribution {other:?}"))),
        }
    }
}

/// Uniform point on the unit circle.
pub fn random_phase<T: Real>(rng: &mut Rng) -> Cplx<T> {
    let theta: f64 = rng.random::<f64>() * std::f64::consts::TAU;
    unimodular(T::lit(theta))
}

/// Uniform point on the torus `𝕋ⁿ`.
pub fn random_torus_point<T: Real>(n: usize, rng: &mut Rng) -> Vec<Cplx<T>> {
    (0..n).map(|_| random_phase(rng)).collect()
}

/// `L(z⁽¹⁾, …, z⁽ᵐ⁾) = Σ_𝐢 a_𝐢 z⁽¹⁾_{i₁} ⋯ z⁽ᵐ⁾_{iₘ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultilinearForm<T> {
    coeffs: DenseTensor<T>,
}

impl<T: Real> MultilinearForm<T> {
    pub fn new(coeffs: DenseTensor<T>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &DenseTensor<T> {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> DenseTensor<T> {
        self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.order()
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    /// Evaluates the form at one vector per slot.
    pub fn eval(&self, slots: &[&[Cplx<T>]]) -> Result<Cplx<T>> {
        ensure!(slots.len() == self.order(), Contract, "need {} slot vectors", self.order());
        ensure!(
            slots.iter().all(|v| v.len() == self.dim()),
            Contract,
            "slot vectors must have length {}",
            self.dim()
        );
        let mut acc = Cplx::new(T::zero(), T::zero());
        for (a, idx) in self.coeffs.data().iter().zip(self.coeffs.indices()) {
            let mut term = *a;
            for (s, &i) in idx.iter().enumerate() {
                term = term * slots[s][i];
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Coefficients of the linear functional left in `slot` once every other
    /// slot is fixed.
    pub(crate) fn slot_functional(&self, slot: usize, slots: &[Vec<Cplx<T>>]) -> Vec<Cplx<T>> {
        let n = self.dim();
        let mut c = vec![Cplx::new(T::zero(), T::zero()); n];
        for (a, idx) in self.coeffs.data().iter().zip(self.coeffs.indices()) {
            if a.re == T::zero() && a.im == T::zero() {
                continue;
            }
            let mut term = *a;
            for (s, &i) in idx.iter().enumerate() {
                if s != slot {
                    term = term * slots[s][i];
                }
            }
            c[idx[slot]] = c[idx[slot]] + term;
        }
        c
    }
}

/// Reproducible random `m`-linear form on `ℂⁿ`.
pub fn random_form<T: Real>(m: usize, n: usize, dist: CoeffDistribution, seed: u64) -> Result<MultilinearForm<T>> {
    ensure!(m >= 1 && n >= 1, Contract, "m and n must be >= 1");
    let mut rng = rng_from(seed);
    let t = DenseTensor::from_fn(m, n, |_| dist.sample(&mut rng))?;
    Ok(MultilinearForm::new(t))
}

/// Character form `a_𝐢 = u⁽¹⁾_{i₁}⋯u⁽ᵐ⁾_{iₘ} · ω^{i₁i₂ + i₂i₃ + ⋯ + i_{m−1}iₘ}`
/// with `ω = e^{2πi/n}` and random unimodular twists `u⁽ˢ⁾`.
///
/// Chirp vectors flatten every DFT, so `‖L‖ = n^{(m+1)/2}` exactly and the
/// twists leave the norm unchanged.
pub fn character_form<T: Real>(m: usize, n: usize, seed: u64) -> Result<MultilinearForm<T>> {
    ensure!(m >= 1 && n >= 1, Contract, "m and n must be >= 1");
    let mut rng = rng_from(seed);
    let twists: Vec<Vec<Cplx<T>>> = (0..m).map(|_| random_torus_point(n, &mut rng)).collect();
    let step = std::f64::consts::TAU / n as f64;
    let t = DenseTensor::from_fn(m, n, |idx| {
        let phase: usize = idx.windows(2).map(|w| w[0] * w[1] % n).sum::<usize>() % n;
        let mut a = unimodular(T::lit(step * phase as f64));
        for (s, &i) in idx.iter().enumerate() {
            a = a * twists[s][i];
        }
        a
    })?;
    Ok(MultilinearForm::new(t))
}

/// Reproducible random `m`-homogeneous polynomial on `ℂⁿ`: one draw per
/// ordered index in `J(m, n)`.
pub fn random_polynomial<T: Real>(
    m: usize,
    n: usize,
    dist: CoeffDistribution,
    seed: u64,
) -> Result<HomogeneousPolynomial<T>> {
    ensure!(m >= 1 && n >= 1, Contract, "m and n must be >= 1");
    let mut rng = rng_from(seed);
    let terms = ordered_indices(m, n).into_iter().map(|idx| (idx, dist.sample(&mut rng))).collect();
    HomogeneousPolynomial::from_terms(m, n, terms)
}
