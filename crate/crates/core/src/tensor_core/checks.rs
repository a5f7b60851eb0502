use crate::error::{ensure, Result};
use crate::report::{CheckReport, DEFAULT_REL_SLACK};
use crate::scalar::{pow_nonneg, Real};

use super::norms::{flat_norm, group_norm, group_two_norm, mixed_norm};
use super::{DenseTensor, IndexSubset, MixedExponent};

fn binomial(m: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64).round()
}

/// `∏_S g_S^{1/|P|}` for nonnegative factors; exponent 1 is applied exactly.
fn geometric_product(factors: &[f64]) -> f64 {
    let e = 1.0 / factors.len() as f64;
    factors.iter().map(|&g| pow_nonneg(g, e)).product()
}

/// Minkowski embedding: `‖a‖_{ℓ_q} ≤ group_two_norm(a, S, λ)` with
/// `q_i = λ` on `S` and `q_i = 2` elsewhere.
pub fn check_minkowski_embedding<T: Real>(
    a: &DenseTensor<T>,
    subset: &IndexSubset,
    lambda: T,
) -> Result<CheckReport> {
    let rhs = group_two_norm(a, subset, lambda)?;
    let q = (0..a.order())
        .map(|i| if subset.contains(i) { lambda } else { T::lit(2.0) })
        .collect();
    let lhs = mixed_norm(a, &MixedExponent::new(q)?)?;
    Ok(CheckReport::compare(lhs.as_f64(), rhs.as_f64(), DEFAULT_REL_SLACK)
        .with("lambda", lambda.as_f64())
        .with("subset", subset.members().to_vec()))
}

/// Blei's inequality generalized to `P_k(m)`:
/// `‖a‖_{2m/(m+1)} ≤ ∏_{S ∈ P_k(m)} group_two_norm(a, S, 2k/(k+1))^{1/C(m,k)}`.
pub fn check_blei_generalized<T: Real>(a: &DenseTensor<T>, k: usize) -> Result<CheckReport> {
    let m = a.order();
    ensure!((1..=m).contains(&k), Contract, "k = {k} outside [1, {m}]");
    let p = T::lit(2.0 * m as f64 / (m as f64 + 1.0));
    let lambda = T::lit(2.0 * k as f64 / (k as f64 + 1.0));
    let lhs = flat_norm(a, p).as_f64();
    let factors = IndexSubset::all_of_size(k, m)
        .iter()
        .map(|s| group_two_norm(a, s, lambda).map(Real::as_f64))
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(factors.len() as f64, binomial(m, k));
    let rhs = geometric_product(&factors);
    Ok(CheckReport::compare(lhs, rhs, DEFAULT_REL_SLACK).with("k", k))
}

/// The `p` that satisfies `k/s + (m-k)/q = m/p`.
pub fn pqs_outer_exponent(m: usize, k: usize, q: f64, s: f64) -> f64 {
    m as f64 / (k as f64 / s + (m - k) as f64 / q)
}

/// Blei inequality with general exponents `(p, q, s)`, `q ≥ s`,
/// `k/s + (m-k)/q = m/p`.
pub fn check_blei_pqs<T: Real>(a: &DenseTensor<T>, k: usize, p: T, q: T, s: T) -> Result<CheckReport> {
    let m = a.order();
    ensure!((1..=m).contains(&k), Contract, "k = {k} outside [1, {m}]");
    ensure!(
        p >= T::one() && q >= T::one() && s >= T::one(),
        Rejected,
        "exponents must be >= 1"
    );
    ensure!(q >= s, Rejected, "need q >= s (q = {q}, s = {s})");
    let (pf, qf, sf) = (p.as_f64(), q.as_f64(), s.as_f64());
    let gap = k as f64 / sf + (m - k) as f64 / qf - m as f64 / pf;
    ensure!(gap.abs() <= 1e-9, Rejected, "k/s + (m-k)/q - m/p = {gap:e}, expected 0");
    let lhs = flat_norm(a, p).as_f64();
    let factors = IndexSubset::all_of_size(k, m)
        .iter()
        .map(|sub| group_norm(a, sub, q, s).map(Real::as_f64))
        .collect::<Result<Vec<_>>>()?;
    let rhs = geometric_product(&factors);
    Ok(CheckReport::compare(lhs, rhs, DEFAULT_REL_SLACK)
        .with("k", k)
        .with("p", pf)
        .with("q", qf)
        .with("s", sf))
}

/// `w(x, y) = (q²(x+y) − 2qxy) / (q² − xy)`.
pub fn dps_w(q: f64, x: f64, y: f64) -> f64 {
    (q * q * (x + y) - 2.0 * q * x * y) / (q * q - x * y)
}

/// `f(x, y) = (q²x − qxy) / (q²(x+y) − 2qxy)`.
pub fn dps_f(q: f64, x: f64, y: f64) -> f64 {
    (q * q * x - q * x * y) / (q * q * (x + y) - 2.0 * q * x * y)
}

/// Mixed row/column inequality for matrices (Defant–Popa–Schwarting).
///
/// Entries may be complex; only the moduli enter.
pub fn check_dps<T: Real>(matrix: &DenseTensor<T>, q: T, s1: T, s2: T) -> Result<CheckReport> {
    ensure!(matrix.order() == 2, Contract, "expected a matrix, got order {}", matrix.order());
    ensure!(s1 >= T::one() && s2 >= T::one(), Rejected, "s1, s2 must be >= 1");
    ensure!(q > s1.max(s2), Rejected, "need q > max(s1, s2)");
    let (qf, s1f, s2f) = (q.as_f64(), s1.as_f64(), s2.as_f64());
    let w = dps_w(qf, s1f, s2f);
    let f1 = dps_f(qf, s1f, s2f);
    let f2 = dps_f(qf, s2f, s1f);
    let lhs = flat_norm(matrix, T::lit(w)).as_f64();
    let rows = group_norm(matrix, &IndexSubset::new(vec![0], 2)?, q, s1)?.as_f64();
    let cols = group_norm(matrix, &IndexSubset::new(vec![1], 2)?, q, s2)?.as_f64();
    let rhs = pow_nonneg(rows, f1) * pow_nonneg(cols, f2);
    Ok(CheckReport::compare(lhs, rhs, DEFAULT_REL_SLACK)
        .with("w", w)
        .with("f1", f1)
        .with("f2", f2))
}

/// `1/r_i = θ/p_i + (1-θ)/q_i`.
pub fn interpolated_exponent<T: Real>(p: &MixedExponent<T>, q: &MixedExponent<T>, theta: T) -> Result<MixedExponent<T>> {
    ensure!(p.len() == q.len(), Contract, "exponent tuples differ in length");
    let r = p
        .as_slice()
        .iter()
        .zip(q.as_slice())
        .map(|(&pi, &qi)| if pi == qi { pi } else { T::one() / (theta / pi + (T::one() - theta) / qi) })
        .collect();
    MixedExponent::new(r)
}

/// Log-convexity of mixed norms along the interpolation scale:
/// `‖a‖_{ℓ_r} ≤ ‖a‖_{ℓ_p}^θ ‖a‖_{ℓ_q}^{1-θ}`.
pub fn check_interpolation_holder<T: Real>(
    a: &DenseTensor<T>,
    p: &MixedExponent<T>,
    q: &MixedExponent<T>,
    theta: T,
) -> Result<CheckReport> {
    ensure!(theta > T::zero() && theta < T::one(), Rejected, "theta = {theta} outside (0, 1)");
    let r = interpolated_exponent(p, q, theta)?;
    let lhs = mixed_norm(a, &r)?.as_f64();
    let np = mixed_norm(a, p)?.as_f64();
    let nq = mixed_norm(a, q)?.as_f64();
    let th = theta.as_f64();
    let rhs = pow_nonneg(np, th) * pow_nonneg(nq, 1.0 - th);
    Ok(CheckReport::compare(lhs, rhs, DEFAULT_REL_SLACK)
        .with("theta", th)
        .with("r", r.as_slice().iter().map(|x| x.as_f64()).collect::<Vec<_>>()))
}
