use crate::error::{ensure, Result};
use crate::scalar::{compensated_sum, lp_sum, pow_nonneg, CompensatedSum, Real};

use super::{DenseTensor, IndexSubset, MixedExponent};

/// Nested norm `ℓ_{q_1}(ℓ_{q_2}(… ℓ_{q_m}))`, slot 0 outermost.
///
/// Inner levels are carried as powered sums `Σ |·|^{q_j}` and lifted to the
/// next level with the ratio `q_{j-1}/q_j`, which is exactly 1 when
/// consecutive exponents agree. For a constant tuple this is the flat
/// `ℓ_p` sum grouped by rows.
pub fn mixed_norm<T: Real>(a: &DenseTensor<T>, q: &MixedExponent<T>) -> Result<T> {
    ensure!(
        q.len() == a.order(),
        Contract,
        "exponent tuple has length {} but tensor has order {}",
        q.len(),
        a.order()
    );
    let n = a.dim();
    let qs = q.as_slice();
    let last = qs[qs.len() - 1];
    let mut level: Vec<T> = a
        .data()
        .chunks(n)
        .map(|row| compensated_sum(row.iter().map(|z| pow_nonneg(z.norm(), last))))
        .collect();
    for j in (0..qs.len() - 1).rev() {
        let ratio = if qs[j] == qs[j + 1] { T::one() } else { qs[j] / qs[j + 1] };
        level = level
            .chunks(n)
            .map(|row| compensated_sum(row.iter().map(|&s| pow_nonneg(s, ratio))))
            .collect();
    }
    debug_assert_eq!(level.len(), 1);
    Ok(pow_nonneg(level[0], T::one() / qs[0]))
}

/// Flat `(Σ_i |a_i|^p)^{1/p}`.
pub fn flat_norm<T: Real>(a: &DenseTensor<T>, p: T) -> T {
    lp_sum(a.data().iter().map(|z| z.norm()), p)
}

/// `(Σ_{i_S} (Σ_{i_Ŝ} |a_i|^inner)^{outer/inner})^{1/outer}`.
pub fn group_norm<T: Real>(a: &DenseTensor<T>, subset: &IndexSubset, inner: T, outer: T) -> Result<T> {
    ensure!(
        subset.order() == a.order(),
        Contract,
        "subset is for order {} but tensor has order {}",
        subset.order(),
        a.order()
    );
    ensure!(inner >= T::one() && outer >= T::one(), Contract, "exponents must be >= 1");
    let n = a.dim();
    let groups = n.pow(subset.size() as u32);
    let mut acc = vec![CompensatedSum::<T>::new(); groups];
    for (z, idx) in a.data().iter().zip(a.indices()) {
        let key = subset.members().iter().fold(0, |k, &s| k * n + idx[s]);
        acc[key].add(pow_nonneg(z.norm(), inner));
    }
    let ratio = if inner == outer { T::one() } else { outer / inner };
    let total = compensated_sum(acc.iter().map(|s| pow_nonneg(s.value(), ratio)));
    Ok(pow_nonneg(total, T::one() / outer))
}

/// [`group_norm`] with inner exponent 2 and outer `λ ∈ [1, 2]`.
///
/// `λ > 2` is rejected: the embedding it feeds is only known on `[1, 2]`.
pub fn group_two_norm<T: Real>(a: &DenseTensor<T>, subset: &IndexSubset, lambda: T) -> Result<T> {
    ensure!(
        lambda >= T::one() && lambda <= T::lit(2.0),
        Rejected,
        "lambda = {lambda} outside [1, 2]"
    );
    group_norm(a, subset, T::lit(2.0), lambda)
}
