//! Dense order-`m` coefficient arrays over `M(m, n)`, nested mixed norms, and
//! checkers for the Blei-type inequalities between them.
//!
//! Multi-indices are 0-based in this API: entries live in `0..n`.

mod checks;
mod norms;

pub use checks::{
    check_blei_generalized, check_blei_pqs, check_dps, check_interpolation_holder,
    check_minkowski_embedding, dps_f, dps_w, interpolated_exponent, pqs_outer_exponent,
};
pub use norms::{flat_norm, group_norm, group_two_norm, mixed_norm};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::scalar::{Cplx, Real};

/// Default cap on the number of dense entries `n^m`.
pub const DEFAULT_DENSE_BUDGET: u128 = 10_000_000;

/// `n^m` as `u128`, saturating.
pub fn dense_len(order: usize, dim: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..order {
        acc = acc.saturating_mul(dim as u128);
    }
    acc
}

/// Odometer over `M(m, n)` in row-major order (last slot fastest).
#[derive(Debug, Clone)]
pub struct MultiIndexIter {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl MultiIndexIter {
    pub fn new(order: usize, dim: usize) -> Self {
        let current = (dim > 0).then(|| vec![0; order]);
        Self { dim, current }
    }
}

impl Iterator for MultiIndexIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut slot = cur.len();
        loop {
            if slot == 0 {
                self.current = None;
                break;
            }
            slot -= 1;
            cur[slot] += 1;
            if cur[slot] < self.dim {
                break;
            }
            cur[slot] = 0;
        }
        Some(out)
    }
}

/// Nondecreasing multi-indices `J(m, n)` in lexicographic order.
pub fn ordered_indices(order: usize, dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    let mut cur = vec![0usize; order];
    loop {
        out.push(cur.clone());
        // advance to the next nondecreasing tuple
        let mut slot = order;
        loop {
            if slot == 0 {
                return out;
            }
            slot -= 1;
            if cur[slot] + 1 < dim {
                let v = cur[slot] + 1;
                for c in cur.iter_mut().skip(slot) {
                    *c = v;
                }
                break;
            }
        }
    }
}

/// Order-`m` complex array with `n^m` entries, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseTensor<T> {
    order: usize,
    dim: usize,
    data: Vec<Cplx<T>>,
}

impl<T: Real> DenseTensor<T> {
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        Self::zeros_with_budget(order, dim, DEFAULT_DENSE_BUDGET)
    }

    pub fn zeros_with_budget(order: usize, dim: usize, budget: u128) -> Result<Self> {
        ensure!(order >= 1, Contract, "tensor order must be >= 1");
        ensure!(dim >= 1, Contract, "tensor dimension must be >= 1");
        let needed = dense_len(order, dim);
        if needed > budget {
            return Err(Error::Budget { needed, budget });
        }
        Ok(Self {
            order,
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); needed as usize],
        })
    }

    /// Builds the tensor entry by entry from its multi-index.
    pub fn from_fn(order: usize, dim: usize, mut f: impl FnMut(&[usize]) -> Cplx<T>) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        for (slot, idx) in t.data.iter_mut().zip(MultiIndexIter::new(order, dim)) {
            *slot = f(&idx);
        }
        t.validate()?;
        Ok(t)
    }

    pub fn from_vec(order: usize, dim: usize, data: Vec<Cplx<T>>) -> Result<Self> {
        ensure!(order >= 1 && dim >= 1, Contract, "order and dimension must be >= 1");
        let needed = dense_len(order, dim);
        ensure!(
            needed == data.len() as u128,
            Contract,
            "expected {needed} entries for order {order}, dim {dim}; got {}",
            data.len()
        );
        let t = Self { order, dim, data };
        t.validate()?;
        Ok(t)
    }

    pub fn from_real(order: usize, dim: usize, data: &[T]) -> Result<Self> {
        Self::from_vec(order, dim, data.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    fn validate(&self) -> Result<()> {
        ensure!(
            self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            Contract,
            "tensor entries must be finite"
        );
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Cplx<T>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Cplx<T>] {
        &mut self.data
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> Cplx<T> {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Cplx<T>) {
        let off = self.offset(idx);
        self.data[off] = value;
    }

    pub fn indices(&self) -> MultiIndexIter {
        MultiIndexIter::new(self.order, self.dim)
    }

    pub fn scaled(&self, c: Cplx<T>) -> Self {
        Self {
            order: self.order,
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure!(
            self.order == other.order && self.dim == other.dim,
            Contract,
            "shape mismatch in tensor addition"
        );
        Ok(Self {
            order: self.order,
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    /// Moduli `|a_i|` in storage order.
    pub fn moduli(&self) -> Vec<T> {
        self.data.iter().map(|z| z.norm()).collect()
    }

    /// `Σ |a_i|`, the trivial upper bound for the sup norm of the form.
    pub fn l1(&self) -> T {
        crate::scalar::compensated_sum(self.data.iter().map(|z| z.norm()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == T::zero() && z.im == T::zero())
    }
}

/// Exponent tuple `(q_1, …, q_m)` with every `q_i ∈ [1, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedExponent<T> {
    q: Vec<T>,
}

impl<T: Real> MixedExponent<T> {
    pub fn new(q: Vec<T>) -> Result<Self> {
        ensure!(!q.is_empty(), Contract, "exponent tuple must be nonempty");
        ensure!(
            q.iter().all(|&x| x.is_finite() && x >= T::one()),
            Contract,
            "every exponent must be finite and >= 1"
        );
        Ok(Self { q })
    }

    pub fn uniform(order: usize, q: T) -> Result<Self> {
        Self::new(vec![q; order])
    }

    /// `(2m/(m+1), …, 2m/(m+1))`.
    pub fn bohnenblust_hille(order: usize) -> Self {
        let m = T::lit(order as f64);
        Self { q: vec![T::lit(2.0) * m / (m + T::one()); order] }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// `Σ 1/q_i`.
    pub fn reciprocal_sum(&self) -> T {
        self.q.iter().map(|&x| T::one() / x).sum()
    }
}

/// Sorted nonempty subset `S ⊆ {0, …, m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSubset {
    order: usize,
    members: Vec<usize>,
}

impl IndexSubset {
    pub fn new(mut members: Vec<usize>, order: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        ensure!(!members.is_empty(), Contract, "index subset must be nonempty");
        ensure!(
            members.iter().all(|&s| s < order),
            Contract,
            "subset member out of range for order {order}"
        );
        Ok(Self { order, members })
    }

    pub fn full(order: usize) -> Self {
        Self { order, members: (0..order).collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, slot: usize) -> bool {
        self.members.binary_search(&slot).is_ok()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.order).filter(|&s| !self.contains(s)).collect()
    }

    /// All of `P_k(m)` in lexicographic order.
    pub fn all_of_size(k: usize, order: usize) -> Vec<IndexSubset> {
        let mut out = Vec::new();
        if k == 0 || k > order {
            return out;
        }
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(IndexSubset { order, members: cur.clone() });
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < order - k + i {
                    cur[i] += 1;
                    for j in i + 1..k {
                        cur[j] = cur[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}
