use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MultilinearForm;
use crate::error::{ensure, Result};
use crate::scalar::{compensated_sum, Cplx, Real};
use crate::tensor_core::DenseTensor;

/// Permutation orbit `[𝐢]` of a multi-index: its sorted representative and size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivClassInfo {
    pub representative: Vec<usize>,
    /// `|𝐢| = m! / ∏_j (multiplicity of j)!`.
    pub cardinality: u128,
}

impl EquivClassInfo {
    pub fn of(idx: &[usize]) -> Self {
        let mut representative = idx.to_vec();
        representative.sort_unstable();
        let mut cardinality: u128 = 1;
        let mut run = 0u128;
        for (pos, w) in representative.iter().enumerate() {
            run = if pos > 0 && representative[pos - 1] == *w { run + 1 } else { 1 };
            // m!/∏ mult! built incrementally: multiply by (pos+1)/run
            cardinality = cardinality * (pos as u128 + 1) / run;
        }
        Self { representative, cardinality }
    }
}

/// `P(z) = Σ_{𝐢 ∈ J(m,n)} c_𝐢 z_{i₁} ⋯ z_{iₘ}`.
///
/// Keys are nondecreasing 0-based index tuples; `c_𝐢` is also the monomial
/// coefficient `a_α` for the matching exponent `α`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousPolynomial<T> {
    degree: usize,
    dim: usize,
    terms: BTreeMap<Vec<usize>, Cplx<T>>,
}

impl<T: Real> HomogeneousPolynomial<T> {
    /// Index tuples are sorted; repeated tuples are summed.
    pub fn from_terms(degree: usize, dim: usize, terms: Vec<(Vec<usize>, Cplx<T>)>) -> Result<Self> {
        ensure!(degree >= 1 && dim >= 1, Contract, "degree and dimension must be >= 1");
        let mut map: BTreeMap<Vec<usize>, Cplx<T>> = BTreeMap::new();
        for (mut idx, c) in terms {
            ensure!(idx.len() == degree, Rejected, "index {idx:?} does not have length {degree}");
            ensure!(idx.iter().all(|&i| i < dim), Contract, "index {idx:?} out of range for dim {dim}");
            ensure!(c.re.is_finite() && c.im.is_finite(), Contract, "coefficients must be finite");
            idx.sort_unstable();
            let slot = map.entry(idx).or_insert_with(|| Cplx::new(T::zero(), T::zero()));
            *slot = *slot + c;
        }
        Ok(Self { degree, dim, terms: map })
    }

    /// Builds from exponent vectors `α`; all `|α|` must agree.
    pub fn from_monomials(dim: usize, monomials: Vec<(Vec<u32>, Cplx<T>)>) -> Result<Self> {
        ensure!(!monomials.is_empty(), Rejected, "no monomials given");
        let degree = monomials[0].0.iter().sum::<u32>() as usize;
        let mut terms = Vec::with_capacity(monomials.len());
        for (alpha, c) in monomials {
            ensure!(alpha.len() == dim, Contract, "exponent {alpha:?} does not have length {dim}");
            let d = alpha.iter().sum::<u32>() as usize;
            ensure!(d == degree, Rejected, "not homogeneous: degrees {degree} and {d}");
            let idx = alpha
                .iter()
                .enumerate()
                .flat_map(|(j, &e)| std::iter::repeat_n(j, e as usize))
                .collect();
            terms.push((idx, c));
        }
        Self::from_terms(degree, dim, terms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Cplx<T>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Cplx<T> {
        let mut key = idx.to_vec();
        key.sort_unstable();
        self.terms.get(&key).copied().unwrap_or_else(|| Cplx::new(T::zero(), T::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.re == T::zero() && c.im == T::zero())
    }

    /// `(Σ |a_α|²)^{1/2}`.
    pub fn coefficient_l2(&self) -> T {
        compensated_sum(self.terms.values().map(|c| c.norm_sqr())).sqrt()
    }

    /// `Σ |a_α|`.
    pub fn coefficient_l1(&self) -> T {
        compensated_sum(self.terms.values().map(|c| c.norm()))
    }

    pub fn eval(&self, z: &[Cplx<T>]) -> Cplx<T> {
        debug_assert_eq!(z.len(), self.dim);
        let mut acc = Cplx::new(T::zero(), T::zero());
        for (idx, c) in &self.terms {
            let mut term = *c;
            for &i in idx {
                term = term * z[i];
            }
            acc = acc + term;
        }
        acc
    }

    /// `P` as a polynomial in `z_j` alone: coefficients `b_0..=b_m` with the
    /// other coordinates fixed at `z`.
    pub fn coordinate_coefficients(&self, j: usize, z: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let mut b = vec![Cplx::new(T::zero(), T::zero()); self.degree + 1];
        for (idx, c) in &self.terms {
            let mut term = *c;
            let mut d = 0;
            for &i in idx {
                if i == j {
                    d += 1;
                } else {
                    term = term * z[i];
                }
            }
            b[d] = b[d] + term;
        }
        b
    }
}

/// The symmetric `m`-linear form with `L(z, …, z) = P(z)`:
/// `a_𝐢 = c_{[𝐢]} / |𝐢|` for every `𝐢 ∈ M(m, n)`.
pub fn symmetrize<T: Real>(p: &HomogeneousPolynomial<T>) -> Result<MultilinearForm<T>> {
    let t = DenseTensor::from_fn(p.degree(), p.dim(), |idx| {
        let class = EquivClassInfo::of(idx);
        match p.terms.get(&class.representative) {
            Some(c) => *c / T::lit(class.cardinality as f64),
            None => Cplx::new(T::zero(), T::zero()),
        }
    })?;
    Ok(MultilinearForm::new(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn c(re: f64) -> Cplx<f64> {
        Cplx::new(re, 0.0)
    }

    fn distinct_permutations(idx: &[usize]) -> usize {
        fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut HashSet<Vec<usize>>) {
            if rest.is_empty() {
                out.insert(cur.clone());
                return;
            }
            for i in 0..rest.len() {
                let v = rest.remove(i);
                cur.push(v);
                rec(rest, cur, out);
                cur.pop();
                rest.insert(i, v);
            }
        }
        let mut out = HashSet::new();
        rec(&mut idx.to_vec(), &mut Vec::new(), &mut out);
        out.len()
    }

    #[test]
    fn class_cardinality_matches_brute_force() {
        for m in 1..=6 {
            for idx in crate::tensor_core::MultiIndexIter::new(m, 3) {
                let info = EquivClassInfo::of(&idx);
                assert_eq!(info.cardinality as usize, distinct_permutations(&idx), "{idx:?}");
            }
        }
        assert_eq!(EquivClassInfo::of(&[2, 0, 1, 0]).representative, vec![0, 0, 1, 2]);
    }

    #[test]
    fn symmetrize_small_cases() {
        let p = HomogeneousPolynomial::from_terms(2, 2, vec![(vec![0, 1], c(1.0))]).unwrap();
        let l = symmetrize(&p).unwrap();
        assert_eq!(l.coeffs().get(&[0, 1]), c(0.5));
        assert_eq!(l.coeffs().get(&[1, 0]), c(0.5));
        assert_eq!(l.coeffs().get(&[0, 0]), c(0.0));

        let p = HomogeneousPolynomial::from_terms(2, 2, vec![(vec![0, 0], c(1.0))]).unwrap();
        assert_eq!(symmetrize(&p).unwrap().coeffs().get(&[0, 0]), c(1.0));

        let p = HomogeneousPolynomial::from_terms(3, 2, vec![(vec![0, 0, 1], c(1.0))]).unwrap();
        let l = symmetrize(&p).unwrap();
        for idx in [[0, 0, 1], [0, 1, 0], [1, 0, 0]] {
            assert!((l.coeffs().get(&idx).re - 1.0 / 3.0).abs() < 1e-16);
        }
    }

    #[test]
    fn rejects_inhomogeneous() {
        // z - z² on one variable
        let e = HomogeneousPolynomial::<f64>::from_monomials(1, vec![(vec![1], c(1.0)), (vec![2], c(-1.0))]);
        assert!(e.is_err());
        let p = HomogeneousPolynomial::<f64>::from_monomials(2, vec![(vec![2, 0], c(1.0)), (vec![1, 1], c(2.0))])
            .unwrap();
        assert_eq!(p.coefficient(&[1, 0]), c(2.0));
    }

    #[test]
    fn coordinate_coefficients_reassemble() {
        let p = HomogeneousPolynomial::from_terms(
            3,
            2,
            vec![(vec![0, 0, 0], c(1.0)), (vec![0, 0, 1], c(2.0)), (vec![0, 1, 1], c(-1.0)), (vec![1, 1, 1], c(0.5))],
        )
        .unwrap();
        let z = vec![Cplx::new(0.3, 0.8), Cplx::new(-0.6, 0.1)];
        let b = p.coordinate_coefficients(0, &z);
        let mut pow = c(1.0);
        let mut acc = c(0.0);
        for bd in &b {
            acc += bd * pow;
            pow *= z[0];
        }
        assert!((acc - p.eval(&z)).norm() < 1e-15);
    }
}
