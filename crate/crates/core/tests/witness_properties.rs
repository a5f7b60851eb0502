use bhbounds::constants::bh_mult_closed;
use bhbounds::rng::rng_from;
use bhbounds::scalar::Cplx;
use bhbounds::tensor_core::MultiIndexIter;
use bhbounds::witness::{
    bh_ratio, random_form, random_polynomial, random_torus_point, sup_norm_multilinear, symmetrize, CoeffDistribution,
};
use bhbounds::Tensor;
use proptest::prelude::*;

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetrization_is_symmetric(m in 1usize..=4, n in 1usize..=4, seed in any::<u64>()) {
        let p = random_polynomial::<f64>(m, n, CoeffDistribution::Gaussian, seed).unwrap();
        let l = symmetrize(&p).unwrap();
        for idx in MultiIndexIter::new(m, n) {
            let a = l.coeffs().get(&idx);
            for perm in permutations(&(0..m).collect::<Vec<_>>()) {
                let j: Vec<usize> = perm.iter().map(|&s| idx[s]).collect();
                prop_assert_eq!(l.coeffs().get(&j), a);
            }
        }
    }

    #[test]
    fn sup_norm_monotone_and_bounded(m in 1usize..=3, n in 1usize..=4, seed in any::<u64>()) {
        let f = random_form::<f64>(m, n, CoeffDistribution::Steinhaus, seed).unwrap();
        let few = sup_norm_multilinear(&f, 2, 200, seed).unwrap();
        let many = sup_norm_multilinear(&f, 12, 200, seed).unwrap();
        prop_assert!(many.value >= few.value);
        prop_assert!(many.value <= f.coeffs().l1() * (1.0 + 1e-12));
    }
}

#[test]
fn diagonal_restriction_reproduces_polynomial() {
    for (m, n, seed) in [(2, 4, 1u64), (3, 3, 2), (4, 2, 3)] {
        let p = random_polynomial::<f64>(m, n, CoeffDistribution::Gaussian, seed).unwrap();
        let l = symmetrize(&p).unwrap();
        let scale = p.coefficient_l1();
        let mut rng = rng_from(seed);
        for _ in 0..1000 {
            let z = random_torus_point(n, &mut rng);
            let slots: Vec<&[Cplx<f64>]> = vec![z.as_slice(); m];
            let diff = (l.eval(&slots).unwrap() - p.eval(&z)).norm();
            assert!(diff <= 1e-12 * scale, "m={m} n={n}: {diff}");
        }
    }
}

#[test]
fn hadamard_form_matches_grid_oracle() {
    let t = Tensor::from_real(2, 2, &[1.0, 1.0, 1.0, -1.0]).unwrap();
    let form = bhbounds::witness::MultilinearForm::new(t);
    let est = sup_norm_multilinear(&form, 32, 500, 0).unwrap();
    // exhaustive grid: the first coordinate of each slot can be fixed to 1
    let steps = 6284;
    let mut oracle = 0.0f64;
    for i in 0..steps {
        let z = Cplx::from_polar(1.0, i as f64 * 1e-3);
        // sup over w of |(1 + z) w₁ + (1 − z) w₂| = |1+z| + |1−z|
        oracle = oracle.max((Cplx::new(1.0, 0.0) + z).norm() + (Cplx::new(1.0, 0.0) - z).norm());
    }
    assert!((est.value - oracle).abs() < 1e-6);
    assert!((est.value - 2.0 * 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn bh_ratio_regression() {
    for m in [2usize, 3] {
        let bound = bh_mult_closed(m).value * 1.001;
        for n in [2usize, 3, 4] {
            for seed in 0..60u64 {
                let f = random_form::<f64>(m, n, CoeffDistribution::Gaussian, seed * 31 + n as u64).unwrap();
                let r = bh_ratio(&f, None, 8, seed).unwrap();
                assert!(r.ratio.unwrap() <= bound, "m={m} n={n} seed={seed}: {r:?}");
            }
        }
    }
}
