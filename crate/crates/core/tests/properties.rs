//! Property tests for the numerics layer and field arithmetic.

use eitff_core::{
    cluster_eigenvalues, field_build, hermitian_eigen, singular_values, Complex, FieldElement, Mat,
};
use proptest::prelude::*;

fn hermitian_strategy(max_order: usize) -> impl Strategy<Value = Mat> {
    (1..=max_order).prop_flat_map(|n| {
        proptest::collection::vec(
            (-10.0f64..10.0, -10.0f64..10.0),
            n * n,
        )
        .prop_map(move |raw| {
            let a = Mat::from_fn(n, n, |i, j| {
                let (re, im) = raw[i * n + j];
                Complex::new(re, im)
            });
            // (A + A*) / 2 is exactly hermitian in floating point
            a.add(&a.adjoint()).scale(0.5)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigenbasis_is_orthonormal_and_reconstructs(h in hermitian_strategy(64)) {
        let tol = 1e-9;
        let n = h.rows();
        let eigen = hermitian_eigen(&h, tol).unwrap();
        prop_assert_eq!(eigen.len(), n);

        let v = Mat::from_fn(n, n, |i, j| eigen[j].1[i]);
        prop_assert!(v.adjoint().mul(&v).identity_deviation() < 1e-11);

        let mut rec = Mat::zeros(n, n);
        for (lambda, vec) in &eigen {
            for i in 0..n {
                for j in 0..n {
                    rec[(i, j)] += (vec[i] * vec[j].conj()).scale(*lambda);
                }
            }
        }
        prop_assert!(rec.sub(&h).frobenius() <= 10.0 * tol * h.frobenius().max(1e-12));
    }

    #[test]
    fn eigenvalues_sorted_descending(h in hermitian_strategy(12)) {
        let eigen = hermitian_eigen(&h, 1e-9).unwrap();
        for w in eigen.windows(2) {
            prop_assert!(w[0].0 >= w[1].0);
        }
    }

    #[test]
    fn singular_values_are_nonnegative_and_sorted(
        rows in 1usize..6,
        cols in 1usize..6,
        raw in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 36),
    ) {
        let x = Mat::from_fn(rows, cols, |i, j| {
            let (re, im) = raw[i * 6 + j];
            Complex::new(re, im)
        });
        let sv = singular_values(&x, 1e-9).unwrap();
        prop_assert_eq!(sv.len(), cols);
        for w in sv.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        prop_assert!(sv.iter().all(|s| *s >= 0.0));
    }

    #[test]
    fn cluster_multiplicities_sum_and_separate(
        mut values in proptest::collection::vec(-100.0f64..100.0, 1..40),
        tol in 1e-9f64..1e-3,
    ) {
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        if let Ok(spectrum) = cluster_eigenvalues(&values, tol) {
            prop_assert_eq!(spectrum.order(), values.len());
            for w in spectrum.clusters.windows(2) {
                prop_assert!(w[0].0 - w[1].0 > 2.0 * tol);
            }
        }
    }

    #[test]
    fn field_ops_satisfy_the_ring_axioms(
        k in 1u32..=8,
        seeds in proptest::collection::vec(0u32..u32::MAX, 3),
    ) {
        let f = field_build(k).unwrap();
        let q = f.q();
        let a = FieldElement(seeds[0] % q);
        let b = FieldElement(seeds[1] % q);
        let c = FieldElement(seeds[2] % q);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    }
}
