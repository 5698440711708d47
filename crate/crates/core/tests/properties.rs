//! Property tests for the estimator pipeline and its supporting algebra.

use proptest::prelude::*;

use sparsels_core::estimator::{
    detect_support, estimate, soft_threshold, solution_path, EstimatorConfig,
};
use sparsels_core::linalg::{norm2, subset_least_squares, svd_thin, Matrix};

fn small_vec() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, 1..8)
}

proptest! {
    #[test]
    fn soft_threshold_is_nonexpansive(
        pair in small_vec().prop_flat_map(|x| {
            let n = x.len();
            (Just(x), prop::collection::vec(-10.0f64..10.0, n))
        }),
        lambda in 0.0f64..5.0,
    ) {
        let (x, z) = pair;
        let sx = soft_threshold(&x, lambda);
        let sz = soft_threshold(&z, lambda);
        let d_in: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a - b).collect();
        let d_out: Vec<f64> = sx.iter().zip(&sz).map(|(a, b)| a - b).collect();
        prop_assert!(norm2(&d_out) <= norm2(&d_in) + 1e-12);
    }

    #[test]
    fn soft_threshold_stays_in_box(x in small_vec(), lambda in 0.0f64..5.0) {
        for (orig, thr) in x.iter().zip(soft_threshold(&x, lambda)) {
            prop_assert!((orig - thr).abs() <= lambda + 1e-15);
        }
    }

    #[test]
    fn path_l1_monotone_and_absorbing(x in small_vec()) {
        let grid: Vec<f64> = (0..30).map(|k| k as f64 * 0.25).collect();
        let path = solution_path(&x, &grid);
        let mut prev_l1 = f64::INFINITY;
        let mut dead = vec![false; x.len()];
        for step in &path {
            let l1: f64 = step.iter().map(|v| v.abs()).sum();
            prop_assert!(l1 <= prev_l1 + 1e-12);
            prev_l1 = l1;
            for (i, &v) in step.iter().enumerate() {
                if dead[i] {
                    prop_assert_eq!(v, 0.0);
                }
                if v == 0.0 {
                    dead[i] = true;
                }
            }
        }
    }

    #[test]
    fn detected_support_carries_all_mass(x in small_vec(), lambda in 0.0f64..3.0) {
        let thr = soft_threshold(&x, lambda);
        let support = detect_support(&thr);
        for (i, &v) in thr.iter().enumerate() {
            if !support.contains(&i) {
                prop_assert!(v.abs() <= 1e-12);
            }
        }
    }
}

fn seeded_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
    Matrix::from_fn(rows, cols, |_, _| {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subset_on_full_support_equals_plain_solve(seed in 0u64..5000) {
        let a = seeded_matrix(15, 4, seed);
        let y: Vec<f64> = (0..15).map(|i| ((i as f64) * 0.61 + seed as f64).sin()).collect();
        let svd = svd_thin(&a).unwrap();
        if let Ok(x_full) = sparsels_core::linalg::least_squares(&svd, &y) {
            let sub = subset_least_squares(&a, &y, &[0, 1, 2, 3]).unwrap();
            for (a, b) in sub.x.iter().zip(&x_full) {
                prop_assert!((a - b).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn noiseless_pipeline_idempotent(seed in 0u64..5000) {
        // Truth whose support survives thresholding is refit exactly.
        let a = seeded_matrix(20, 5, seed);
        let x0 = [4.0, 0.0, -3.0, 0.0, 5.0];
        let y = a.matvec(&x0);
        let config = EstimatorConfig::with_lambda(0.8);
        let trace = estimate(&a, &y, &config).unwrap();
        if trace.support_lp == vec![0, 2, 4] {
            for (rels, truth) in trace.x_rels.iter().zip(&x0) {
                prop_assert!((rels - truth).abs() <= 1e-8);
            }
        }
    }
}
