//! Cross-validated pipeline vs cross-validated adaptive LASSO: at large N
//! the two test-error distributions should be of the same magnitude. This
//! is a qualitative ordering check, not an exact-value comparison.

use sparsels_core::harness::{cross_validate, CvParam, Generator};

#[test]
fn cv_tuned_methods_comparable_at_large_n() {
    let n_obs = 300;
    let trials = 30;
    let lp = cross_validate(
        Generator::Experiment1,
        CvParam::Epsilon,
        &[0.125, 0.25, 0.5],
        n_obs,
        trials,
        7_000,
    )
    .unwrap();
    let ada = cross_validate(
        Generator::Experiment1,
        CvParam::Gamma,
        &[0.5, 1.0, 2.0],
        n_obs,
        trials,
        7_000,
    )
    .unwrap();
    let mean = |trials: &[sparsels_core::harness::CvTrial]| {
        trials.iter().map(|t| t.test_error).sum::<f64>() / trials.len() as f64
    };
    let (m_lp, m_ada) = (mean(&lp.trials), mean(&ada.trials));
    assert!(m_lp.is_finite() && m_ada.is_finite());
    let ratio = m_lp.max(m_ada) / m_lp.min(m_ada);
    assert!(
        ratio <= 3.0,
        "test errors diverge at N={n_obs}: pipeline {m_lp:.4e} vs adalasso {m_ada:.4e}"
    );
}
