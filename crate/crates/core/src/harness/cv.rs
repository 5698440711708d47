//! 5-fold cross-validation for the tuning exponents: `epsilon` for the
//! shrinkage schedule, `gamma` for the adaptive-LASSO weights.
//!
//! Each realization draws a training problem, shuffles its rows once with a
//! seeded permutation, splits them into five contiguous blocks, scores every
//! candidate by held-out prediction loss, picks the candidate with the
//! smallest fold-mean loss (ties go to the smallest candidate), and then
//! applies that choice to an independently drawn test problem of the same
//! size, recording `|x_hat - x_true|_2^2`.
//!
//! Seeds: realization `t` uses `base_seed + 3t` for the training problem,
//! `+ 3t + 1` for the shuffle, and `+ 3t + 2` for the test problem.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use super::{Generator, HarnessError};
use crate::baselines;
use crate::estimator::{self, EstimatorConfig};
use crate::linalg::Matrix;

pub const CV_FOLDS: usize = 5;

/// Which tuning exponent is being selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvParam {
    Epsilon,
    Gamma,
}

impl CvParam {
    pub fn tag(&self) -> &'static str {
        match self {
            CvParam::Epsilon => "epsilon",
            CvParam::Gamma => "gamma",
        }
    }

    pub fn parse(s: &str) -> Option<CvParam> {
        match s {
            "epsilon" => Some(CvParam::Epsilon),
            "gamma" => Some(CvParam::Gamma),
            _ => None,
        }
    }
}

impl core::fmt::Display for CvParam {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Candidate grid with pooled validation losses (mean over every fold of
/// every realization) and the overall winner.
#[derive(Debug, Clone, PartialEq)]
pub struct CvGrid {
    pub param: CvParam,
    /// Ascending, deduplicated.
    pub candidates: Vec<f64>,
    pub mean_losses: Vec<f64>,
    /// Minimizer of `mean_losses`; ties resolve to the smallest candidate.
    pub chosen: f64,
}

/// One realization: the candidate its folds selected and the error of that
/// choice on the independent test problem.
#[derive(Debug, Clone, PartialEq)]
pub struct CvTrial {
    pub trial: usize,
    pub chosen: f64,
    pub test_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvResult {
    pub grid: CvGrid,
    pub trials: Vec<CvTrial>,
    /// Realizations dropped because a fold or test fit failed (e.g. a
    /// rank-deficient training submatrix).
    pub excluded_trials: usize,
}

fn fit(param: CvParam, value: f64, a: &Matrix, y: &[f64]) -> Result<Vec<f64>, HarnessError> {
    match param {
        CvParam::Epsilon => {
            let trace = estimator::estimate(a, y, &EstimatorConfig::with_epsilon(value))?;
            Ok(trace.x_rels)
        }
        CvParam::Gamma => {
            let fit = baselines::adalasso(a, y, value, a.rows())?;
            Ok(fit.x)
        }
    }
}

fn validate(
    gen: Generator,
    param: CvParam,
    candidates: &[f64],
    n_obs: usize,
    trials: usize,
) -> Result<Vec<f64>, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::InvalidInput("trials must be at least 1"));
    }
    if candidates.is_empty() {
        return Err(HarnessError::InvalidInput("candidate list must be non-empty"));
    }
    if n_obs < 2 * CV_FOLDS {
        return Err(HarnessError::FoldSize { n_obs });
    }
    if n_obs < gen.min_rows() {
        return Err(HarnessError::InvalidInput(
            "n_obs below the generator's minimum row count",
        ));
    }
    let valid = |c: f64| match param {
        CvParam::Epsilon => c > 0.0 && c < 1.0,
        CvParam::Gamma => c > 0.0 && c.is_finite(),
    };
    if !candidates.iter().all(|&c| valid(c)) {
        return Err(HarnessError::InvalidInput(
            "candidate outside the parameter's domain",
        ));
    }
    let mut sorted = candidates.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite candidates"));
    sorted.dedup();
    Ok(sorted)
}

fn argmin_smallest(candidates: &[f64], losses: &[f64]) -> f64 {
    // Candidates are ascending; strict `<` keeps the smallest on ties.
    let mut best = 0;
    for i in 1..candidates.len() {
        if losses[i] < losses[best] {
            best = i;
        }
    }
    candidates[best]
}

/// Select a tuning exponent by 5-fold cross-validation, repeated over
/// independent realizations.
pub fn cross_validate(
    gen: Generator,
    param: CvParam,
    candidates: &[f64],
    n_obs: usize,
    trials: usize,
    base_seed: u64,
) -> Result<CvResult, HarnessError> {
    let candidates = validate(gen, param, candidates, n_obs, trials)?;
    let k = candidates.len();

    let mut pooled_loss = vec![0.0f64; k];
    let mut pooled_count = 0usize;
    let mut cv_trials = Vec::with_capacity(trials);
    let mut excluded = 0usize;

    'trial: for trial in 0..trials {
        let seed = base_seed.wrapping_add(3 * trial as u64);
        let train = gen.generate(n_obs, seed);

        let mut order: Vec<usize> = (0..n_obs).collect();
        let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(1));
        for i in (1..n_obs).rev() {
            let j = rng.random_range(0..=i);
            order.swap(i, j);
        }

        let mut fold_losses = vec![[0.0f64; CV_FOLDS]; k];
        #[allow(clippy::needless_range_loop)] // fold drives the block arithmetic too
        for fold in 0..CV_FOLDS {
            let lo = fold * n_obs / CV_FOLDS;
            let hi = (fold + 1) * n_obs / CV_FOLDS;
            let val_rows = &order[lo..hi];
            let train_rows: Vec<usize> = order[..lo]
                .iter()
                .chain(&order[hi..])
                .copied()
                .collect();

            let a_train = train.a.row_subset(&train_rows)?;
            let y_train: Vec<f64> = train_rows.iter().map(|&i| train.y[i]).collect();
            let a_val = train.a.row_subset(val_rows)?;
            let y_val: Vec<f64> = val_rows.iter().map(|&i| train.y[i]).collect();

            for (ci, &candidate) in candidates.iter().enumerate() {
                let x_hat = match fit(param, candidate, &a_train, &y_train) {
                    Ok(x) => x,
                    Err(_) => {
                        excluded += 1;
                        continue 'trial;
                    }
                };
                let pred = a_val.matvec(&x_hat);
                let loss: f64 = y_val
                    .iter()
                    .zip(&pred)
                    .map(|(yi, pi)| (yi - pi) * (yi - pi))
                    .sum();
                fold_losses[ci][fold] = loss;
            }
        }

        let trial_means: Vec<f64> = fold_losses
            .iter()
            .map(|l| l.iter().sum::<f64>() / CV_FOLDS as f64)
            .collect();
        let chosen = argmin_smallest(&candidates, &trial_means);

        let test = gen.generate(n_obs, seed.wrapping_add(2));
        let x_hat = match fit(param, chosen, &test.a, &test.y) {
            Ok(x) => x,
            Err(_) => {
                excluded += 1;
                continue 'trial;
            }
        };
        let test_error: f64 = x_hat
            .iter()
            .zip(&test.x_true)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();

        for (ci, means) in trial_means.iter().enumerate() {
            pooled_loss[ci] += means;
        }
        pooled_count += 1;
        cv_trials.push(CvTrial {
            trial,
            chosen,
            test_error,
        });
    }

    if pooled_count == 0 {
        return Err(HarnessError::InvalidInput(
            "every cross-validation realization was excluded",
        ));
    }
    let mean_losses: Vec<f64> = pooled_loss
        .iter()
        .map(|s| s / pooled_count as f64)
        .collect();
    let chosen = argmin_smallest(&candidates, &mean_losses);
    Ok(CvResult {
        grid: CvGrid {
            param,
            candidates,
            mean_losses,
            chosen,
        },
        trials: cv_trials,
        excluded_trials: excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_candidate_is_chosen() {
        let result = cross_validate(
            Generator::Experiment1,
            CvParam::Epsilon,
            &[0.25],
            20,
            3,
            11,
        )
        .unwrap();
        assert_eq!(result.grid.chosen, 0.25);
        for t in &result.trials {
            assert_eq!(t.chosen, 0.25);
        }
    }

    #[test]
    fn chosen_minimizes_mean_loss() {
        let result = cross_validate(
            Generator::Experiment1,
            CvParam::Epsilon,
            &[0.125, 0.25, 0.5],
            50,
            5,
            3,
        )
        .unwrap();
        let min = result
            .grid
            .mean_losses
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let idx = result
            .grid
            .candidates
            .iter()
            .position(|&c| c == result.grid.chosen)
            .unwrap();
        assert_eq!(result.grid.mean_losses[idx], min);
        assert!(result.grid.candidates.contains(&result.grid.chosen));
    }

    #[test]
    fn gamma_cv_runs() {
        let result = cross_validate(
            Generator::Experiment1,
            CvParam::Gamma,
            &[0.5, 1.0, 2.0],
            40,
            3,
            21,
        )
        .unwrap();
        assert_eq!(result.trials.len(), 3);
        assert!(result.trials.iter().all(|t| t.test_error.is_finite()));
    }

    #[test]
    fn deterministic_given_seed() {
        let run = || {
            cross_validate(
                Generator::Experiment1,
                CvParam::Epsilon,
                &[0.125, 0.5],
                30,
                4,
                99,
            )
            .unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn small_n_rejected() {
        assert!(matches!(
            cross_validate(Generator::Experiment1, CvParam::Epsilon, &[0.25], 9, 1, 0),
            Err(HarnessError::FoldSize { n_obs: 9 })
        ));
    }

    #[test]
    fn empty_candidates_rejected() {
        assert!(cross_validate(Generator::Experiment1, CvParam::Epsilon, &[], 20, 1, 0).is_err());
    }
}
