//! Trial execution with optional rayon parallelism.
//!
//! Trials are pure functions of their keys, and aggregation consumes the
//! outcome vector in key order, so the degree of parallelism cannot change
//! any report: `par_iter().map().collect()` preserves order.

use rayon::prelude::*;
use sparsels_core::estimator::Method;
use sparsels_core::harness::{
    aggregate_mse, aggregate_support, run_mse_trial, run_support_trial, trial_keys,
    validate_mse_inputs, validate_support_inputs, ExperimentOptions, Generator, HarnessError,
    MonteCarloReport, TrialKey, TrialOutcome,
};

use crate::error::CliError;

fn execute<F>(jobs: usize, keys: &[TrialKey], f: F) -> Result<Vec<TrialOutcome>, CliError>
where
    F: Fn(&TrialKey) -> TrialOutcome + Sync,
{
    if jobs == 1 {
        return Ok(keys.iter().map(f).collect());
    }
    // jobs == 0 means "let rayon pick".
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("could not build thread pool: {e}")))?;
    Ok(pool.install(|| keys.par_iter().map(&f).collect()))
}

pub fn run_mse(
    gen: Generator,
    n_grid: &[usize],
    methods: &[Method],
    trials: usize,
    base_seed: u64,
    opts: &ExperimentOptions,
    jobs: usize,
) -> Result<MonteCarloReport, CliError> {
    validate_mse_inputs(gen, n_grid, methods, trials, opts).map_err(CliError::from)?;
    let keys = trial_keys(n_grid, trials, base_seed);
    let outcomes = execute(jobs, &keys, |k| run_mse_trial(gen, k, methods, opts))?;
    Ok(aggregate_mse(outcomes, n_grid, methods, trials))
}

pub fn run_support(
    gen: Generator,
    n_grid: &[usize],
    epsilons: &[f64],
    trials: usize,
    base_seed: u64,
    jobs: usize,
) -> Result<MonteCarloReport, CliError> {
    validate_support_inputs(gen, n_grid, epsilons, trials).map_err(CliError::from)?;
    let keys = trial_keys(n_grid, trials, base_seed);
    let outcomes = execute(jobs, &keys, |k| run_support_trial(gen, k, epsilons))?;
    Ok(aggregate_support(outcomes, n_grid, epsilons, trials))
}

pub fn sanitize_harness_error(e: HarnessError) -> CliError {
    e.into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallelism_does_not_change_reports() {
        let opts = ExperimentOptions::default();
        let serial = run_mse(
            Generator::Experiment1,
            &[20, 40],
            &Method::ALL,
            6,
            17,
            &opts,
            1,
        )
        .unwrap();
        let parallel = run_mse(
            Generator::Experiment1,
            &[20, 40],
            &Method::ALL,
            6,
            17,
            &opts,
            4,
        )
        .unwrap();
        assert_eq!(serial, parallel);
    }
}
