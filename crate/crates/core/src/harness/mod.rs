//! Monte Carlo experiment engine and bound validators.
//!
//! Experiments are decomposed into pure per-trial functions keyed by
//! `(n_obs, trial, seed)` plus order-insensitive aggregation, so callers may
//! run trials serially or in parallel and get byte-identical reports either
//! way. Per-trial seeds are `base_seed + trial_index` with the trial index
//! enumerated over the full `(N, trial)` grid.

mod checks;
mod cv;

pub use checks::{
    check_feasibility_bound, check_feasibility_bound_with_lambda, check_gram_bounds,
    check_lp_error_bound, check_lse_identity, check_scalar_feasibility,
    check_whitened_gaussianity, feasibility_bound_lemma6, feasibility_bound_theorem1,
    gaussianity_report, gram_constants, whitened_residuals, FeasibilityReport,
    GaussianityReport, GramBoundReport, GramRow, ScalarTailReport, LP_BOUND_SLACK,
};
pub use cv::{cross_validate, CvGrid, CvParam, CvResult, CvTrial, CV_FOLDS};

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::baselines::{self, BaselineError, LassoConfig};
use crate::datagen::{self, Problem};
use crate::estimator::{
    self, detect_support, EstimatorConfig, EstimatorError, Method, PipelineTrace,
};
use crate::float;
use crate::linalg::{self, norm_inf, LinalgError};

/// Two support-restricted solves count as "the same estimate" when they
/// agree entrywise within this tolerance.
pub const ORACLE_MATCH_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid harness input: {0}")]
    InvalidInput(&'static str),
    #[error("cross-validation needs at least 10 observations for 5 folds, got {n_obs}")]
    FoldSize { n_obs: usize },
    #[error("{name} violated: {lhs:.6e} > {rhs:.6e}")]
    BoundViolated { name: &'static str, lhs: f64, rhs: f64 },
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which synthetic family a run draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Experiment1,
    Experiment2,
}

impl Generator {
    pub fn generate(&self, n_obs: usize, seed: u64) -> Problem {
        match self {
            Generator::Experiment1 => datagen::gen_experiment1(n_obs, seed),
            Generator::Experiment2 => datagen::gen_experiment2(n_obs, seed),
        }
    }

    /// Smallest admissible observation count.
    pub fn min_rows(&self) -> usize {
        match self {
            Generator::Experiment1 => 9,
            Generator::Experiment2 => 11,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Generator::Experiment1 => "exp1",
            Generator::Experiment2 => "exp2",
        }
    }
}

/// Method tuning shared across a whole experiment: the schedule exponent
/// for the pipeline and the ADALASSO weight exponent. Plain LASSO always
/// uses `sqrt(N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentOptions {
    pub epsilon: f64,
    pub gamma: f64,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions {
            epsilon: 1.0 / 3.0,
            gamma: 1.0,
        }
    }
}

/// Regularization used for the plain-LASSO baseline at `n_obs` rows.
pub fn lasso_reg_param(n_obs: usize) -> f64 {
    float::sqrt(n_obs as f64)
}

/// Identifies one trial: the observation count and the seed the problem is
/// drawn with. All methods inside a trial see the same problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialKey {
    pub n_obs: usize,
    pub trial: usize,
    pub seed: u64,
}

/// Keys for a full `(N, trial)` grid; seed = `base_seed + running index`.
pub fn trial_keys(n_grid: &[usize], trials: usize, base_seed: u64) -> Vec<TrialKey> {
    let mut keys = Vec::with_capacity(n_grid.len() * trials);
    let mut index = 0u64;
    for &n_obs in n_grid {
        for trial in 0..trials {
            keys.push(TrialKey {
                n_obs,
                trial,
                seed: base_seed.wrapping_add(index),
            });
            index += 1;
        }
    }
    keys
}

/// Per-trial, per-method metrics.
///
/// `lambda`, `feasible`, and the bound fields describe the shrinkage
/// schedule of the trial (shared by every method record of that trial).
/// The implication `support_exact => oracle_match` holds for the
/// support-restricted least-squares methods; LASSO-family estimates are
/// biased, so for them an exact support does not force an oracle match.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub n_obs: usize,
    pub trial: usize,
    pub seed: u64,
    pub method: Method,
    /// Schedule exponent used for the pipeline in this trial.
    pub epsilon: f64,
    /// `|x_hat - x_true|_2^2` for this method.
    pub sq_error: f64,
    /// This method's detected support equals the true support.
    pub support_exact: bool,
    /// `|x_ls - x_true|_inf <= lambda` (the shrinkage feasibility event).
    pub feasible: bool,
    /// Shrinkage threshold of the trial.
    pub lambda: f64,
    /// Smallest singular value of the design.
    pub sigma_min: f64,
    /// Smallest nonzero magnitude of the truth.
    pub x0_min: f64,
    /// This method's estimate equals the oracle solve within
    /// [`ORACLE_MATCH_TOL`] entrywise.
    pub oracle_match: bool,
    /// `1 - n exp(-lambda^2 sigma^2 / 2n)` for this trial.
    pub bound_lemma6: f64,
    /// `1 - n exp(-c1_hat^2 N^epsilon)` for this trial.
    pub bound_theorem1: f64,
}

/// A trial whose estimator errored; recorded instead of silently dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialFailure {
    pub n_obs: usize,
    pub trial: usize,
    pub method: Method,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrialOutcome {
    pub records: Vec<TrialRecord>,
    pub failures: Vec<TrialFailure>,
}

/// Row label in an aggregated report: estimator (MSE runs) or schedule
/// exponent (support-recovery runs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupKey {
    Method(Method),
    Epsilon(f64),
}

impl core::fmt::Display for GroupKey {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GroupKey::Method(m) => f.write_str(m.tag()),
            GroupKey::Epsilon(e) => write!(f, "{e:?}"),
        }
    }
}

/// Per-`(N, group)` aggregates over `trials` paired trials.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub n_obs: usize,
    pub group: GroupKey,
    pub trials: usize,
    /// Trials that produced a record (trials minus failures).
    pub completed: usize,
    pub failures: usize,
    /// Mean squared error `mean |x_hat - x_true|_2^2`.
    pub mse: f64,
    /// Fraction of trials with exactly recovered support.
    pub recovery_portion: f64,
    /// Fraction of trials where the feasibility event held.
    pub feasibility_freq: f64,
    /// Fraction of trials matching the oracle solve entrywise.
    pub oracle_match_rate: f64,
    pub mean_bound_lemma6: f64,
    pub mean_bound_theorem1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloReport {
    pub rows: Vec<AggregateRow>,
    pub records: Vec<TrialRecord>,
    pub failures: Vec<TrialFailure>,
}

impl MonteCarloReport {
    /// `sum over the tested N grid of (1 - recovery portion)` per group: a
    /// finite-grid stand-in for the summability that drives almost-sure
    /// eventual recovery. Reported as evidence only; the full statement is
    /// asymptotic and not falsifiable at desk scale.
    pub fn summability_proxy(&self) -> Vec<(GroupKey, f64)> {
        let mut out: Vec<(GroupKey, f64)> = Vec::new();
        for row in &self.rows {
            if row.recovery_portion.is_nan() {
                continue;
            }
            let miss = 1.0 - row.recovery_portion;
            match out.iter_mut().find(|(g, _)| *g == row.group) {
                Some((_, acc)) => *acc += miss,
                None => out.push((row.group, miss)),
            }
        }
        out
    }
}

struct TrialContext {
    problem: Problem,
    trace: PipelineTrace,
    oracle_x: Vec<f64>,
    feasible: bool,
    sigma_min: f64,
    bound_lemma6: f64,
    bound_theorem1: f64,
}

fn prepare_trial(
    gen: Generator,
    key: &TrialKey,
    epsilon: f64,
) -> Result<TrialContext, HarnessError> {
    let problem = gen.generate(key.n_obs, key.seed);
    let svd = linalg::svd_thin(&problem.a)?;
    let config = EstimatorConfig::with_epsilon(epsilon);
    let trace = estimator::estimate_with_svd(&problem.a, &svd, &problem.y, &config)?;
    let oracle = estimator::oracle_lse(&problem.a, &problem.y, &problem.true_support)?;

    let deviation: Vec<f64> = trace
        .x_ls
        .iter()
        .zip(&problem.x_true)
        .map(|(a, b)| a - b)
        .collect();
    let feasible = norm_inf(&deviation) <= trace.lambda;
    let n = problem.n_params();
    let sigma_min = svd.sigma_min();
    let cert = linalg::richness_certificate(&svd, problem.n_obs());
    let bound_lemma6 = checks::feasibility_bound_lemma6(n, trace.lambda, sigma_min);
    let bound_theorem1 =
        checks::feasibility_bound_theorem1(n, cert.c1_hat, problem.n_obs(), epsilon);

    Ok(TrialContext {
        problem,
        trace,
        oracle_x: oracle.x,
        feasible,
        sigma_min,
        bound_lemma6,
        bound_theorem1,
    })
}

fn sq_error(x: &[f64], truth: &[f64]) -> f64 {
    x.iter().zip(truth).map(|(a, b)| (a - b) * (a - b)).sum()
}

fn matches_oracle(x: &[f64], oracle: &[f64]) -> bool {
    x.iter()
        .zip(oracle)
        .all(|(a, b)| float::abs(a - b) <= ORACLE_MATCH_TOL)
}

fn record_for(
    ctx: &TrialContext,
    key: &TrialKey,
    method: Method,
    epsilon: f64,
    x_hat: &[f64],
) -> TrialRecord {
    let support = detect_support(x_hat);
    TrialRecord {
        n_obs: key.n_obs,
        trial: key.trial,
        seed: key.seed,
        method,
        epsilon,
        sq_error: sq_error(x_hat, &ctx.problem.x_true),
        support_exact: support == ctx.problem.true_support,
        feasible: ctx.feasible,
        lambda: ctx.trace.lambda,
        sigma_min: ctx.sigma_min,
        x0_min: ctx.problem.x0_min().unwrap_or(0.0),
        oracle_match: matches_oracle(x_hat, &ctx.oracle_x),
        bound_lemma6: ctx.bound_lemma6,
        bound_theorem1: ctx.bound_theorem1,
    }
}

/// One MSE trial: draw the problem once, evaluate every requested method on
/// it, and return the paired records.
pub fn run_mse_trial(
    gen: Generator,
    key: &TrialKey,
    methods: &[Method],
    opts: &ExperimentOptions,
) -> TrialOutcome {
    let mut outcome = TrialOutcome::default();
    let fail_all = |outcome: &mut TrialOutcome, err: &dyn core::fmt::Display| {
        for &m in methods {
            outcome.failures.push(TrialFailure {
                n_obs: key.n_obs,
                trial: key.trial,
                method: m,
                message: err.to_string(),
            });
        }
    };

    let ctx = match prepare_trial(gen, key, opts.epsilon) {
        Ok(ctx) => ctx,
        Err(e) => {
            fail_all(&mut outcome, &e);
            return outcome;
        }
    };

    for &method in methods {
        let result: Result<Vec<f64>, HarnessError> = match method {
            Method::Lse => Ok(ctx.trace.x_ls.clone()),
            Method::LpRelse => Ok(ctx.trace.x_rels.clone()),
            Method::OracleLse => Ok(ctx.oracle_x.clone()),
            Method::Lasso => baselines::lasso_cd(
                &ctx.problem.a,
                &ctx.problem.y,
                &LassoConfig::new(lasso_reg_param(key.n_obs)),
            )
            .map(|fit| fit.x)
            .map_err(HarnessError::from),
            Method::Adalasso => {
                baselines::adalasso(&ctx.problem.a, &ctx.problem.y, opts.gamma, key.n_obs)
                    .map(|fit| fit.x)
                    .map_err(HarnessError::from)
            }
        };
        match result {
            Ok(x_hat) => outcome
                .records
                .push(record_for(&ctx, key, method, opts.epsilon, &x_hat)),
            Err(e) => outcome.failures.push(TrialFailure {
                n_obs: key.n_obs,
                trial: key.trial,
                method,
                message: e.to_string(),
            }),
        }
    }
    outcome
}

/// One support-recovery trial: the same problem thresholded at every
/// requested schedule exponent.
pub fn run_support_trial(gen: Generator, key: &TrialKey, epsilons: &[f64]) -> TrialOutcome {
    let mut outcome = TrialOutcome::default();
    for &eps in epsilons {
        match prepare_trial(gen, key, eps) {
            Ok(ctx) => {
                let record = record_for(&ctx, key, Method::LpRelse, eps, &ctx.trace.x_rels);
                outcome.records.push(record);
            }
            Err(e) => outcome.failures.push(TrialFailure {
                n_obs: key.n_obs,
                trial: key.trial,
                method: Method::LpRelse,
                message: e.to_string(),
            }),
        }
    }
    outcome
}

fn merge_outcomes(outcomes: Vec<TrialOutcome>) -> (Vec<TrialRecord>, Vec<TrialFailure>) {
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for mut o in outcomes {
        records.append(&mut o.records);
        failures.append(&mut o.failures);
    }
    (records, failures)
}

fn aggregate_group(
    records: &[TrialRecord],
    failures: &[TrialFailure],
    n_obs: usize,
    group: GroupKey,
    trials: usize,
    select: impl Fn(&TrialRecord) -> bool,
    select_failure: impl Fn(&TrialFailure) -> bool,
) -> AggregateRow {
    let selected: Vec<&TrialRecord> = records
        .iter()
        .filter(|r| r.n_obs == n_obs && select(r))
        .collect();
    let failed = failures
        .iter()
        .filter(|f| f.n_obs == n_obs && select_failure(f))
        .count();
    let m = selected.len();
    let mean = |f: &dyn Fn(&TrialRecord) -> f64| -> f64 {
        if m == 0 {
            f64::NAN
        } else {
            selected.iter().map(|r| f(r)).sum::<f64>() / m as f64
        }
    };
    let frac = |f: &dyn Fn(&TrialRecord) -> bool| -> f64 {
        if m == 0 {
            f64::NAN
        } else {
            selected.iter().filter(|r| f(r)).count() as f64 / m as f64
        }
    };
    AggregateRow {
        n_obs,
        group,
        trials,
        completed: m,
        failures: failed,
        mse: mean(&|r| r.sq_error),
        recovery_portion: frac(&|r| r.support_exact),
        feasibility_freq: frac(&|r| r.feasible),
        oracle_match_rate: frac(&|r| r.oracle_match),
        mean_bound_lemma6: mean(&|r| r.bound_lemma6),
        mean_bound_theorem1: mean(&|r| r.bound_theorem1),
    }
}

/// Aggregate MSE-run outcomes into one row per `(N, method)`.
pub fn aggregate_mse(
    outcomes: Vec<TrialOutcome>,
    n_grid: &[usize],
    methods: &[Method],
    trials: usize,
) -> MonteCarloReport {
    let (records, failures) = merge_outcomes(outcomes);
    let mut rows = Vec::new();
    for &n_obs in n_grid {
        for &method in methods {
            rows.push(aggregate_group(
                &records,
                &failures,
                n_obs,
                GroupKey::Method(method),
                trials,
                |r| r.method == method,
                |f| f.method == method,
            ));
        }
    }
    MonteCarloReport {
        rows,
        records,
        failures,
    }
}

/// Aggregate support-recovery outcomes into one row per `(N, epsilon)`.
pub fn aggregate_support(
    outcomes: Vec<TrialOutcome>,
    n_grid: &[usize],
    epsilons: &[f64],
    trials: usize,
) -> MonteCarloReport {
    let (records, failures) = merge_outcomes(outcomes);
    let mut rows = Vec::new();
    for &n_obs in n_grid {
        for &eps in epsilons {
            rows.push(aggregate_group(
                &records,
                &failures,
                n_obs,
                GroupKey::Epsilon(eps),
                trials,
                |r| r.epsilon == eps,
                |_| false,
            ));
        }
    }
    MonteCarloReport {
        rows,
        records,
        failures,
    }
}

fn validate_common(n_grid: &[usize], trials: usize, gen: Generator) -> Result<(), HarnessError> {
    if trials == 0 {
        return Err(HarnessError::InvalidInput("trials must be at least 1"));
    }
    if n_grid.is_empty() {
        return Err(HarnessError::InvalidInput("n grid must be non-empty"));
    }
    if n_grid.iter().any(|&n| n < gen.min_rows()) {
        return Err(HarnessError::InvalidInput(
            "n grid entry below the generator's minimum row count",
        ));
    }
    Ok(())
}

/// Input validation for an MSE run; exposed so external executors (e.g. a
/// parallel driver mapping [`run_mse_trial`] itself) can fail fast the same
/// way [`run_mse_experiment`] does.
pub fn validate_mse_inputs(
    gen: Generator,
    n_grid: &[usize],
    methods: &[Method],
    trials: usize,
    opts: &ExperimentOptions,
) -> Result<(), HarnessError> {
    validate_common(n_grid, trials, gen)?;
    if methods.is_empty() {
        return Err(HarnessError::InvalidInput("methods must be non-empty"));
    }
    if !(opts.epsilon > 0.0 && opts.epsilon < 1.0) {
        return Err(HarnessError::InvalidInput("epsilon must lie in (0, 1)"));
    }
    Ok(())
}

/// Input validation for a support-recovery run; see [`validate_mse_inputs`].
pub fn validate_support_inputs(
    gen: Generator,
    n_grid: &[usize],
    epsilons: &[f64],
    trials: usize,
) -> Result<(), HarnessError> {
    validate_common(n_grid, trials, gen)?;
    if epsilons.is_empty() {
        return Err(HarnessError::InvalidInput("epsilon list must be non-empty"));
    }
    if epsilons.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(HarnessError::InvalidInput("epsilon must lie in (0, 1)"));
    }
    Ok(())
}

/// MSE curves: for each `N` and method, the mean of `|x_hat - x_true|_2^2`
/// over `trials` paired trials (identical seeds across methods).
pub fn run_mse_experiment(
    gen: Generator,
    n_grid: &[usize],
    methods: &[Method],
    trials: usize,
    base_seed: u64,
    opts: &ExperimentOptions,
) -> Result<MonteCarloReport, HarnessError> {
    validate_mse_inputs(gen, n_grid, methods, trials, opts)?;
    let outcomes: Vec<TrialOutcome> = trial_keys(n_grid, trials, base_seed)
        .iter()
        .map(|key| run_mse_trial(gen, key, methods, opts))
        .collect();
    Ok(aggregate_mse(outcomes, n_grid, methods, trials))
}

/// Support-recovery portions: for each `N` and schedule exponent, the
/// fraction of trials whose detected support equals the true support.
pub fn run_support_recovery(
    gen: Generator,
    n_grid: &[usize],
    epsilons: &[f64],
    trials: usize,
    base_seed: u64,
) -> Result<MonteCarloReport, HarnessError> {
    validate_support_inputs(gen, n_grid, epsilons, trials)?;
    let outcomes: Vec<TrialOutcome> = trial_keys(n_grid, trials, base_seed)
        .iter()
        .map(|key| run_support_trial(gen, key, epsilons))
        .collect();
    Ok(aggregate_support(outcomes, n_grid, epsilons, trials))
}
