//! `sparsels check`: drive one named checker, print each quantity with the
//! inequality sides, write a report CSV, and exit 4 if anything is violated.

use sparsels_core::datagen::{experiment2_dict, Problem};
use sparsels_core::estimator::{self, compute_lambda, EstimatorConfig};
use sparsels_core::harness::{self, Generator, HarnessError};

use crate::args::{CheckArgs, CheckKind};
use crate::commands::{ensure_out_dir, parse_usize_list, ParamEcho};
use crate::error::CliError;
use crate::formats::fmt_float;
use crate::manifest;
use crate::reports::{self, CheckReport};

/// Ceiling for the least-squares identity deviation.
const LSE_IDENTITY_TOL: f64 = 1e-8;
/// Row count of the scalar problem used for the exact-tail comparison.
const SCALAR_N_OBS: usize = 25;

struct CheckRun {
    report: CheckReport,
    violations: Vec<String>,
}

impl CheckRun {
    fn new() -> Self {
        CheckRun {
            report: CheckReport::new(),
            violations: Vec::new(),
        }
    }

    fn violate(&mut self, message: String) {
        println!("VIOLATION: {message}");
        self.violations.push(message);
    }
}

fn pipeline_config(args: &CheckArgs) -> EstimatorConfig {
    match args.lambda {
        Some(l) => EstimatorConfig::with_lambda(l),
        None => EstimatorConfig::with_epsilon(args.epsilon),
    }
}

fn exp1_batch(n_obs: usize, trials: usize, seed: u64) -> Vec<Problem> {
    (0..trials)
        .map(|t| Generator::Experiment1.generate(n_obs, seed.wrapping_add(t as u64)))
        .collect()
}

pub fn run(args: &CheckArgs) -> Result<(), CliError> {
    let mut run = CheckRun::new();
    let check_name = match args.which {
        CheckKind::Gram => check_gram(args, &mut run)?,
        CheckKind::Lemma1 => check_lemma1(args, &mut run)?,
        CheckKind::Lemma2 => check_lemma2(args, &mut run)?,
        CheckKind::Lemma7 => check_lemma7(args, &mut run)?,
        CheckKind::Feasibility => check_feasibility(args, &mut run)?,
    };

    let out_dir = ensure_out_dir(args.out_dir.as_deref(), "runs/check")?;
    run.report.write(&out_dir.join("check_report.csv"))?;
    let mut params = ParamEcho::new();
    params.put("which", check_name);
    params.put("epsilon", fmt_float(args.epsilon));
    if let Some(l) = args.lambda {
        params.put("lambda", fmt_float(l));
    }
    if let Some(n) = args.n_obs {
        params.put("n_obs", n);
    }
    if let Some(t) = args.trials {
        params.put("trials", t);
    }
    params.put("seed", args.seed);
    manifest::write_manifest(
        &out_dir,
        "check",
        params.into_map(),
        Some(args.seed),
        &["check_report.csv"],
    )?;

    if run.violations.is_empty() {
        println!("check {check_name}: PASS");
        Ok(())
    } else {
        Err(CliError::Check(format!(
            "check {check_name}: {} violation(s); first: {}",
            run.violations.len(),
            run.violations[0]
        )))
    }
}

fn check_gram(args: &CheckArgs, run: &mut CheckRun) -> Result<&'static str, CliError> {
    let n_grid = parse_usize_list(&args.n_grid, "n-grid")?;
    let max_n = *n_grid.iter().max().expect("non-empty grid");
    let dict = experiment2_dict(max_n);
    let report = harness::check_gram_bounds(&dict, &n_grid);
    for line in reports::describe_gram(&report) {
        println!("{line}");
    }
    run.report
        .push_float("gram", "max_constant_row_sum", report.max_row_sum);
    for row in &report.rows {
        let n = row.n_obs;
        run.report
            .push_float("gram", &format!("max_offdiag_excess_n{n}"), row.max_offdiag_excess);
        run.report
            .push_float("gram", &format!("min_diag_margin_n{n}"), row.min_diag_margin);
        run.report
            .push_float("gram", &format!("gershgorin_lower_n{n}"), row.gershgorin_lower);
        run.report
            .push_float("gram", &format!("constant_lower_n{n}"), row.constant_lower);
        if !row.offdiag_ok {
            run.violate(format!(
                "N={n}: off-diagonal Gram entry exceeds its constant by {:.6e} > 0",
                row.max_offdiag_excess
            ));
        }
        if !row.diag_ok {
            run.violate(format!(
                "N={n}: diagonal Gram entry falls {:.6e} below N/2 - C_ii",
                -row.min_diag_margin
            ));
        }
    }
    Ok("gram")
}

fn check_lemma1(args: &CheckArgs, run: &mut CheckRun) -> Result<&'static str, CliError> {
    let n_obs = args.n_obs.unwrap_or(100);
    let trials = args.trials.unwrap_or(100);
    let config = pipeline_config(args);
    let mut max_dev: f64 = 0.0;
    for t in 0..trials {
        let p = Generator::Experiment1.generate(n_obs, args.seed.wrapping_add(t as u64));
        let trace = estimator::estimate(&p.a, &p.y, &config)?;
        let dev = harness::check_lse_identity(&p, &trace).map_err(CliError::from)?;
        max_dev = max_dev.max(dev);
    }
    println!(
        "lse identity: max deviation {max_dev:.3e} over {trials} trials (tolerance {LSE_IDENTITY_TOL:.0e})"
    );
    run.report.push_float("lemma1", "max_deviation", max_dev);
    run.report
        .push_float("lemma1", "tolerance", LSE_IDENTITY_TOL);
    if max_dev > LSE_IDENTITY_TOL {
        run.violate(format!(
            "identity deviation {max_dev:.6e} > {LSE_IDENTITY_TOL:.6e}"
        ));
    }
    Ok("lemma1")
}

fn check_lemma2(args: &CheckArgs, run: &mut CheckRun) -> Result<&'static str, CliError> {
    let n_obs = args.n_obs.unwrap_or(50);
    let trials = args.trials.unwrap_or(10_000);
    let problems = exp1_batch(n_obs, trials, args.seed);
    let report = harness::check_whitened_gaussianity(&problems).map_err(CliError::from)?;
    println!(
        "whitening: mean dev {:.4e} (band {:.4e}), cov dev {:.4e} (band {:.4e}) over {} trials",
        report.max_mean_dev, report.mean_band, report.max_cov_dev, report.cov_band, report.samples
    );
    run.report.push_float("lemma2", "max_mean_dev", report.max_mean_dev);
    run.report.push_float("lemma2", "mean_band", report.mean_band);
    run.report.push_float("lemma2", "max_cov_dev", report.max_cov_dev);
    run.report.push_float("lemma2", "cov_band", report.cov_band);
    if !report.holds {
        run.violate(format!(
            "whitened moments outside bands: mean {:.6e} > {:.6e} or cov {:.6e} > {:.6e}",
            report.max_mean_dev, report.mean_band, report.max_cov_dev, report.cov_band
        ));
    }
    // Negative control: skipping the singular-value scaling must break the
    // covariance band, otherwise the check has no power.
    let unscaled = harness::whitened_residuals(&problems, true).map_err(CliError::from)?;
    let control = harness::gaussianity_report(&unscaled);
    run.report
        .push_float("lemma2", "negative_control_cov_dev", control.max_cov_dev);
    println!(
        "negative control (unscaled): cov dev {:.4e} vs band {:.4e} -> {}",
        control.max_cov_dev,
        control.cov_band,
        if control.holds { "UNEXPECTED PASS" } else { "fails as expected" }
    );
    if control.holds {
        run.violate("negative control passed the bands; the whitening check is vacuous".into());
    }
    Ok("lemma2")
}

fn check_lemma7(args: &CheckArgs, run: &mut CheckRun) -> Result<&'static str, CliError> {
    let n_obs = args.n_obs.unwrap_or(50);
    let trials = args.trials.unwrap_or(10_000);
    let config = pipeline_config(args);
    let mut applied = 0usize;
    for t in 0..trials {
        let p = Generator::Experiment1.generate(n_obs, args.seed.wrapping_add(t as u64));
        let trace = estimator::estimate(&p.a, &p.y, &config)?;
        match harness::check_lp_error_bound(&trace, &p) {
            Ok(true) => applied += 1,
            Ok(false) => {}
            Err(HarnessError::BoundViolated { lhs, rhs, .. }) => {
                run.violate(format!(
                    "trial {t}: |x_lp - x_true|^2 = {lhs:.6e} > 4 s lambda^2 = {rhs:.6e}"
                ));
            }
            Err(e) => return Err(e.into()),
        }
    }
    println!(
        "shrinkage bound: {applied}/{trials} trials feasible, {} violation(s)",
        run.violations.len()
    );
    run.report.push("lemma7", "trials", trials);
    run.report.push("lemma7", "applied", applied);
    run.report
        .push("lemma7", "violations", run.violations.len());
    Ok("lemma7")
}

fn check_feasibility(args: &CheckArgs, run: &mut CheckRun) -> Result<&'static str, CliError> {
    let n_obs = args.n_obs.unwrap_or(100);
    let trials = args.trials.unwrap_or(2000);
    let problems = exp1_batch(n_obs, trials, args.seed);
    let report = match args.lambda {
        Some(l) => harness::check_feasibility_bound_with_lambda(&problems, l),
        None => harness::check_feasibility_bound(&problems, args.epsilon),
    }
    .map_err(CliError::from)?;
    println!("{}", reports::describe_feasibility(&report));
    run.report
        .push_float("feasibility", "empirical_freq", report.empirical_freq);
    run.report
        .push_float("feasibility", "mean_bound_lemma6", report.mean_bound_lemma6);
    run.report
        .push_float("feasibility", "mean_bound_theorem1", report.mean_bound_theorem1);
    run.report.push_float("feasibility", "slack", report.slack);
    if !report.holds {
        run.violate(format!(
            "feasibility frequency {:.6e} < bound {:.6e} - slack {:.6e}",
            report.empirical_freq,
            report.mean_bound_lemma6.max(report.mean_bound_theorem1),
            report.slack
        ));
    }

    // Exact-tail oracle on a scalar problem.
    let scalar_lambda = match args.lambda {
        Some(l) => l,
        None => compute_lambda(1, SCALAR_N_OBS, args.epsilon)?,
    };
    let scalar = harness::check_scalar_feasibility(
        SCALAR_N_OBS,
        scalar_lambda,
        trials,
        args.seed.wrapping_add(0x5ca1a8),
    )
    .map_err(CliError::from)?;
    println!(
        "scalar tail: freq {:.4} vs exact {:.4} (2 se = {:.4}) -> {}",
        scalar.empirical_freq,
        scalar.exact,
        2.0 * scalar.std_err,
        if scalar.holds { "ok" } else { "VIOLATED" }
    );
    run.report
        .push_float("feasibility", "scalar_empirical", scalar.empirical_freq);
    run.report.push_float("feasibility", "scalar_exact", scalar.exact);
    run.report
        .push_float("feasibility", "scalar_std_err", scalar.std_err);
    if !scalar.holds {
        run.violate(format!(
            "scalar frequency {:.6e} differs from exact {:.6e} by more than 2 se = {:.6e}",
            scalar.empirical_freq,
            scalar.exact,
            2.0 * scalar.std_err
        ));
    }
    Ok("feasibility")
}
