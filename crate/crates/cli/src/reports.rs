//! Tidy CSV writers for harness output.
//!
//! Experiment reports are one row per `(n_obs, group, metric)`:
//! `n_obs,group,metric,value,trials`, where `group` is an estimator tag for
//! MSE runs and a schedule exponent for support-recovery runs. Pipeline
//! traces are one row per `(field, index)`; indices are 1-based.

use std::fs;
use std::path::Path;

use sparsels_core::estimator::PipelineTrace;
use sparsels_core::harness::{CvResult, FeasibilityReport, GramBoundReport, MonteCarloReport};

use crate::error::CliError;
use crate::formats::fmt_float;

fn write(path: &Path, content: String) -> Result<(), CliError> {
    fs::write(path, content).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn write_report_csv(path: &Path, report: &MonteCarloReport) -> Result<(), CliError> {
    let mut out = String::from("n_obs,group,metric,value,trials\n");
    for row in &report.rows {
        let mut push = |metric: &str, value: f64| {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.n_obs,
                row.group,
                metric,
                fmt_float(value),
                row.trials
            ));
        };
        push("mse", row.mse);
        push("recovery_portion", row.recovery_portion);
        push("feasibility_freq", row.feasibility_freq);
        push("oracle_match_rate", row.oracle_match_rate);
        push("mean_bound_lemma6", row.mean_bound_lemma6);
        push("mean_bound_theorem1", row.mean_bound_theorem1);
        push("failed_trials", row.failures as f64);
    }
    write(path, out)
}

pub fn write_trace_csv(path: &Path, trace: &PipelineTrace) -> Result<(), CliError> {
    let mut out = String::from("field,index,value\n");
    out.push_str(&format!("lambda,,{}\n", fmt_float(trace.lambda)));
    out.push_str(&format!(
        "rank_warning,,{}\n",
        if trace.rank_warning { 1 } else { 0 }
    ));
    for (name, values) in [
        ("x_ls", &trace.x_ls),
        ("x_lp", &trace.x_lp),
        ("x_rels", &trace.x_rels),
    ] {
        for (i, v) in values.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", name, i + 1, fmt_float(*v)));
        }
    }
    for &i in &trace.support_lp {
        out.push_str(&format!("support,{},1\n", i + 1));
    }
    write(path, out)
}

/// Wide rows `lambda,x_1,...,x_n`, headerless like the matrix format.
pub fn write_path_csv(path: &Path, grid: &[f64], steps: &[Vec<f64>]) -> Result<(), CliError> {
    let mut out = String::new();
    for (lambda, step) in grid.iter().zip(steps) {
        out.push_str(&fmt_float(*lambda));
        for v in step {
            out.push(',');
            out.push_str(&fmt_float(*v));
        }
        out.push('\n');
    }
    write(path, out)
}

pub fn write_cv_grid_csv(path: &Path, result: &CvResult) -> Result<(), CliError> {
    let mut out = String::from("candidate,mean_val_loss,chosen\n");
    for (c, loss) in result
        .grid
        .candidates
        .iter()
        .zip(&result.grid.mean_losses)
    {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_float(*c),
            fmt_float(*loss),
            if *c == result.grid.chosen { 1 } else { 0 }
        ));
    }
    write(path, out)
}

pub fn write_cv_trials_csv(path: &Path, result: &CvResult) -> Result<(), CliError> {
    let mut out = String::from("trial,chosen,test_error\n");
    for t in &result.trials {
        out.push_str(&format!(
            "{},{},{}\n",
            t.trial,
            fmt_float(t.chosen),
            fmt_float(t.test_error)
        ));
    }
    write(path, out)
}

/// Key,value metadata companion (seed, grids, tolerances).
pub fn write_meta_csv(path: &Path, entries: &[(String, String)]) -> Result<(), CliError> {
    let mut out = String::new();
    for (k, v) in entries {
        out.push_str(&format!("{k},{v}\n"));
    }
    write(path, out)
}

/// Rows `check,quantity,value` accumulated by the check command.
pub struct CheckReport {
    rows: Vec<(String, String, String)>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { rows: Vec::new() }
    }

    pub fn push(&mut self, check: &str, quantity: &str, value: impl std::fmt::Display) {
        self.rows
            .push((check.to_string(), quantity.to_string(), value.to_string()));
    }

    pub fn push_float(&mut self, check: &str, quantity: &str, value: f64) {
        self.push(check, quantity, fmt_float(value));
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut out = String::from("check,quantity,value\n");
        for (c, q, v) in &self.rows {
            out.push_str(&format!("{c},{q},{v}\n"));
        }
        write(path, out)
    }
}

impl Default for CheckReport {
    fn default() -> Self {
        Self::new()
    }
}

pub fn describe_feasibility(report: &FeasibilityReport) -> String {
    format!(
        "feasibility: freq {:.4} vs bounds {:.4} / {:.4} (slack {:.4}) over {} trials -> {}",
        report.empirical_freq,
        report.mean_bound_lemma6,
        report.mean_bound_theorem1,
        report.slack,
        report.trials,
        if report.holds { "ok" } else { "VIOLATED" }
    )
}

pub fn describe_gram(report: &GramBoundReport) -> Vec<String> {
    report
        .rows
        .iter()
        .map(|r| {
            format!(
                "gram N={}: offdiag {} (max excess {:.3e}), diag {} (min margin {:.3e}), gershgorin floor {:.6e} >= constant floor {:.6e}",
                r.n_obs,
                if r.offdiag_ok { "ok" } else { "VIOLATED" },
                r.max_offdiag_excess,
                if r.diag_ok { "ok" } else { "VIOLATED" },
                r.min_diag_margin,
                r.gershgorin_lower,
                r.constant_lower,
            )
        })
        .collect()
}
