//! `sparsels estimate`: run the pipeline on an imported problem bundle and
//! write the estimate, its support (1-based), and the full trace.

use sparsels_core::estimator::{self, EstimatorConfig};

use crate::args::EstimateArgs;
use crate::commands::{ensure_out_dir, ParamEcho};
use crate::error::CliError;
use crate::formats::{self, fmt_float};
use crate::manifest;
use crate::reports;

pub fn run(args: &EstimateArgs) -> Result<(), CliError> {
    let bundle = formats::read_problem_bundle(&args.input)?;

    let mut config = match (args.epsilon, args.lambda) {
        (Some(e), None) => EstimatorConfig::with_epsilon(e),
        (None, Some(l)) => EstimatorConfig::with_lambda(l),
        // clap's arg group guarantees exactly one.
        _ => unreachable!("tuning group enforces exactly one of epsilon/lambda"),
    };
    config.noise_std_scaling = args.noise_std_scaling;

    let trace = estimator::estimate(&bundle.a, &bundle.y, &config)?;

    let out_dir = ensure_out_dir(args.out_dir.as_deref(), "runs/estimate")?;
    formats::write_vector_csv(&out_dir.join("x_rels.csv"), &trace.x_rels)?;
    formats::write_support_csv(&out_dir.join("support.csv"), &trace.support_lp)?;
    reports::write_trace_csv(&out_dir.join("trace.csv"), &trace)?;

    let mut params = ParamEcho::new();
    params.put("input", args.input.display());
    match (args.epsilon, args.lambda) {
        (Some(e), _) => params.put("epsilon", fmt_float(e)),
        (_, Some(l)) => params.put("lambda", fmt_float(l)),
        _ => unreachable!(),
    };
    if let Some(s) = args.noise_std_scaling {
        params.put("noise_std_scaling", fmt_float(s));
    }
    params.put("resolved_lambda", fmt_float(trace.lambda));
    manifest::write_manifest(
        &out_dir,
        "estimate",
        params.into_map(),
        None,
        &["x_rels.csv", "support.csv", "trace.csv"],
    )?;

    let support_1based: Vec<usize> = trace.support_lp.iter().map(|i| i + 1).collect();
    println!(
        "estimate: lambda {:.6e}, support {:?} (1-based), rank warning {}",
        trace.lambda, support_1based, trace.rank_warning
    );
    println!("wrote {}", out_dir.display());
    Ok(())
}
