//! `sparsels cv`: select epsilon or gamma by 5-fold cross-validation over
//! independent realizations, reporting the pooled grid and the per-trial
//! test errors (the boxplot data).

use sparsels_core::harness::{cross_validate, CvParam};

use crate::args::CvArgs;
use crate::commands::{ensure_out_dir, parse_generator, parse_real_list, ParamEcho};
use crate::error::CliError;
use crate::formats::fmt_float;
use crate::manifest;
use crate::reports;

pub fn run(args: &CvArgs) -> Result<(), CliError> {
    let param = CvParam::parse(&args.param).ok_or_else(|| {
        CliError::Usage(format!(
            "--param: expected epsilon or gamma, got {:?}",
            args.param
        ))
    })?;
    let candidates = match &args.candidates {
        Some(s) => parse_real_list(s, "candidates")?,
        None => match param {
            CvParam::Epsilon => vec![1.0 / 8.0, 1.0 / 4.0, 1.0 / 2.0],
            CvParam::Gamma => vec![0.5, 1.0, 2.0],
        },
    };
    let gen = parse_generator(&args.generator)?;

    let result = cross_validate(gen, param, &candidates, args.n_obs, args.trials, args.seed)
        .map_err(CliError::from)?;

    let out_dir = ensure_out_dir(args.out_dir.as_deref(), "runs/cv")?;
    reports::write_cv_grid_csv(&out_dir.join("cv_grid.csv"), &result)?;
    reports::write_cv_trials_csv(&out_dir.join("cv_trials.csv"), &result)?;

    let mut params = ParamEcho::new();
    params.put("param", param.tag());
    params.put(
        "candidates",
        result
            .grid
            .candidates
            .iter()
            .map(|c| fmt_float(*c))
            .collect::<Vec<_>>()
            .join(";"),
    );
    params.put("n_obs", args.n_obs);
    params.put("trials", args.trials);
    params.put("generator", gen.tag());
    params.put("seed", args.seed);
    params.put("excluded_trials", result.excluded_trials);
    reports::write_meta_csv(&out_dir.join("run_meta.csv"), &params.entries())?;
    manifest::write_manifest(
        &out_dir,
        "cv",
        params.into_map(),
        Some(args.seed),
        &["cv_grid.csv", "cv_trials.csv", "run_meta.csv"],
    )?;

    let mean_test = result.trials.iter().map(|t| t.test_error).sum::<f64>()
        / result.trials.len().max(1) as f64;
    println!(
        "cv {}: chose {} over {:?}; mean test error {:.6e} across {} realizations ({} excluded)",
        param.tag(),
        result.grid.chosen,
        result.grid.candidates,
        mean_test,
        result.trials.len(),
        result.excluded_trials
    );
    println!("wrote {}", out_dir.display());
    Ok(())
}
