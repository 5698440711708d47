//! `sparsels path`: the soft-threshold solution path over a lambda grid.
//! Each coordinate shrinks linearly toward zero and stays there once it
//! arrives; the default input reproduces the stock four-coordinate demo.

use sparsels_core::estimator::solution_path;

use crate::args::PathArgs;
use crate::commands::{ensure_out_dir, parse_real_list, ParamEcho};
use crate::error::CliError;
use crate::manifest;
use crate::reports;

pub fn run(args: &PathArgs) -> Result<(), CliError> {
    let x_ls = parse_real_list(&args.x_ls, "x-ls")?;
    let grid = match &args.lambda_grid {
        Some(s) => parse_real_list(s, "lambda-grid")?,
        None => (0..=40).map(|k| k as f64 * 0.05).collect(),
    };
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(CliError::Usage("--lambda-grid must be ascending".into()));
    }
    if grid.iter().any(|&l| l < 0.0) {
        return Err(CliError::Usage("--lambda-grid must be nonnegative".into()));
    }

    let steps = solution_path(&x_ls, &grid);

    let out_dir = ensure_out_dir(args.out_dir.as_deref(), "runs/path")?;
    reports::write_path_csv(&out_dir.join("path.csv"), &grid, &steps)?;

    let mut params = ParamEcho::new();
    params.put("x_ls", &args.x_ls);
    params.put(
        "lambda_grid",
        args.lambda_grid.as_deref().unwrap_or("0..2 step 0.05"),
    );
    manifest::write_manifest(&out_dir, "path", params.into_map(), None, &["path.csv"])?;

    println!(
        "path: {} grid points, {} coordinates; wrote {}",
        grid.len(),
        x_ls.len(),
        out_dir.display()
    );
    Ok(())
}
