//! `sparsels gen`: draw one synthetic problem and export it as a CSV
//! bundle consumable by `sparsels estimate`.

use crate::args::GenArgs;
use crate::commands::{ensure_out_dir, parse_generator, ParamEcho};
use crate::error::CliError;
use crate::formats;
use crate::manifest;

pub fn run(args: &GenArgs) -> Result<(), CliError> {
    let gen = parse_generator(&args.generator)?;
    if args.n_obs < gen.min_rows() {
        return Err(CliError::Usage(format!(
            "--n-obs: {} needs at least {} observations",
            gen.tag(),
            gen.min_rows()
        )));
    }
    let problem = gen.generate(args.n_obs, args.seed);

    let out_dir = ensure_out_dir(args.out_dir.as_deref(), "runs/gen")?;
    formats::write_problem_bundle(&out_dir, &problem)?;

    let mut params = ParamEcho::new();
    params.put("generator", gen.tag());
    params.put("n_obs", args.n_obs);
    params.put("seed", args.seed);
    manifest::write_manifest(
        &out_dir,
        "gen",
        params.into_map(),
        Some(args.seed),
        &["A.csv", "y.csv", "xtrue.csv", "meta.csv"],
    )?;

    println!(
        "gen: {} problem with N={} (seed {}) written to {}",
        gen.tag(),
        args.n_obs,
        args.seed,
        out_dir.display()
    );
    Ok(())
}
