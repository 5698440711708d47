//! Command-line surface.
//!
//! Real-valued flags accept plain decimals or fractions (`--epsilon 1/3`).
//! List flags are comma-separated. Every command is deterministic given its
//! flags and seed.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Parse a real number, allowing `a/b` fraction syntax.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let v = if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|_| format!("invalid numerator in {s:?}"))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|_| format!("invalid denominator in {s:?}"))?;
        if d == 0.0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        n / d
    } else {
        s.trim()
            .parse()
            .map_err(|_| format!("invalid number {s:?}"))?
    };
    if !v.is_finite() {
        return Err(format!("non-finite value {s:?}"));
    }
    Ok(v)
}

#[derive(Debug, Parser)]
#[command(
    name = "sparsels",
    version,
    about = "Sparse estimation for noisy overdetermined linear systems",
    long_about = "Three-step sparse estimator (least squares, soft-threshold support \
                  detection, restricted refit) with baselines, synthetic experiment \
                  generators, a Monte Carlo harness, and executable bound checkers."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export a synthetic problem as a CSV bundle
    Gen(GenArgs),
    /// Run the estimator pipeline on a CSV problem bundle
    Estimate(EstimateArgs),
    /// Correlated-Gaussian-design experiment: MSE curves and support recovery
    Exp1(ExperimentArgs),
    /// Sinusoid-dictionary experiment: MSE curves and support recovery
    Exp2(ExperimentArgs),
    /// Emit the soft-threshold solution path over a lambda grid
    Path(PathArgs),
    /// Run one of the analysis checkers; exits 4 on any violated inequality
    Check(CheckArgs),
    /// Select a tuning exponent by 5-fold cross-validation
    Cv(CvArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Problem family: exp1 | exp2
    #[arg(long, default_value = "exp1")]
    pub generator: String,
    #[arg(long)]
    pub n_obs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory [default: runs/gen]
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(
    clap::ArgGroup::new("tuning")
        .required(true)
        .args(["epsilon", "lambda"])
))]
pub struct EstimateArgs {
    /// Problem bundle directory (must hold A.csv and y.csv)
    #[arg(long)]
    pub input: PathBuf,
    /// Schedule exponent in (0,1): lambda = sqrt(2n / N^(1-epsilon))
    #[arg(long, value_parser = parse_real)]
    pub epsilon: Option<f64>,
    /// Fixed threshold, bypassing the schedule
    #[arg(long, value_parser = parse_real)]
    pub lambda: Option<f64>,
    /// Multiply the threshold by a known noise standard deviation
    #[arg(long, value_parser = parse_real)]
    pub noise_std_scaling: Option<f64>,
    /// Output directory [default: runs/estimate]
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Observation counts, comma-separated
    #[arg(long, default_value = "20,50,100,200,300,500")]
    pub n_grid: String,
    /// Monte Carlo repetitions per grid point
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    /// Estimators to run, comma-separated
    #[arg(long, default_value = "LSE,LP_RELSE,ORACLE_LSE,LASSO,ADALASSO")]
    pub methods: String,
    /// Schedule exponent for the pipeline
    #[arg(long, default_value = "1/3", value_parser = parse_real)]
    pub epsilon: f64,
    /// ADALASSO weight exponent
    #[arg(long, default_value = "1", value_parser = parse_real)]
    pub gamma: f64,
    /// Exponents swept in the support-recovery report
    #[arg(long, default_value = "1/8,1/4,1/3,1/2")]
    pub support_epsilons: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = all cores); the report is identical at any setting
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Output directory [default: runs/exp1 or runs/exp2]
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    /// Input vector, comma-separated
    #[arg(long, default_value = "2,0.5,-1,-1.5")]
    pub x_ls: String,
    /// Ascending lambda grid, comma-separated [default: 0 to 2 in steps of 0.05]
    #[arg(long)]
    pub lambda_grid: Option<String>,
    /// Output directory [default: runs/path]
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// Closed-form bounds on the sinusoid Gram matrix, plus the Gershgorin floor
    Gram,
    /// Least-squares error identity on recorded noise
    Lemma1,
    /// Whitened-residual Gaussianity bands (with a negative control)
    Lemma2,
    /// Deterministic shrinkage error bound on feasible trials
    Lemma7,
    /// Feasibility frequency vs the analytic lower bound and the scalar exact tail
    Feasibility,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Which checker to run
    #[arg(value_enum)]
    pub which: CheckKind,
    /// Observation counts for the gram checker
    #[arg(long, default_value = "100,1000,10000,100000")]
    pub n_grid: String,
    /// Observation count per trial [default: per checker]
    #[arg(long)]
    pub n_obs: Option<usize>,
    /// Trial count [default: per checker]
    #[arg(long)]
    pub trials: Option<usize>,
    /// Schedule exponent
    #[arg(long, default_value = "1/3", value_parser = parse_real)]
    pub epsilon: f64,
    /// Fixed threshold override (feasibility and lemma7 checkers)
    #[arg(long, value_parser = parse_real)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory [default: runs/check]
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CvArgs {
    /// Tuning exponent to select: epsilon | gamma
    #[arg(long, default_value = "epsilon")]
    pub param: String,
    /// Candidate values [default: 1/8,1/4,1/2 for epsilon; 1/2,1,2 for gamma]
    #[arg(long)]
    pub candidates: Option<String>,
    #[arg(long, default_value_t = 100)]
    pub n_obs: usize,
    /// Independent realizations (train + test draw per realization)
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Problem family: exp1 | exp2
    #[arg(long, default_value = "exp1")]
    pub generator: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory [default: runs/cv]
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}
