//! The three-step sparse estimator: least squares, l1-minimizing shrinkage
//! over the box `|x - x_ls|_inf <= lambda` (solved analytically by
//! soft-thresholding), support detection, and a support-restricted
//! least-squares refit.

use alloc::vec::Vec;

use crate::float;
use crate::linalg::{self, LinalgError, Matrix, SvdFactors};

/// Entries of the thresholded vector at or below this magnitude count as
/// zero when detecting the support. The shrinkage step produces exact zeros
/// in exact arithmetic; the cushion only absorbs least-squares round-off and
/// sits far below any plausible `lambda`.
pub const SUPPORT_CUSHION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EstimatorError {
    #[error("epsilon must lie in (0, 1), got {epsilon}")]
    InvalidEpsilon { epsilon: f64 },
    #[error("lambda override must be positive and finite, got {lambda}")]
    InvalidLambdaOverride { lambda: f64 },
    #[error("noise std scaling must be positive and finite, got {value}")]
    InvalidNoiseScaling { value: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which estimator produced a [`SparseEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Lse,
    LpRelse,
    OracleLse,
    Lasso,
    Adalasso,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Lse,
        Method::LpRelse,
        Method::OracleLse,
        Method::Lasso,
        Method::Adalasso,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Method::Lse => "LSE",
            Method::LpRelse => "LP_RELSE",
            Method::OracleLse => "ORACLE_LSE",
            Method::Lasso => "LASSO",
            Method::Adalasso => "ADALASSO",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Method::ALL.iter().copied().find(|m| m.tag() == s)
    }
}

impl core::fmt::Display for Method {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Tuning for one pipeline run.
///
/// `lambda` resolves as `lambda_override` when present, otherwise
/// `sqrt(2n / N^(1-epsilon))`; either value is then multiplied by
/// `noise_std_scaling` when that is set. The scaling exists for problems
/// whose noise standard deviation is known to differ from 1 (the schedule
/// assumes unit variance; rescale accordingly).
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    pub epsilon: f64,
    pub lambda_override: Option<f64>,
    pub noise_std_scaling: Option<f64>,
}

impl EstimatorConfig {
    pub fn with_epsilon(epsilon: f64) -> Self {
        EstimatorConfig {
            epsilon,
            lambda_override: None,
            noise_std_scaling: None,
        }
    }

    pub fn with_lambda(lambda: f64) -> Self {
        EstimatorConfig {
            epsilon: f64::NAN,
            lambda_override: Some(lambda),
            noise_std_scaling: None,
        }
    }

    /// The lambda this configuration yields for an `n`-column, `n_obs`-row
    /// problem.
    pub fn resolve_lambda(&self, n: usize, n_obs: usize) -> Result<f64, EstimatorError> {
        let base = match self.lambda_override {
            Some(l) => {
                if !(l.is_finite() && l > 0.0) {
                    return Err(EstimatorError::InvalidLambdaOverride { lambda: l });
                }
                l
            }
            None => compute_lambda(n, n_obs, self.epsilon)?,
        };
        match self.noise_std_scaling {
            Some(c) if !(c.is_finite() && c > 0.0) => {
                Err(EstimatorError::InvalidNoiseScaling { value: c })
            }
            Some(c) => Ok(base * c),
            None => Ok(base),
        }
    }
}

/// Every intermediate of one pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineTrace {
    pub x_ls: Vec<f64>,
    pub lambda: f64,
    pub x_lp: Vec<f64>,
    /// 0-based support of `x_lp`, ascending.
    pub support_lp: Vec<usize>,
    pub x_rels: Vec<f64>,
    /// True when the refit hit a rank-deficient column submatrix.
    pub rank_warning: bool,
}

impl PipelineTrace {
    pub fn to_estimate(&self) -> SparseEstimate {
        SparseEstimate {
            x: self.x_rels.clone(),
            support: self.support_lp.clone(),
            method: Method::LpRelse,
        }
    }
}

/// Uniform result container across estimators. `x` is zero off `support`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseEstimate {
    pub x: Vec<f64>,
    /// 0-based indices, ascending.
    pub support: Vec<usize>,
    pub method: Method,
}

/// The threshold schedule `lambda = sqrt(2n / N^(1-epsilon))`.
pub fn compute_lambda(n: usize, n_obs: usize, epsilon: f64) -> Result<f64, EstimatorError> {
    assert!(n >= 1 && n_obs >= 1, "compute_lambda requires n, N >= 1");
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(EstimatorError::InvalidEpsilon { epsilon });
    }
    Ok(float::sqrt(
        2.0 * n as f64 * float::powf(n_obs as f64, epsilon - 1.0),
    ))
}

/// Componentwise shrinkage: `0` when `|x_i| <= lambda`, else `x_i` moved
/// toward zero by `lambda`. This is the minimizer of `|x|_1` over the box
/// `|x - input|_inf <= lambda` (ties `|x_i| = lambda` map to zero).
pub fn soft_threshold(x: &[f64], lambda: f64) -> Vec<f64> {
    assert!(lambda >= 0.0 && lambda.is_finite(), "lambda must be >= 0");
    x.iter()
        .map(|&v| {
            if float::abs(v) <= lambda {
                0.0
            } else if v > 0.0 {
                v - lambda
            } else {
                v + lambda
            }
        })
        .collect()
}

/// Indices with magnitude above [`SUPPORT_CUSHION`], 0-based ascending.
pub fn detect_support(x: &[f64]) -> Vec<usize> {
    x.iter()
        .enumerate()
        .filter(|(_, &v)| float::abs(v) > SUPPORT_CUSHION)
        .map(|(i, _)| i)
        .collect()
}

/// Run the full pipeline, computing the SVD of `a` internally.
pub fn estimate(
    a: &Matrix,
    y: &[f64],
    config: &EstimatorConfig,
) -> Result<PipelineTrace, EstimatorError> {
    let svd = linalg::svd_thin(a)?;
    estimate_with_svd(a, &svd, y, config)
}

/// Run the full pipeline with a precomputed SVD of `a` (the factors of the
/// same matrix; callers that evaluate several estimators per problem share
/// one decomposition this way).
pub fn estimate_with_svd(
    a: &Matrix,
    svd: &SvdFactors,
    y: &[f64],
    config: &EstimatorConfig,
) -> Result<PipelineTrace, EstimatorError> {
    let x_ls = linalg::least_squares(svd, y)?;
    let lambda = config.resolve_lambda(a.cols(), a.rows())?;
    let x_lp = soft_threshold(&x_ls, lambda);
    let support_lp = detect_support(&x_lp);
    let solve = linalg::subset_least_squares(a, y, &support_lp)?;
    Ok(PipelineTrace {
        x_ls,
        lambda,
        x_lp,
        support_lp,
        x_rels: solve.x,
        rank_warning: solve.rank_warning,
    })
}

/// Least squares restricted to the *true* support: the estimator the
/// pipeline must eventually coincide with.
pub fn oracle_lse(
    a: &Matrix,
    y: &[f64],
    true_support: &[usize],
) -> Result<SparseEstimate, EstimatorError> {
    let solve = linalg::subset_least_squares(a, y, true_support)?;
    let mut support = true_support.to_vec();
    support.sort_unstable();
    support.dedup();
    Ok(SparseEstimate {
        x: solve.x,
        support,
        method: Method::OracleLse,
    })
}

/// The shrinkage solution for every lambda in `lambda_grid` (which must be
/// ascending and nonnegative). Each coordinate is piecewise linear in
/// lambda and, once it reaches zero, stays there.
pub fn solution_path(x_ls: &[f64], lambda_grid: &[f64]) -> Vec<Vec<f64>> {
    assert!(
        lambda_grid.windows(2).all(|w| w[0] <= w[1]),
        "lambda grid must be ascending"
    );
    lambda_grid
        .iter()
        .map(|&l| soft_threshold(x_ls, l))
        .collect()
}
