//! Comparison estimators: LASSO by cyclic coordinate descent and the
//! adaptive LASSO (LSE-derived weights, then a weighted LASSO).
//!
//! The objective is `0.5 * |y - A x|_2^2 + reg_param * sum_i w_i |x_i|`.
//! Tuning rules quoted elsewhere in this crate (`sqrt(N)` for plain LASSO,
//! `N^(1/2 - gamma/4)` for ADALASSO) are applied under this one-half
//! convention.

use alloc::vec;
use alloc::vec::Vec;

use crate::estimator::{EstimatorError, Method, SparseEstimate};
use crate::float;
use crate::linalg::{self, dot, Matrix};

/// Adaptive weights are capped at this value; a capped coordinate is
/// effectively excluded from the fit.
pub const WEIGHT_CAP: f64 = 1e12;

/// Coordinates at or below this magnitude after convergence are snapped to
/// exact zero and excluded from the reported support.
pub const LASSO_SUPPORT_CUSHION: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BaselineError {
    #[error("invalid lasso configuration: {reason}")]
    InvalidConfig { reason: &'static str },
    #[error("column {index} of the design matrix is identically zero")]
    ZeroColumn { index: usize },
    #[error("coordinate descent did not converge within {sweeps} sweeps (last change {last_change:.3e})")]
    NoConvergence {
        sweeps: usize,
        last_change: f64,
        /// Iterate at the moment the sweep budget ran out.
        last_iterate: Vec<f64>,
    },
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
}

/// Tuning for [`lasso_cd`]. `weights` of `None` means the unweighted
/// penalty (all ones).
#[derive(Debug, Clone, PartialEq)]
pub struct LassoConfig {
    pub reg_param: f64,
    pub weights: Option<Vec<f64>>,
    pub max_iter: usize,
    pub tol: f64,
}

impl LassoConfig {
    /// Defaults: cyclic sweeps, `tol = 1e-10` on the largest coordinate
    /// change per sweep, at most `1e5` sweeps.
    pub fn new(reg_param: f64) -> Self {
        LassoConfig {
            reg_param,
            weights: None,
            max_iter: 100_000,
            tol: 1e-10,
        }
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Self {
        self.weights = Some(weights);
        self
    }

    fn validate(&self, n: usize) -> Result<(), BaselineError> {
        if !(self.reg_param >= 0.0 && self.reg_param.is_finite()) {
            return Err(BaselineError::InvalidConfig {
                reason: "reg_param must be finite and nonnegative",
            });
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(BaselineError::InvalidConfig {
                reason: "tol must be positive",
            });
        }
        if self.max_iter == 0 {
            return Err(BaselineError::InvalidConfig {
                reason: "max_iter must be at least 1",
            });
        }
        if let Some(w) = &self.weights {
            if w.len() != n {
                return Err(BaselineError::InvalidConfig {
                    reason: "weight vector length must match the column count",
                });
            }
            if !w.iter().all(|&wi| wi > 0.0 && wi.is_finite()) {
                return Err(BaselineError::InvalidConfig {
                    reason: "weights must be positive and finite",
                });
            }
        }
        Ok(())
    }
}

/// Weighted LASSO by cyclic coordinate descent.
///
/// Each coordinate update solves its scalar subproblem exactly via
/// soft-thresholding; the residual is maintained incrementally. Converged
/// when the largest coordinate change in a sweep is at most `config.tol`.
pub fn lasso_cd(a: &Matrix, y: &[f64], config: &LassoConfig) -> Result<SparseEstimate, BaselineError> {
    let n = a.cols();
    config.validate(n)?;
    assert_eq!(y.len(), a.rows(), "y length must match row count");

    let cols: Vec<Vec<f64>> = (0..n).map(|j| a.col(j)).collect();
    let col_sq: Vec<f64> = cols.iter().map(|c| dot(c, c)).collect();
    for (j, &c) in col_sq.iter().enumerate() {
        if c == 0.0 {
            return Err(BaselineError::ZeroColumn { index: j });
        }
    }
    let ones;
    let weights: &[f64] = match &config.weights {
        Some(w) => w,
        None => {
            ones = vec![1.0; n];
            &ones
        }
    };

    let mut x = vec![0.0; n];
    let mut r = y.to_vec();
    let mut last_change = f64::INFINITY;
    let mut converged = false;
    for _ in 0..config.max_iter {
        let mut max_delta: f64 = 0.0;
        for i in 0..n {
            let rho = dot(&cols[i], &r) + col_sq[i] * x[i];
            let thresh = config.reg_param * weights[i];
            let xi_new = if float::abs(rho) <= thresh {
                0.0
            } else if rho > 0.0 {
                (rho - thresh) / col_sq[i]
            } else {
                (rho + thresh) / col_sq[i]
            };
            let delta = xi_new - x[i];
            if delta != 0.0 {
                for (ri, &ci) in r.iter_mut().zip(&cols[i]) {
                    *ri -= delta * ci;
                }
                x[i] = xi_new;
            }
            max_delta = max_delta.max(float::abs(delta));
        }
        last_change = max_delta;
        if max_delta <= config.tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(BaselineError::NoConvergence {
            sweeps: config.max_iter,
            last_change,
            last_iterate: x,
        });
    }

    for xi in x.iter_mut() {
        if float::abs(*xi) <= LASSO_SUPPORT_CUSHION {
            *xi = 0.0;
        }
    }
    let support = x
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0.0)
        .map(|(i, _)| i)
        .collect();
    Ok(SparseEstimate {
        x,
        support,
        method: Method::Lasso,
    })
}

/// The regularization level `N^(1/2 - gamma/4)` used by [`adalasso`].
pub fn adalasso_reg_param(gamma: f64, n_obs: usize) -> f64 {
    float::powf(n_obs as f64, 0.5 - gamma / 4.0)
}

/// Adaptive LASSO: least squares first, weights `1 / |x_ls_i|^gamma`
/// (capped at [`WEIGHT_CAP`]), then a weighted LASSO with regularization
/// `N^(1/2 - gamma/4)`.
///
/// `n_obs` is the observation count the tuning rule is evaluated at; it is
/// normally `a.rows()`, but cross-validation callers may tune to a
/// different count than the fold in hand.
pub fn adalasso(
    a: &Matrix,
    y: &[f64],
    gamma: f64,
    n_obs: usize,
) -> Result<SparseEstimate, BaselineError> {
    assert!(gamma > 0.0 && gamma.is_finite(), "gamma must be positive");
    let svd = linalg::svd_thin(a).map_err(EstimatorError::from)?;
    let x_ls = linalg::least_squares(&svd, y).map_err(EstimatorError::from)?;
    let weights: Vec<f64> = x_ls
        .iter()
        .map(|&v| {
            let mag = float::powf(float::abs(v), gamma);
            if mag == 0.0 {
                WEIGHT_CAP
            } else {
                (1.0 / mag).min(WEIGHT_CAP)
            }
        })
        .collect();
    let config = LassoConfig::new(adalasso_reg_param(gamma, n_obs)).with_weights(weights);
    let fit = lasso_cd(a, y, &config)?;
    Ok(SparseEstimate {
        method: Method::Adalasso,
        ..fit
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::soft_threshold;
    use crate::linalg::{least_squares, norm_inf, svd_thin};

    fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// Orthonormal columns: rotations of padded identity blocks.
    fn orthonormal_design(rows: usize, cols: usize, seed: u64) -> Matrix {
        // Start from deterministic pseudo-random data and orthonormalize.
        let mut state = seed.wrapping_add(1);
        let raw = Matrix::from_fn(rows, cols, |_, _| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        })
        .unwrap();
        let mut cols_v: Vec<Vec<f64>> = (0..cols).map(|j| raw.col(j)).collect();
        for j in 0..cols {
            for _ in 0..2 {
                for k in 0..j {
                    let proj = dot(&cols_v[j], &cols_v[k]);
                    let prev = cols_v[k].clone();
                    for (vj, pk) in cols_v[j].iter_mut().zip(&prev) {
                        *vj -= proj * pk;
                    }
                }
            }
            let nrm = crate::linalg::norm2(&cols_v[j]);
            for v in cols_v[j].iter_mut() {
                *v /= nrm;
            }
        }
        Matrix::from_fn(rows, cols, |i, j| cols_v[j][i]).unwrap()
    }

    fn lasso_objective(a: &Matrix, y: &[f64], x: &[f64], reg: f64, w: &[f64]) -> f64 {
        let ax = a.matvec(x);
        let rss: f64 = y.iter().zip(&ax).map(|(yi, ai)| (yi - ai).powi(2)).sum();
        let pen: f64 = x.iter().zip(w).map(|(xi, wi)| wi * xi.abs()).sum();
        0.5 * rss + reg * pen
    }

    #[test]
    fn orthonormal_design_closed_form() {
        let a = orthonormal_design(30, 5, 3);
        let y: Vec<f64> = (0..30).map(|i| ((i as f64) * 0.61).sin() * 2.0).collect();
        let reg = 0.3;
        let fit = lasso_cd(&a, &y, &LassoConfig::new(reg)).unwrap();
        let closed = soft_threshold(&a.tr_matvec(&y), reg);
        assert!(max_abs_diff(&fit.x, &closed) <= 1e-8);
    }

    fn lcg_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        Matrix::from_fn(rows, cols, |_, _| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        })
        .unwrap()
    }

    #[test]
    fn zero_reg_matches_lse() {
        let a = lcg_matrix(20, 4, 13);
        let y: Vec<f64> = (0..20).map(|i| (i as f64 * 0.8).cos()).collect();
        let fit = lasso_cd(&a, &y, &LassoConfig::new(0.0)).unwrap();
        let svd = svd_thin(&a).unwrap();
        let x_ls = least_squares(&svd, &y).unwrap();
        assert!(max_abs_diff(&fit.x, &x_ls) <= 1e-7);
    }

    #[test]
    fn heavy_reg_kills_everything() {
        let a = Matrix::from_fn(15, 3, |i, j| ((i * 2 + j) as f64 * 0.7).cos()).unwrap();
        let y: Vec<f64> = (0..15).map(|i| (i as f64 * 0.3).sin()).collect();
        let reg = norm_inf(&a.tr_matvec(&y)) * 1.0001;
        let fit = lasso_cd(&a, &y, &LassoConfig::new(reg)).unwrap();
        assert_eq!(fit.x, vec![0.0; 3]);
        assert!(fit.support.is_empty());
    }

    #[test]
    fn kkt_conditions_at_solution() {
        let a = lcg_matrix(40, 6, 29);
        let y: Vec<f64> = (0..40).map(|i| (i as f64 * 0.17).cos() * 3.0).collect();
        let reg = 2.0;
        let fit = lasso_cd(&a, &y, &LassoConfig::new(reg)).unwrap();
        let ax = a.matvec(&fit.x);
        let r: Vec<f64> = y.iter().zip(&ax).map(|(yi, ai)| yi - ai).collect();
        let g = a.tr_matvec(&r);
        let kkt_tol = 1e-6;
        for (i, &xi) in fit.x.iter().enumerate() {
            if xi == 0.0 {
                assert!(
                    g[i].abs() <= reg + kkt_tol,
                    "zero coordinate {i} violates KKT: |g| = {}",
                    g[i].abs()
                );
            } else {
                let target = xi.signum() * reg;
                assert!(
                    (g[i] - target).abs() <= kkt_tol,
                    "active coordinate {i} violates KKT: g = {}, want {target}",
                    g[i]
                );
            }
        }
    }

    #[test]
    fn objective_non_increasing_across_sweeps() {
        let a = lcg_matrix(25, 5, 17);
        let y: Vec<f64> = (0..25).map(|i| (i as f64 * 0.51).cos() * 2.0).collect();
        let reg = 1.0;
        let w = vec![1.0; 5];
        let mut prev = f64::INFINITY;
        for sweeps in 1..=10 {
            let mut cfg = LassoConfig::new(reg);
            cfg.max_iter = sweeps;
            cfg.tol = 0.0_f64.next_up();
            let x = match lasso_cd(&a, &y, &cfg) {
                Ok(fit) => fit.x,
                Err(BaselineError::NoConvergence { last_iterate, .. }) => last_iterate,
                Err(e) => panic!("unexpected error {e}"),
            };
            let obj = lasso_objective(&a, &y, &x, reg, &w);
            assert!(
                obj <= prev + 1e-12,
                "objective rose from {prev} to {obj} at sweep {sweeps}"
            );
            prev = obj;
        }
    }

    #[test]
    fn convergence_error_carries_iterate() {
        let a = Matrix::from_fn(12, 3, |i, j| ((i + j) as f64 * 0.9).sin() + 0.4).unwrap();
        let y: Vec<f64> = (0..12).map(|i| i as f64 * 0.2).collect();
        let mut cfg = LassoConfig::new(0.1);
        cfg.max_iter = 1;
        cfg.tol = 1e-300;
        match lasso_cd(&a, &y, &cfg) {
            Err(BaselineError::NoConvergence { last_iterate, .. }) => {
                assert_eq!(last_iterate.len(), 3);
                assert!(last_iterate.iter().any(|&v| v != 0.0));
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn zero_column_rejected() {
        let a = Matrix::from_fn(10, 3, |i, j| if j == 1 { 0.0 } else { (i + j) as f64 + 1.0 })
            .unwrap();
        let y = vec![1.0; 10];
        assert!(matches!(
            lasso_cd(&a, &y, &LassoConfig::new(0.5)),
            Err(BaselineError::ZeroColumn { index: 1 })
        ));
    }

    #[test]
    fn adalasso_recovers_support_on_clean_data() {
        // Strong signal, mild tuning: support must come out exact.
        let a = orthonormal_design(60, 4, 9).scale(3.0);
        let x0 = [5.0, 0.0, -4.0, 0.0];
        let y = a.matvec(&x0);
        let fit = adalasso(&a, &y, 1.0, 60).unwrap();
        assert_eq!(fit.support, vec![0, 2]);
        assert_eq!(fit.method, Method::Adalasso);
    }

    #[test]
    fn adalasso_caps_weight_on_exact_zero_lse() {
        // y orthogonal to column 1 makes its LSE coefficient exactly zero,
        // so the adaptive weight hits the cap and the coordinate is forced
        // to stay at zero.
        let a = Matrix::from_fn(8, 2, |i, j| {
            if j == 0 {
                if i == 0 { 1.0 } else { 0.0 }
            } else {
                if i == 1 { 1.0 } else { 0.0 }
            }
        })
        .unwrap();
        let y: Vec<f64> = (0..8).map(|i| if i == 0 { 4.0 } else { 0.0 }).collect();
        let fit = adalasso(&a, &y, 1.0, 8).unwrap();
        assert_eq!(fit.x[1], 0.0);
        assert_eq!(fit.support, vec![0]);
    }
}
