//! Dense linear-algebra substrate: row-major matrices, thin SVD, SVD-backed
//! least squares, column-subset pseudo-inverse solves, and the spectral
//! richness certificate.
//!
//! Singular values are stored in **ascending** order (`sigma[0]` is the
//! smallest), matching the `sigma_1 <= ... <= sigma_n` indexing used
//! throughout the analysis here. Most SVD libraries sort descending, so
//! callers porting code from elsewhere should mind the convention.
//!
//! Every solve routes through the SVD rather than the normal equations; the
//! normal equations appear only as an independent oracle in the test suite.

use alloc::vec;
use alloc::vec::Vec;

use crate::float;

/// Relative rank tolerance: `sigma_i <= RANK_TOL * sigma_max` is treated as
/// a zero singular value.
pub const RANK_TOL: f64 = 1e-10;

const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("non-finite entry at row {row}, column {col}")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("thin SVD requires rows >= cols, got {rows}x{cols}")]
    NotTall { rows: usize, cols: usize },
    #[error("SVD did not converge within {sweeps} Jacobi sweeps")]
    NoConvergence { sweeps: usize },
    #[error("rank-deficient system: singular value {sigma:.3e} at index {index} below tolerance")]
    RankDeficient { index: usize, sigma: f64 },
    #[error("column index {index} out of bounds for matrix with {cols} columns")]
    ColumnOutOfBounds { index: usize, cols: usize },
}

/// Dense real matrix, row-major storage. All entries are finite by
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        let m = Matrix { rows, cols, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        if rows.is_empty() {
            return Err(LinalgError::EmptyMatrix);
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Matrix::new(rows.len(), cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    fn check_finite(&self) -> Result<(), LinalgError> {
        for (k, v) in self.data.iter().enumerate() {
            if !v.is_finite() {
                return Err(LinalgError::NonFiniteEntry {
                    row: k / self.cols,
                    col: k % self.cols,
                });
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// `A x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matvec length mismatch");
        self.data
            .chunks_exact(self.cols)
            .map(|row| dot(row, x))
            .collect()
    }

    /// `A^T y`.
    pub fn tr_matvec(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.rows, "tr_matvec length mismatch");
        let mut out = vec![0.0; self.cols];
        for (row, &yi) in self.data.chunks_exact(self.cols).zip(y) {
            for (o, &a) in out.iter_mut().zip(row) {
                *o += a * yi;
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Columns of `self` indexed by `support`, in the given order.
    pub fn column_subset(&self, support: &[usize]) -> Result<Matrix, LinalgError> {
        for &j in support {
            if j >= self.cols {
                return Err(LinalgError::ColumnOutOfBounds {
                    index: j,
                    cols: self.cols,
                });
            }
        }
        if support.is_empty() {
            return Err(LinalgError::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(self.rows * support.len());
        for i in 0..self.rows {
            for &j in support {
                data.push(self.get(i, j));
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: support.len(),
            data,
        })
    }

    /// Rows of `self` indexed by `rows`, in the given order.
    pub fn row_subset(&self, rows: &[usize]) -> Result<Matrix, LinalgError> {
        if rows.is_empty() {
            return Err(LinalgError::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            if i >= self.rows {
                return Err(LinalgError::ColumnOutOfBounds {
                    index: i,
                    cols: self.rows,
                });
            }
            data.extend_from_slice(self.row(i));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        float::sqrt(self.data.iter().map(|v| v * v).sum())
    }

    pub fn scale(&self, alpha: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| alpha * v).collect(),
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    float::sqrt(dot(a, a))
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, &v| m.max(float::abs(v)))
}

/// Thin SVD `A = U diag(sigma) V^T` with `U` of size `N x n`, `sigma`
/// ascending, and `V` of size `n x n`.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    u: Matrix,
    sigma: Vec<f64>,
    v: Matrix,
}

impl SvdFactors {
    pub fn u(&self) -> &Matrix {
        &self.u
    }

    /// Singular values, ascending.
    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn v(&self) -> &Matrix {
        &self.v
    }

    pub fn n_rows(&self) -> usize {
        self.u.rows
    }

    pub fn n_cols(&self) -> usize {
        self.sigma.len()
    }

    /// Smallest singular value (the `sigma` used in the tail bounds).
    pub fn sigma_min(&self) -> f64 {
        self.sigma[0]
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma[self.sigma.len() - 1]
    }

    /// True when no singular value falls below the relative rank tolerance.
    pub fn is_full_rank(&self) -> bool {
        self.sigma_min() > RANK_TOL * self.sigma_max()
    }

    #[cfg(test)]
    pub(crate) fn from_parts(u: Matrix, sigma: Vec<f64>, v: Matrix) -> Self {
        SvdFactors { u, sigma, v }
    }
}

/// Spectral richness certificate: `c1_hat = sigma_min / sqrt(N)` and
/// `c2_hat = sigma_max / sqrt(N)`. A matrix family is "sufficiently rich"
/// when these stay bounded away from 0 and infinity as `N` grows; this
/// reports the per-`N` constants only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RichnessCertificate {
    pub c1_hat: f64,
    pub c2_hat: f64,
    pub full_rank: bool,
}

/// Thin SVD of a tall matrix via cyclic one-sided Jacobi rotations.
///
/// Rotations are applied to column pairs of a working copy of `A` until all
/// columns are mutually orthogonal; their norms are the singular values and
/// the accumulated rotations form `V`. Zero-norm columns of the worked
/// matrix are replaced by an orthonormal completion so `U^T U = I` holds
/// even for rank-deficient input.
pub fn svd_thin(a: &Matrix) -> Result<SvdFactors, LinalgError> {
    let (m, n) = (a.rows, a.cols);
    if m < n {
        return Err(LinalgError::NotTall { rows: m, cols: n });
    }

    // Column-major working copies: b holds the rotated columns of A,
    // v the accumulated right rotations.
    let mut b: Vec<Vec<f64>> = (0..n).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&b[p], &b[p]);
                let beta = dot(&b[q], &b[q]);
                let gamma = dot(&b[p], &b[q]);
                if gamma == 0.0 || float::abs(gamma) <= JACOBI_TOL * float::sqrt(alpha * beta) {
                    continue;
                }
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + float::sqrt(1.0 + zeta * zeta))
                } else {
                    -1.0 / (-zeta + float::sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / float::sqrt(1.0 + t * t);
                let s = c * t;
                rotate_pair(&mut b, p, q, c, s);
                rotate_pair(&mut v, p, q, c, s);
                rotated = true;
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        // One clean final pass: accept if every pair is orthogonal now.
        let ok = (0..n).all(|p| {
            ((p + 1)..n).all(|q| {
                let g = dot(&b[p], &b[q]);
                float::abs(g) <= JACOBI_TOL * norm2(&b[p]) * norm2(&b[q])
            })
        });
        if !ok {
            return Err(LinalgError::NoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = b.iter().map(|col| norm2(col)).collect();
    order.sort_by(|&i, &j| norms[i].partial_cmp(&norms[j]).expect("finite norms"));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let sigma_max = sigma[n - 1];

    // Normalize the nonzero columns first; zero-norm columns are completed
    // afterwards so they come out orthogonal to every kept direction.
    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        if sigma[k] > sigma_max * f64::EPSILON && sigma[k] > 0.0 {
            u_cols.push(b[j].iter().map(|x| x / sigma[k]).collect());
        } else {
            u_cols.push(Vec::new());
        }
    }
    for k in 0..n {
        if u_cols[k].is_empty() {
            let fill = complete_column(&u_cols, m);
            u_cols[k] = fill;
        }
    }

    let u = from_cols(m, &u_cols);
    let v_sorted: Vec<Vec<f64>> = order.iter().map(|&j| v[j].clone()).collect();
    let v = from_cols(n, &v_sorted);

    Ok(SvdFactors { u, sigma, v })
}

fn rotate_pair(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    // Split borrow: p < q always holds here.
    let (head, tail) = cols.split_at_mut(q);
    let bp = &mut head[p];
    let bq = &mut tail[0];
    for (xp, xq) in bp.iter_mut().zip(bq.iter_mut()) {
        let new_p = c * *xp - s * *xq;
        let new_q = s * *xp + c * *xq;
        *xp = new_p;
        *xq = new_q;
    }
}

fn complete_column(placed: &[Vec<f64>], m: usize) -> Vec<f64> {
    for cand in 0..m {
        let mut w = vec![0.0; m];
        w[cand] = 1.0;
        // Two Gram-Schmidt passes against the non-empty columns.
        for _ in 0..2 {
            for col in placed.iter().filter(|c| !c.is_empty()) {
                let proj = dot(&w, col);
                for (wi, ci) in w.iter_mut().zip(col) {
                    *wi -= proj * ci;
                }
            }
        }
        let nrm = norm2(&w);
        if nrm > 0.5 {
            for wi in w.iter_mut() {
                *wi /= nrm;
            }
            return w;
        }
    }
    unreachable!("orthonormal completion always exists for m >= n")
}

fn from_cols(rows: usize, cols: &[Vec<f64>]) -> Matrix {
    let n = cols.len();
    let mut m = Matrix::zeros(rows, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m.data[i * n + j] = v;
        }
    }
    m
}

/// Least-squares solve `x = V diag(1/sigma) U^T y` from precomputed factors.
///
/// Requires full column rank; the first singular value at or below the
/// relative tolerance is reported in the error.
pub fn least_squares(svd: &SvdFactors, y: &[f64]) -> Result<Vec<f64>, LinalgError> {
    if y.len() != svd.n_rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: svd.n_rows(),
            got: y.len(),
        });
    }
    let sigma_max = svd.sigma_max();
    for (i, &s) in svd.sigma.iter().enumerate() {
        if s <= RANK_TOL * sigma_max || s == 0.0 {
            return Err(LinalgError::RankDeficient { index: i, sigma: s });
        }
    }
    let mut t = svd.u.tr_matvec(y);
    for (ti, &s) in t.iter_mut().zip(&svd.sigma) {
        *ti /= s;
    }
    Ok(svd.v.matvec(&t))
}

/// Result of a support-restricted least-squares solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSolve {
    /// Full-length solution vector; exactly zero off the support.
    pub x: Vec<f64>,
    /// True when the column submatrix was rank-deficient and the solve fell
    /// back to a truncated pseudo-inverse.
    pub rank_warning: bool,
}

/// Least squares restricted to the columns of `a` indexed by `support`
/// (treated as a set: indices are sorted and deduplicated). Entries off the
/// support are exactly zero; the empty support yields the zero vector.
///
/// A rank-deficient column submatrix is solved via the truncated
/// pseudo-inverse and flagged instead of erroring, since the upstream
/// support detector can in principle hand over collinear columns.
pub fn subset_least_squares(
    a: &Matrix,
    y: &[f64],
    support: &[usize],
) -> Result<SubsetSolve, LinalgError> {
    if y.len() != a.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows,
            got: y.len(),
        });
    }
    let mut idx: Vec<usize> = support.to_vec();
    idx.sort_unstable();
    idx.dedup();
    for &j in &idx {
        if j >= a.cols {
            return Err(LinalgError::ColumnOutOfBounds {
                index: j,
                cols: a.cols,
            });
        }
    }
    if idx.is_empty() {
        return Ok(SubsetSolve {
            x: vec![0.0; a.cols],
            rank_warning: false,
        });
    }

    let sub = a.column_subset(&idx)?;
    let svd = svd_thin(&sub)?;
    let sigma_max = svd.sigma_max();
    let mut warning = false;
    let mut t = svd.u.tr_matvec(y);
    for (ti, &s) in t.iter_mut().zip(&svd.sigma) {
        if s > RANK_TOL * sigma_max && s > 0.0 {
            *ti /= s;
        } else {
            *ti = 0.0;
            warning = true;
        }
    }
    let x_sub = svd.v.matvec(&t);

    let mut x = vec![0.0; a.cols];
    for (&j, &v) in idx.iter().zip(&x_sub) {
        x[j] = v;
    }
    Ok(SubsetSolve {
        x,
        rank_warning: warning,
    })
}

/// Per-`N` richness constants from the singular values of an `n_rows`-row
/// design: `c1_hat = sigma_min / sqrt(N)`, `c2_hat = sigma_max / sqrt(N)`.
pub fn richness_certificate(svd: &SvdFactors, n_rows: usize) -> RichnessCertificate {
    let sqrt_n = float::sqrt(n_rows as f64);
    RichnessCertificate {
        c1_hat: svd.sigma_min() / sqrt_n,
        c2_hat: svd.sigma_max() / sqrt_n,
        full_rank: svd.is_full_rank(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!(
            (a - b).abs() <= tol,
            "expected {a} ~ {b} within {tol}, diff {}",
            (a - b).abs()
        );
    }

    fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// Deterministic pseudo-random values for small test fixtures; not a
    /// statistical RNG, just a stable scrambler.
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

    fn reconstruct(svd: &SvdFactors) -> Matrix {
        let n = svd.n_cols();
        let mut sv = Matrix::zeros(n, n);
        for i in 0..n {
            sv.set(i, i, svd.sigma()[i]);
        }
        svd.u().matmul(&sv).matmul(&svd.v().transpose())
    }

    fn orthonormality_defect(m: &Matrix) -> f64 {
        let g = m.transpose().matmul(m);
        let mut worst: f64 = 0.0;
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g.get(i, j) - target).abs());
            }
        }
        worst
    }

    /// Independent oracle: solve (A^T A) x = A^T y by Gaussian elimination
    /// with partial pivoting. Used only to cross-check the SVD route.
    fn normal_equations_solve(a: &Matrix, y: &[f64]) -> Vec<f64> {
        let n = a.cols();
        let g = a.transpose().matmul(a);
        let rhs = a.tr_matvec(y);
        let mut aug: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut row: Vec<f64> = (0..n).map(|j| g.get(i, j)).collect();
                row.push(rhs[i]);
                row
            })
            .collect();
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&i, &j| aug[i][k].abs().partial_cmp(&aug[j][k].abs()).unwrap())
                .unwrap();
            aug.swap(k, piv);
            let p = aug[k][k];
            assert!(p.abs() > 1e-12, "oracle hit a singular system");
            for i in (k + 1)..n {
                let f = aug[i][k] / p;
                for j in k..=n {
                    aug[i][j] -= f * aug[k][j];
                }
            }
        }
        let mut x = vec![0.0; n];
        for k in (0..n).rev() {
            let mut s = aug[k][n];
            for j in (k + 1)..n {
                s -= aug[k][j] * x[j];
            }
            x[k] = s / aug[k][k];
        }
        x
    }

    #[test]
    fn svd_identity_padded() {
        // I_3 padded with zero rows to 5x3.
        let a = Matrix::from_fn(5, 3, |i, j| if i == j { 1.0 } else { 0.0 }).unwrap();
        let svd = svd_thin(&a).unwrap();
        for &s in svd.sigma() {
            assert_close(s, 1.0, 1e-12);
        }
    }

    #[test]
    fn svd_diagonal_padded() {
        let a = Matrix::from_fn(4, 2, |i, j| {
            if i == 0 && j == 0 {
                2.0
            } else if i == 1 && j == 1 {
                3.0
            } else {
                0.0
            }
        })
        .unwrap();
        let svd = svd_thin(&a).unwrap();
        assert_close(svd.sigma()[0], 2.0, 1e-12);
        assert_close(svd.sigma()[1], 3.0, 1e-12);
    }

    #[test]
    fn svd_random_reconstruction() {
        let a = lcg_matrix(50, 8, 7);
        let svd = svd_thin(&a).unwrap();
        let rec = reconstruct(&svd);
        let mut diff = 0.0f64;
        for i in 0..50 {
            for j in 0..8 {
                diff += (rec.get(i, j) - a.get(i, j)).powi(2);
            }
        }
        let rel = diff.sqrt() / a.frobenius_norm();
        assert!(rel <= 1e-8, "relative reconstruction error {rel}");
        assert!(orthonormality_defect(svd.u()) <= 1e-10);
        assert!(orthonormality_defect(svd.v()) <= 1e-10);
        // Ascending order.
        for w in svd.sigma().windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn svd_rank_deficient_keeps_u_orthonormal() {
        // Two identical columns.
        let a = Matrix::from_fn(6, 3, |i, j| {
            let base = (i as f64 + 1.0) * 0.3;
            match j {
                0 => base,
                1 => base,
                _ => if i == 2 { 1.0 } else { 0.0 },
            }
        })
        .unwrap();
        let svd = svd_thin(&a).unwrap();
        assert!(svd.sigma()[0] <= 1e-12);
        assert!(orthonormality_defect(svd.u()) <= 1e-10);
        let rec = reconstruct(&svd);
        for i in 0..6 {
            for j in 0..3 {
                assert_close(rec.get(i, j), a.get(i, j), 1e-10);
            }
        }
    }

    #[test]
    fn svd_rejects_wide() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(
            svd_thin(&a),
            Err(LinalgError::NotTall { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn least_squares_orthonormal_design_exact() {
        let a = Matrix::from_fn(6, 3, |i, j| if i == j { 1.0 } else { 0.0 }).unwrap();
        let x_true = [1.0, 2.0, 3.0];
        let y = a.matvec(&x_true);
        let svd = svd_thin(&a).unwrap();
        let x = least_squares(&svd, &y).unwrap();
        assert!(max_abs_diff(&x, &x_true) <= 1e-10);
    }

    #[test]
    fn least_squares_zero_rhs() {
        let a = lcg_matrix(10, 4, 3);
        let svd = svd_thin(&a).unwrap();
        let x = least_squares(&svd, &[0.0; 10]).unwrap();
        assert!(norm_inf(&x) <= 1e-12);
    }

    #[test]
    fn least_squares_matches_normal_equations() {
        let a = lcg_matrix(40, 5, 11);
        let y: Vec<f64> = (0..40).map(|i| ((i * 7 % 13) as f64 - 6.0) * 0.25).collect();
        let svd = svd_thin(&a).unwrap();
        let x = least_squares(&svd, &y).unwrap();
        let x_ne = normal_equations_solve(&a, &y);
        assert!(
            max_abs_diff(&x, &x_ne) <= 1e-8,
            "SVD and normal-equations solves diverge: {:?}",
            max_abs_diff(&x, &x_ne)
        );
    }

    #[test]
    fn least_squares_residual_orthogonal() {
        let a = lcg_matrix(30, 6, 17);
        let y: Vec<f64> = (0..30).map(|i| (i as f64 * 0.37).sin()).collect();
        let svd = svd_thin(&a).unwrap();
        let x = least_squares(&svd, &y).unwrap();
        let ax = a.matvec(&x);
        let r: Vec<f64> = y.iter().zip(&ax).map(|(yi, axi)| yi - axi).collect();
        let g = a.tr_matvec(&r);
        let scale = norm_inf(&a.tr_matvec(&y)).max(1.0);
        assert!(norm_inf(&g) <= 1e-8 * scale);
    }

    #[test]
    fn least_squares_reports_rank_deficiency() {
        let a = Matrix::from_fn(5, 2, |i, j| if j == 0 { i as f64 } else { 2.0 * i as f64 })
            .unwrap();
        let svd = svd_thin(&a).unwrap();
        match least_squares(&svd, &[1.0, 0.0, 0.0, 0.0, 0.0]) {
            Err(LinalgError::RankDeficient { index, .. }) => assert_eq!(index, 0),
            other => panic!("expected rank deficiency, got {other:?}"),
        }
    }

    #[test]
    fn subset_full_support_matches_least_squares() {
        let a = lcg_matrix(20, 4, 23);
        let y: Vec<f64> = (0..20).map(|i| (i as f64 * 0.71).cos()).collect();
        let svd = svd_thin(&a).unwrap();
        let x_full = least_squares(&svd, &y).unwrap();
        let solve = subset_least_squares(&a, &y, &[0, 1, 2, 3]).unwrap();
        assert!(!solve.rank_warning);
        assert!(max_abs_diff(&solve.x, &x_full) <= 1e-10);
    }

    #[test]
    fn subset_empty_support_is_zero() {
        let a = lcg_matrix(10, 3, 5);
        let y = vec![1.0; 10];
        let solve = subset_least_squares(&a, &y, &[]).unwrap();
        assert_eq!(solve.x, vec![0.0; 3]);
        assert!(!solve.rank_warning);
    }

    #[test]
    fn subset_single_orthogonal_column() {
        let a = Matrix::from_rows(&[
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, 0.0],
        ])
        .unwrap();
        let solve = subset_least_squares(&a, &[3.0, 0.0, 0.0], &[0]).unwrap();
        assert!(max_abs_diff(&solve.x, &[3.0, 0.0]) <= 1e-12);
    }

    #[test]
    fn subset_collinear_columns_warn() {
        let a = Matrix::from_fn(8, 3, |i, j| match j {
            0 => (i + 1) as f64,
            1 => 2.0 * (i + 1) as f64,
            _ => if i == 0 { 1.0 } else { 0.0 },
        })
        .unwrap();
        let y: Vec<f64> = (0..8).map(|i| (i + 1) as f64).collect();
        let solve = subset_least_squares(&a, &y, &[0, 1]).unwrap();
        assert!(solve.rank_warning);
        // Truncated solve still reproduces y on the column space.
        let ax = a.matvec(&solve.x);
        assert!(max_abs_diff(&ax, &y) <= 1e-8);
    }

    #[test]
    fn subset_rejects_bad_index() {
        let a = lcg_matrix(6, 2, 9);
        assert!(matches!(
            subset_least_squares(&a, &[0.0; 6], &[5]),
            Err(LinalgError::ColumnOutOfBounds { index: 5, cols: 2 })
        ));
    }

    #[test]
    fn richness_unit_scaled() {
        let n_rows = 16;
        let a = Matrix::from_fn(n_rows, 3, |i, j| if i == j { 4.0 } else { 0.0 }).unwrap();
        let svd = svd_thin(&a).unwrap();
        let cert = richness_certificate(&svd, n_rows);
        assert_close(cert.c1_hat, 1.0, 1e-12);
        assert_close(cert.c2_hat, 1.0, 1e-12);
        assert!(cert.full_rank);
    }

    #[test]
    fn richness_flags_singular() {
        let u = Matrix::from_fn(4, 2, |i, j| if i == j { 1.0 } else { 0.0 }).unwrap();
        let v = Matrix::identity(2);
        let svd = SvdFactors::from_parts(u, vec![0.0, 2.0], v);
        let cert = richness_certificate(&svd, 4);
        assert!(!cert.full_rank);
        assert_eq!(cert.c1_hat, 0.0);
    }

    #[test]
    fn richness_scales_linearly() {
        let a = lcg_matrix(25, 4, 31);
        let alpha = 3.5;
        let svd_a = svd_thin(&a).unwrap();
        let svd_scaled = svd_thin(&a.scale(alpha)).unwrap();
        let c = richness_certificate(&svd_a, 25);
        let cs = richness_certificate(&svd_scaled, 25);
        assert_close(cs.c1_hat, alpha * c.c1_hat, 1e-10);
        assert_close(cs.c2_hat, alpha * c.c2_hat, 1e-10);
    }

    #[test]
    fn sigma_invariant_under_row_permutation() {
        let a = lcg_matrix(12, 5, 41);
        let perm: Vec<usize> = vec![11, 3, 7, 0, 9, 1, 5, 10, 2, 8, 4, 6];
        let b = a.row_subset(&perm).unwrap();
        let sa = svd_thin(&a).unwrap();
        let sb = svd_thin(&b).unwrap();
        assert!(max_abs_diff(sa.sigma(), sb.sigma()) <= 1e-10);
    }

    #[test]
    fn matrix_rejects_non_finite() {
        assert!(matches!(
            Matrix::new(1, 2, vec![1.0, f64::NAN]),
            Err(LinalgError::NonFiniteEntry { row: 0, col: 1 })
        ));
    }
}
