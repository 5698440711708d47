//! Plain numeric CSV formats.
//!
//! Matrices are one row per line, comma-separated, no header; vectors are
//! single-column CSV. Every float is written with 17 significant digits so
//! a read-back reproduces the bits exactly.
//!
//! A problem bundle is a directory holding `A.csv`, `y.csv`, `xtrue.csv`,
//! and `meta.csv` (key,value lines for the seed and noise variance).
//! `A.csv` and `y.csv` are required on import; the rest are optional.
//! Support indices in output files are 1-based, matching the math
//! convention; the library API is 0-based.

use std::fs;
use std::path::Path;

use sparsels_core::datagen::Problem;
use sparsels_core::linalg::Matrix;

use crate::error::CliError;

pub const BUNDLE_DESIGN: &str = "A.csv";
pub const BUNDLE_OBSERVATIONS: &str = "y.csv";
pub const BUNDLE_TRUTH: &str = "xtrue.csv";
pub const BUNDLE_META: &str = "meta.csv";

/// 17 significant digits: enough for exact f64 round-trips.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn data_err(path: &Path, detail: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{}: {detail}", path.display()))
}

pub fn write_matrix_csv(path: &Path, m: &Matrix) -> Result<(), CliError> {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row = m.row(i);
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&fmt_float(*v));
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| data_err(path, e))
}

pub fn read_matrix_csv(path: &Path) -> Result<Matrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| data_err(path, e))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split(',') {
            let v: f64 = tok.trim().parse().map_err(|_| {
                data_err(path, format!("line {}: invalid number {tok:?}", idx + 1))
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(data_err(path, "no rows"));
    }
    let cols = rows[0].len();
    for (idx, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(data_err(
                path,
                format!("line {}: expected {cols} fields, got {}", idx + 1, row.len()),
            ));
        }
    }
    Matrix::from_rows(&rows).map_err(|e| data_err(path, e))
}

pub fn write_vector_csv(path: &Path, v: &[f64]) -> Result<(), CliError> {
    let mut out = String::new();
    for x in v {
        out.push_str(&fmt_float(*x));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| data_err(path, e))
}

pub fn read_vector_csv(path: &Path) -> Result<Vec<f64>, CliError> {
    let m = read_matrix_csv(path)?;
    if m.cols() != 1 {
        return Err(data_err(
            path,
            format!("expected a single-column vector, got {} columns", m.cols()),
        ));
    }
    Ok(m.col(0))
}

/// 1-based index list, one per line.
pub fn write_support_csv(path: &Path, support: &[usize]) -> Result<(), CliError> {
    let mut out = String::new();
    for &i in support {
        out.push_str(&(i + 1).to_string());
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| data_err(path, e))
}

pub fn read_support_csv(path: &Path) -> Result<Vec<usize>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| data_err(path, e))?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: usize = line.parse().map_err(|_| {
            data_err(path, format!("line {}: invalid index {line:?}", idx + 1))
        })?;
        if v == 0 {
            return Err(data_err(path, "support indices are 1-based"));
        }
        out.push(v - 1);
    }
    Ok(out)
}

/// Imported bundle contents; optional pieces are `None` when absent.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemBundle {
    pub a: Matrix,
    pub y: Vec<f64>,
    pub x_true: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub noise_var: Option<f64>,
}

pub fn write_problem_bundle(dir: &Path, problem: &Problem) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| data_err(dir, e))?;
    write_matrix_csv(&dir.join(BUNDLE_DESIGN), &problem.a)?;
    write_vector_csv(&dir.join(BUNDLE_OBSERVATIONS), &problem.y)?;
    write_vector_csv(&dir.join(BUNDLE_TRUTH), &problem.x_true)?;
    let meta = format!(
        "seed,{}\nnoise_var,{}\n",
        problem.seed,
        fmt_float(problem.noise_var)
    );
    fs::write(dir.join(BUNDLE_META), meta).map_err(|e| data_err(dir, e))
}

pub fn read_problem_bundle(dir: &Path) -> Result<ProblemBundle, CliError> {
    let a = read_matrix_csv(&dir.join(BUNDLE_DESIGN))?;
    let y = read_vector_csv(&dir.join(BUNDLE_OBSERVATIONS))?;
    if y.len() != a.rows() {
        return Err(data_err(
            dir,
            format!("y has {} entries but A has {} rows", y.len(), a.rows()),
        ));
    }
    let truth_path = dir.join(BUNDLE_TRUTH);
    let x_true = if truth_path.exists() {
        Some(read_vector_csv(&truth_path)?)
    } else {
        None
    };
    let mut seed = None;
    let mut noise_var = None;
    let meta_path = dir.join(BUNDLE_META);
    if meta_path.exists() {
        let text = fs::read_to_string(&meta_path).map_err(|e| data_err(&meta_path, e))?;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(',').ok_or_else(|| {
                data_err(&meta_path, format!("line {}: expected key,value", idx + 1))
            })?;
            match key.trim() {
                "seed" => {
                    seed = Some(value.trim().parse().map_err(|_| {
                        data_err(&meta_path, format!("line {}: invalid seed", idx + 1))
                    })?)
                }
                "noise_var" => {
                    noise_var = Some(value.trim().parse().map_err(|_| {
                        data_err(&meta_path, format!("line {}: invalid noise_var", idx + 1))
                    })?)
                }
                _ => {}
            }
        }
    }
    Ok(ProblemBundle {
        a,
        y,
        x_true,
        seed,
        noise_var,
    })
}
