//! Seeded synthetic problem generators.
//!
//! Experiment 1: rows of the design are i.i.d. zero-mean Gaussians with
//! AR(1)-style covariance `0.5^|j1-j2|` (unit diagonal), truth
//! `(3, 1.5, 0, 0, 2, 0, 0, 0)`, unit-variance noise.
//!
//! Experiment 2: a sinusoid dictionary `A[i][k] = sin((i+1) * w_k * t_s)`
//! with ten integer frequencies sampled at `t_s = 0.1`, truth
//! `(1, 1, 1, 0, ..., 0)`, unit-variance noise.
//!
//! Reproducibility contract: all randomness flows through a ChaCha12 stream
//! keyed by the problem seed, and Gaussians come from the Box-Muller
//! transform (`z0 = sqrt(-2 ln u1) cos(2 pi u2)`, `z1 = ... sin(...)`,
//! `u1` drawn in `(0, 1]`). A problem consumes one stream: design entries
//! row-major first, then the noise vector. Same seed, same bits.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::float;
use crate::linalg::Matrix;

/// Experiment-1 ground truth.
pub const EXP1_X_TRUE: [f64; 8] = [3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0];
/// Experiment-2 ground truth (three unit sinusoids out of ten).
pub const EXP2_X_TRUE: [f64; 10] = [1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];

const EXP1_ROW_CORRELATION: f64 = 0.5;
const RESONANCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DatagenError {
    #[error("sample period must be positive and finite")]
    InvalidSamplePeriod,
    #[error("dictionary needs at least one frequency and one sample")]
    EmptyDictionary,
    #[error("frequency {value} at index {index} is not finite")]
    NonFiniteFrequency { index: usize, value: f64 },
    #[error("resonant frequency pair ({i}, {j}): (w_i {sign} w_j) * t_s is a multiple of 2 pi, so the Gram bound constants diverge")]
    ResonantPair { i: usize, j: usize, sign: char },
}

/// One synthetic instance of `y = A x_true + noise`.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub a: Matrix,
    pub y: Vec<f64>,
    pub x_true: Vec<f64>,
    /// 0-based support of `x_true`, ascending.
    pub true_support: Vec<usize>,
    /// The noise realization that produced `y`.
    pub noise: Vec<f64>,
    pub noise_var: f64,
    pub seed: u64,
}

impl Problem {
    pub fn n_obs(&self) -> usize {
        self.a.rows()
    }

    pub fn n_params(&self) -> usize {
        self.a.cols()
    }

    pub fn sparsity(&self) -> usize {
        self.true_support.len()
    }

    /// Smallest nonzero magnitude of the truth (`x_0` in the recovery
    /// bounds); `None` for an all-zero truth.
    pub fn x0_min(&self) -> Option<f64> {
        self.true_support
            .iter()
            .map(|&i| float::abs(self.x_true[i]))
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.min(v))))
    }
}

/// Deterministic standard-normal stream: ChaCha12 keyed by the seed,
/// Box-Muller transform, pair cache carried across calls.
pub struct NormalSource {
    rng: ChaCha12Rng,
    spare: Option<f64>,
}

impl NormalSource {
    pub fn from_seed(seed: u64) -> Self {
        NormalSource {
            rng: ChaCha12Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps the log finite; u2 in [0, 1).
        let u1 = 1.0 - self.rng.random::<f64>();
        let u2: f64 = self.rng.random();
        let r = float::sqrt(-2.0 * float::ln(u1));
        let theta = 2.0 * core::f64::consts::PI * u2;
        self.spare = Some(r * float::sin(theta));
        r * float::cos(theta)
    }

    pub fn fill(&mut self, out: &mut [f64]) {
        for v in out.iter_mut() {
            *v = self.next_normal();
        }
    }
}

/// Lower-triangular Cholesky factor of the Experiment-1 row covariance
/// `cov(j1, j2) = 0.5^|j1-j2|`.
fn exp1_covariance_factor(n: usize) -> Vec<Vec<f64>> {
    let cov =
        |i: usize, j: usize| float::powf(EXP1_ROW_CORRELATION, i.abs_diff(j) as f64);
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = cov(i, j);
            for (lik, ljk) in l[i].iter().zip(&l[j]).take(j) {
                s -= lik * ljk;
            }
            if i == j {
                debug_assert!(s > 0.0, "covariance must be positive definite");
                l[i][j] = float::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    l
}

/// Correlated Gaussian design with the fixed sparse truth of Experiment 1.
/// Requires `n_obs > 8`; deterministic in `seed`.
pub fn gen_experiment1(n_obs: usize, seed: u64) -> Problem {
    assert!(n_obs > 8, "experiment 1 needs more rows than its 8 columns");
    let n = EXP1_X_TRUE.len();
    let chol = exp1_covariance_factor(n);
    let mut source = NormalSource::from_seed(seed);

    let mut z = vec![0.0; n];
    let mut data = Vec::with_capacity(n_obs * n);
    for _ in 0..n_obs {
        source.fill(&mut z);
        for row in &chol {
            let v: f64 = row.iter().zip(&z).map(|(c, zk)| c * zk).sum();
            data.push(v);
        }
    }
    let a = Matrix::new(n_obs, n, data).expect("generated entries are finite");

    let mut noise = vec![0.0; n_obs];
    source.fill(&mut noise);

    finish_problem(a, EXP1_X_TRUE.to_vec(), noise, seed)
}

/// Sinusoid dictionary: `n_freqs` distinct angular frequencies sampled at a
/// fixed period. Construction rejects frequency pairs whose sum or
/// difference times the period is a multiple of `2 pi` (including
/// `2 w_i t_s` itself), since the Gram bound constants are undefined there.
#[derive(Debug, Clone, PartialEq)]
pub struct SinusoidDict {
    freqs: Vec<f64>,
    sample_period: f64,
    n_samples: usize,
}

impl SinusoidDict {
    pub fn new(freqs: Vec<f64>, sample_period: f64, n_samples: usize) -> Result<Self, DatagenError> {
        if !(sample_period > 0.0 && sample_period.is_finite()) {
            return Err(DatagenError::InvalidSamplePeriod);
        }
        if freqs.is_empty() || n_samples == 0 {
            return Err(DatagenError::EmptyDictionary);
        }
        for (i, &w) in freqs.iter().enumerate() {
            if !w.is_finite() {
                return Err(DatagenError::NonFiniteFrequency { index: i, value: w });
            }
        }
        // theta = 0 mod 2 pi  <=>  sin(theta / 2) = 0.
        let resonant = |theta: f64| float::abs(float::sin(theta / 2.0)) < RESONANCE_TOL;
        for i in 0..freqs.len() {
            for j in i..freqs.len() {
                if resonant((freqs[i] + freqs[j]) * sample_period) {
                    return Err(DatagenError::ResonantPair { i, j, sign: '+' });
                }
                if i != j && resonant((freqs[i] - freqs[j]) * sample_period) {
                    return Err(DatagenError::ResonantPair { i, j, sign: '-' });
                }
            }
        }
        Ok(SinusoidDict {
            freqs,
            sample_period,
            n_samples,
        })
    }

    pub fn n_freqs(&self) -> usize {
        self.freqs.len()
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn sample_period(&self) -> f64 {
        self.sample_period
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }
}

/// The Experiment-2 dictionary: ten frequencies `w_k = k`, period `0.1`.
pub fn experiment2_dict(n_samples: usize) -> SinusoidDict {
    let freqs = (1..=EXP2_X_TRUE.len()).map(|k| k as f64).collect();
    SinusoidDict::new(freqs, 0.1, n_samples).expect("the stock dictionary is non-resonant")
}

/// `A[i][k] = sin((i+1) * w_k * t_s)` for `i = 0..N`, `k = 0..n`.
pub fn build_sinusoid_matrix(dict: &SinusoidDict) -> Matrix {
    let n = dict.n_freqs();
    let mut data = Vec::with_capacity(dict.n_samples * n);
    for i in 1..=dict.n_samples {
        for &w in &dict.freqs {
            data.push(float::sin(i as f64 * w * dict.sample_period));
        }
    }
    Matrix::new(dict.n_samples, n, data).expect("sinusoid entries are finite")
}

/// Sinusoid-dictionary problem with the fixed truth of Experiment 2.
/// Requires `n_obs > 10`; deterministic in `seed`.
pub fn gen_experiment2(n_obs: usize, seed: u64) -> Problem {
    assert!(n_obs > 10, "experiment 2 needs more rows than its 10 columns");
    let dict = experiment2_dict(n_obs);
    let a = build_sinusoid_matrix(&dict);
    let mut source = NormalSource::from_seed(seed);
    let mut noise = vec![0.0; n_obs];
    source.fill(&mut noise);
    finish_problem(a, EXP2_X_TRUE.to_vec(), noise, seed)
}

fn finish_problem(a: Matrix, x_true: Vec<f64>, noise: Vec<f64>, seed: u64) -> Problem {
    let mut y = a.matvec(&x_true);
    for (yi, &vi) in y.iter_mut().zip(&noise) {
        *yi += vi;
    }
    let true_support = x_true
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0.0)
        .map(|(i, _)| i)
        .collect();
    Problem {
        a,
        y,
        x_true,
        true_support,
        noise,
        noise_var: 1.0,
        seed,
    }
}
