//! Sparse estimation for noisy overdetermined linear systems.
//!
//! The centerpiece is a three-step estimator for recovering an s-sparse
//! parameter vector from `y = A x + v` with a tall design matrix `A`
//! (more observations than unknowns) and Gaussian noise:
//!
//! 1. an ordinary least-squares solve,
//! 2. an l1-minimizing shrinkage step inside the box `|x - x_ls|_inf <= lambda`,
//!    which reduces to componentwise soft-thresholding and yields a support
//!    estimate,
//! 3. a de-biasing least-squares refit restricted to that support.
//!
//! With the schedule `lambda^2 = 2n / N^(1-eps)` the refit coincides with the
//! least-squares estimate on the *true* support once `N` is large enough, and
//! [`harness`] ships Monte Carlo machinery that measures exactly that, along
//! with executable forms of the supporting probability bounds.
//!
//! Modules:
//! - [`linalg`]: row-major matrices, thin SVD, SVD-backed solves, and the
//!   spectral richness certificate.
//! - [`estimator`]: the pipeline above plus the lambda schedule and the
//!   solution path of the shrinkage step.
//! - [`baselines`]: LASSO via coordinate descent and the adaptive LASSO.
//! - [`datagen`]: seeded synthetic problem generators (correlated Gaussian
//!   design, sinusoid dictionary).
//! - [`harness`]: Monte Carlo experiments, bound checkers, and 5-fold
//!   cross-validation.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature to use it in that mode. Float math is routed through a
//! small shim so both builds share one code path.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub(crate) mod float;

pub mod baselines;
pub mod datagen;
pub mod estimator;
pub mod harness;
pub mod linalg;

pub use estimator::{EstimatorConfig, Method, PipelineTrace, SparseEstimate};
pub use linalg::{Matrix, RichnessCertificate, SvdFactors};
