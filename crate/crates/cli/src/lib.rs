//! Filesystem and command-line companion to `sparsels-core`: CSV problem
//! bundles, tidy report files, run manifests with artifact checksums, and a
//! rayon-backed trial executor.
//!
//! Exit codes used by the binary: 0 success, 1 usage, 2 data/parse,
//! 3 numerical failure, 4 check violation.

pub mod args;
pub mod commands;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod reports;
pub mod runner;

pub use error::CliError;
