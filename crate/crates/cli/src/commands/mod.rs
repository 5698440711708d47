//! Command implementations.

mod check;
mod cv;
mod estimate;
mod experiment;
mod gen;
mod path;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use sparsels_core::estimator::Method;
use sparsels_core::harness::Generator;

use crate::args::{Cli, Command};
use crate::error::CliError;

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(args) => gen::run(&args),
        Command::Estimate(args) => estimate::run(&args),
        Command::Exp1(args) => experiment::run(Generator::Experiment1, &args),
        Command::Exp2(args) => experiment::run(Generator::Experiment2, &args),
        Command::Path(args) => path::run(&args),
        Command::Check(args) => check::run(&args),
        Command::Cv(args) => cv::run(&args),
    }
}

pub(crate) fn ensure_out_dir(dir: Option<&Path>, default: &str) -> Result<PathBuf, CliError> {
    let dir = dir
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(default));
    fs::create_dir_all(&dir)
        .map_err(|e| CliError::Data(format!("{}: {e}", dir.display())))?;
    Ok(dir)
}

pub(crate) fn parse_usize_list(s: &str, flag: &str) -> Result<Vec<usize>, CliError> {
    let items: Result<Vec<usize>, _> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect();
    let list =
        items.map_err(|_| CliError::Usage(format!("--{flag}: invalid integer list {s:?}")))?;
    if list.is_empty() {
        return Err(CliError::Usage(format!("--{flag}: empty list")));
    }
    Ok(list)
}

pub(crate) fn parse_real_list(s: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v = crate::args::parse_real(tok)
            .map_err(|e| CliError::Usage(format!("--{flag}: {e}")))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("--{flag}: empty list")));
    }
    Ok(out)
}

pub(crate) fn parse_method_list(s: &str) -> Result<Vec<Method>, CliError> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let m = Method::parse(tok).ok_or_else(|| {
            CliError::Usage(format!(
                "--methods: unknown method {tok:?} (expected one of LSE, LP_RELSE, ORACLE_LSE, LASSO, ADALASSO)"
            ))
        })?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("--methods: empty list".into()));
    }
    Ok(out)
}

pub(crate) fn parse_generator(s: &str) -> Result<Generator, CliError> {
    match s {
        "exp1" => Ok(Generator::Experiment1),
        "exp2" => Ok(Generator::Experiment2),
        other => Err(CliError::Usage(format!(
            "--generator: expected exp1 or exp2, got {other:?}"
        ))),
    }
}

/// Ordered key/value echo of resolved parameters for manifests and meta files.
pub(crate) struct ParamEcho {
    map: BTreeMap<String, String>,
}

impl ParamEcho {
    pub fn new() -> Self {
        ParamEcho {
            map: BTreeMap::new(),
        }
    }

    pub fn put(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.map.insert(key.to_string(), value.to_string());
        self
    }

    pub fn into_map(self) -> BTreeMap<String, String> {
        self.map
    }

    pub fn entries(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}
