//! Error type carrying the process exit code.

use sparsels_core::baselines::BaselineError;
use sparsels_core::estimator::EstimatorError;
use sparsels_core::harness::HarnessError;
use sparsels_core::linalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or flag combinations (exit 1).
    #[error("{0}")]
    Usage(String),
    /// Unreadable or malformed input data (exit 2).
    #[error("{0}")]
    Data(String),
    /// Numerical failure inside an estimator (exit 3).
    #[error("{0}")]
    Numerical(String),
    /// A checker found a violated inequality (exit 4).
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Check(_) => 4,
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<EstimatorError> for CliError {
    fn from(e: EstimatorError) -> Self {
        match e {
            EstimatorError::InvalidEpsilon { .. }
            | EstimatorError::InvalidLambdaOverride { .. }
            | EstimatorError::InvalidNoiseScaling { .. } => CliError::Usage(e.to_string()),
            EstimatorError::Linalg(inner) => inner.into(),
        }
    }
}

impl From<BaselineError> for CliError {
    fn from(e: BaselineError) -> Self {
        match e {
            BaselineError::InvalidConfig { .. } => CliError::Usage(e.to_string()),
            BaselineError::Estimator(inner) => inner.into(),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::InvalidInput(_) | HarnessError::FoldSize { .. } => {
                CliError::Usage(e.to_string())
            }
            HarnessError::BoundViolated { .. } => CliError::Check(e.to_string()),
            HarnessError::Estimator(inner) => inner.into(),
            HarnessError::Baseline(inner) => inner.into(),
            HarnessError::Linalg(inner) => inner.into(),
        }
    }
}
