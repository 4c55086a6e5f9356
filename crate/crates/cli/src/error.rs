use std::process::ExitCode;

/// Failures split by exit code: configuration and usage problems exit 2,
/// anything that goes wrong while running exits 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad manifest, bad flag value, missing input file — the run never
    /// starts.
    #[error("{0}")]
    Config(String),
    /// A stage failed after the configuration was accepted.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config(_) => ExitCode::from(2),
            CliError::Runtime(_) => ExitCode::from(1),
        }
    }

    /// Wraps a stage error with the stage name so aborted pipelines point
    /// at the failing step.
    pub fn stage<E: std::fmt::Display>(stage: &str, err: E) -> Self {
        CliError::Runtime(format!("stage {stage} failed: {err}"))
    }

    /// A stage asked for an artifact an earlier stage should have written.
    pub fn missing_artifact(stage: &str, path: &std::path::Path, produced_by: &str) -> Self {
        CliError::Runtime(format!(
            "stage {stage}: required file {} not found; run `mobiprev {produced_by}` first",
            path.display()
        ))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o error: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
