use thiserror::Error;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("world spec: {0}")]
    BadSpec(String),

    #[error("behavior plan: {0}")]
    BadPlan(String),

    #[error("planted truth: {0}")]
    BadTruth(String),

    #[error(transparent)]
    Core(#[from] mobiprev_core::CoreError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
