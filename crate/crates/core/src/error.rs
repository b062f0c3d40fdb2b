use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("invalid template: {0}")]
    InvalidTemplate(String),
    #[error("unknown puzzle {0:?}")]
    UnknownPuzzle(String),
    #[error("move variant does not belong to {0}")]
    VariantMismatch(String),
    #[error("game already finished")]
    SteppedFinishedGame,
    #[error("trajectory has not terminated")]
    UnterminatedTrajectory,
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("cannot parse move {input:?}: {reason}")]
    MoveSyntax { input: String, reason: String },
}
