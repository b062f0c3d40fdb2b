//! Runs matches between built-in strategies and external programs, applies
//! the evaluation protocols, and writes replays and score tables.

use thiserror::Error;

use ppx_core::{EngineError, PuzzleId, ReplayError};

pub mod agent;
pub mod config;
pub mod protocol;
pub mod report;
pub mod runner;
pub mod session;
pub mod tournament;
pub mod wire;

pub use agent::{with_format_retries, AgentHandle, AgentSpec, FORMAT_ATTEMPTS};
pub use config::TournamentConfig;
pub use protocol::{MatchPlan, Mode, Pairing, ProtocolSpec};
pub use report::Report;
pub use runner::{run_match, Limits};
pub use tournament::{run_tournament, write_tournament, Tournament};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0} is stochastic and cannot be played under the instruction protocol")]
    StochasticPuzzleRejected(PuzzleId),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error(transparent)]
    Scoring(#[from] ppx_scoring::ScoringError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
