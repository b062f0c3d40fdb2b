//! Seed-reproducible engine for thirteen text puzzles: instance generation,
//! state transitions with feedback, legal-move listing, observations and
//! replayable match records.

pub mod engine;
pub mod error;
pub mod grammar;
pub mod puzzles;
pub mod record;
pub mod rng;
pub mod state;
pub mod template;

pub use engine::{forfeit, instantiate, legal_moves, observe, public_view, raw_scores, step};
pub use error::EngineError;
pub use grammar::{extract_move, format_move, parse_move};
pub use puzzles::LegalMoves;
pub use record::{MatchRecord, Recorder, ReplayError};
pub use state::{Feedback, GameState, Legality, Move, Outcome, Payload, Player, Revealed, TerminationStatus};
pub use template::{Difficulty, PuzzleId, PuzzleTemplate, SizeParams};
