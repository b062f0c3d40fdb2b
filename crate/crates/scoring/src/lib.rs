//! Turning raw match results into normalized scores, Elo ratings, win-rate
//! matrices and termination-status breakdowns.

use thiserror::Error;

pub mod elo;
pub mod normalize;
pub mod records;
pub mod table;

pub use elo::{elo_expected, elo_update, solo_to_matches, tournament_elo, EloEstimate, MatchResult, RatingTable};
pub use normalize::{direction, normalize, normalize_for, ScoreDirection};
pub use records::{duel_results, normalized_scores, status_distribution, win_matrix, NormalizedScore, StatusDistribution, WinMatrix};
pub use table::{aggregate_samples, Aggregate, ScoreRow, ScoreTable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScoringError {
    #[error("no participants to normalize")]
    Empty,
    #[error("raw score {0} is not finite")]
    NonFinite(f64),
    #[error("lower-is-better raw score {0} must be positive")]
    NonPositive(f64),
    #[error("record has {scores} scores for {agents} agents")]
    MalformedRecord { agents: usize, scores: usize },
    #[error("csv: {0}")]
    Csv(String),
}
