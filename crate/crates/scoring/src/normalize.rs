//! Raw to normalized scores. Every participant evaluated on the same
//! instance forms the reference set.

use serde::{Deserialize, Serialize};

use ppx_core::PuzzleId;

use crate::ScoringError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScoreDirection {
    HigherBetter,
    LowerBetter,
}

/// Probe counts are the only raw score where less is better.
pub fn direction(puzzle: PuzzleId) -> ScoreDirection {
    if puzzle == PuzzleId::ExclusivityProbes {
        ScoreDirection::LowerBetter
    } else {
        ScoreDirection::HigherBetter
    }
}

/// `score / max` or `min / score`. If every higher-is-better raw is zero,
/// everyone gets 0.
pub fn normalize(raws: &[f64], direction: ScoreDirection) -> Result<Vec<f64>, ScoringError> {
    if raws.is_empty() {
        return Err(ScoringError::Empty);
    }
    if let Some(&bad) = raws.iter().find(|r| !r.is_finite()) {
        return Err(ScoringError::NonFinite(bad));
    }
    match direction {
        ScoreDirection::HigherBetter => {
            let max = raws.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if max <= 0.0 {
                return Ok(vec![0.0; raws.len()]);
            }
            Ok(raws.iter().map(|r| (r / max).max(0.0)).collect())
        }
        ScoreDirection::LowerBetter => {
            if let Some(&bad) = raws.iter().find(|&&r| r <= 0.0) {
                return Err(ScoringError::NonPositive(bad));
            }
            let min = raws.iter().copied().fold(f64::INFINITY, f64::min);
            Ok(raws.iter().map(|r| min / r).collect())
        }
    }
}

/// Normalizes one seed's raws for `puzzle`. Two-player raws are already
/// win/tie/loss values in [0, 1] and pass through.
pub fn normalize_for(puzzle: PuzzleId, raws: &[f64]) -> Result<Vec<f64>, ScoringError> {
    if puzzle.is_two_player() {
        if let Some(&bad) = raws.iter().find(|r| !r.is_finite()) {
            return Err(ScoringError::NonFinite(bad));
        }
        return Ok(raws.to_vec());
    }
    normalize(raws, direction(puzzle))
}
