//! TidyTower: play the first move of a shortest tidying sequence.

use ppx_core::puzzles::tidytower::{solve, TowerState};
use ppx_core::Move;

use crate::StrategyError;

/// A minimal move sequence that tidies `tower`.
pub fn tidytower_solve(tower: &TowerState) -> Result<Vec<Move>, StrategyError> {
    Ok(solve(&tower.colors)?)
}

pub fn next_move(tower: &TowerState) -> Result<Move, StrategyError> {
    tidytower_solve(tower)?.into_iter().next().ok_or(StrategyError::NoLegalMoves)
}
