//! Uniform choice over the legal moves.

use rand::seq::SliceRandom;
use rand::Rng;

use ppx_core::Move;

use crate::StrategyError;

pub fn random_move<R: Rng>(legal: &[Move], rng: &mut R) -> Result<Move, StrategyError> {
    legal.choose(rng).cloned().ok_or(StrategyError::NoLegalMoves)
}
