//! ExclusivityParticles by exhaustive game-tree search.
//!
//! Positions are sets of occupied hypercube vertices; for dimension up to 6
//! they fit in a `u64`. Larger spaces, or searches that outgrow the position
//! budget, fall back to the greedy placement.

use std::collections::HashMap;

use ppx_core::puzzles::bits_of;
use ppx_core::puzzles::particles::ParticleSpace;
use ppx_core::Move;

use crate::{greedy, StrategyError};

/// Largest dimension accepted at all.
pub const MAX_DIMENSION: usize = 12;
/// Largest dimension searched exactly.
pub const EXACT_DIMENSION: usize = 6;
/// Positions searched before giving up on an exact answer.
pub const POSITION_BUDGET: usize = 1 << 21;

struct Solver {
    d: usize,
    k: u32,
    memo: HashMap<u64, bool>,
    budget: usize,
}

impl Solver {
    fn legal(&self, placed: u64) -> Vec<u32> {
        (0..1u32 << self.d)
            .filter(|&m| {
                (0..1u32 << self.d).all(|p| placed >> p & 1 == 0 || (p ^ m).count_ones() >= self.k)
            })
            .collect()
    }

    fn wins(&mut self, placed: u64) -> Option<bool> {
        if let Some(&w) = self.memo.get(&placed) {
            return Some(w);
        }
        if self.memo.len() >= self.budget {
            return None;
        }
        let mut result = false;
        for m in self.legal(placed) {
            if !self.wins(placed | 1 << m)? {
                result = true;
                break;
            }
        }
        self.memo.insert(placed, result);
        Some(result)
    }
}

/// A placement that wins with best play if one exists, else the first legal one.
pub fn particles_bruteforce(space: &ParticleSpace) -> Result<Move, StrategyError> {
    particles_bruteforce_with_budget(space, POSITION_BUDGET)
}

pub fn particles_bruteforce_with_budget(space: &ParticleSpace, budget: usize) -> Result<Move, StrategyError> {
    let d = space.dimension;
    if d > MAX_DIMENSION {
        return Err(StrategyError::CapExceeded(format!("dimension {d} exceeds {MAX_DIMENSION}")));
    }
    if d > EXACT_DIMENSION {
        return greedy::particles(space);
    }
    let placed = space.placed.iter().fold(0u64, |acc, &m| acc | 1 << m);
    let mut solver = Solver { d, k: space.distance, memo: HashMap::new(), budget };
    let options = solver.legal(placed);
    let first = *options.first().ok_or(StrategyError::NoLegalMoves)?;
    for &m in &options {
        match solver.wins(placed | 1 << m) {
            Some(false) => return Ok(Move::PlaceParticle { position: bits_of(m, d) }),
            Some(true) => {}
            None => return greedy::particles(space),
        }
    }
    Ok(Move::PlaceParticle { position: bits_of(first, d) })
}

/// Whether the player to move wins with best play (exact search only).
pub fn mover_wins(space: &ParticleSpace) -> Option<bool> {
    if space.dimension > EXACT_DIMENSION {
        return None;
    }
    let placed = space.placed.iter().fold(0u64, |acc, &m| acc | 1 << m);
    Solver { d: space.dimension, k: space.distance, memo: HashMap::new(), budget: POSITION_BUDGET }.wins(placed)
}
