//! CardNim solved by memoized win/loss labelling.

use std::collections::HashMap;

use ppx_core::puzzles::cardnim::NimState;
use ppx_core::{Move, Player};

use crate::StrategyError;

/// Default limit on the total number of cards in both hands.
pub const DEFAULT_CAP: usize = 20;

type Key = (u32, Vec<u32>, Vec<u32>);

/// Win/loss labels for positions `(stones, mover hand, other hand)`.
#[derive(Debug, Default)]
pub struct NimSolver {
    memo: HashMap<Key, bool>,
}

impl NimSolver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Whether the player to move wins with best play. Hands must be sorted.
    pub fn wins(&mut self, stones: u32, mine: &[u32], theirs: &[u32]) -> bool {
        let key = (stones, mine.to_vec(), theirs.to_vec());
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let mut result = false;
        let mut last = None;
        for (i, &c) in mine.iter().enumerate() {
            if c > stones || last == Some(c) {
                continue;
            }
            last = Some(c);
            if c == stones {
                result = true;
                break;
            }
            let mut rest = mine.to_vec();
            rest.remove(i);
            if !self.wins(stones - c, theirs, &rest) {
                result = true;
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }

    /// A winning card if one exists, else the smallest playable card.
    pub fn best_card(&mut self, stones: u32, mine: &[u32], theirs: &[u32]) -> Option<u32> {
        let mut first = None;
        for (i, &c) in mine.iter().enumerate() {
            if c > stones {
                continue;
            }
            first.get_or_insert(c);
            let mut rest = mine.to_vec();
            rest.remove(i);
            if c == stones || !self.wins(stones - c, theirs, &rest) {
                return Some(c);
            }
        }
        first
    }
}

fn sorted(h: &[u32]) -> Vec<u32> {
    let mut v = h.to_vec();
    v.sort_unstable();
    v
}

pub fn cardnim_dp(state: &NimState, me: Player, cap: usize) -> Result<Move, StrategyError> {
    let total = state.hands[0].len() + state.hands[1].len();
    if total > cap {
        return Err(StrategyError::CapExceeded(format!("{total} cards exceeds cap {cap}")));
    }
    let mine = sorted(&state.hands[me.seat()]);
    let theirs = sorted(&state.hands[me.other().seat()]);
    NimSolver::new()
        .best_card(state.stones, &mine, &theirs)
        .map(|card| Move::PlayCard { card })
        .ok_or(StrategyError::NoLegalMoves)
}

/// Whether the player to move in `state` wins with best play.
pub fn mover_wins(state: &NimState, mover: Player) -> bool {
    NimSolver::new().wins(state.stones, &sorted(&state.hands[mover.seat()]), &sorted(&state.hands[mover.other().seat()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::nim_minimax;

    #[test]
    fn five_stones_one_two_three_loses_for_the_mover() {
        let s = NimState::new(5, vec![1, 2, 3], vec![1, 2, 3]);
        assert!(!mover_wins(&s, Player::P1));
        assert!(!nim_minimax(5, &[1, 2, 3], &[1, 2, 3]));
    }

    #[test]
    fn last_stone_is_taken() {
        let s = NimState::new(1, vec![1], vec![1]);
        assert_eq!(cardnim_dp(&s, Player::P1, DEFAULT_CAP).unwrap(), Move::PlayCard { card: 1 });
        assert!(mover_wins(&s, Player::P1));
    }

    #[test]
    fn no_playable_card_loses() {
        assert!(!NimSolver::new().wins(1, &[2, 3], &[1]));
    }

    #[test]
    fn cap_is_enforced() {
        let s = NimState::new(50, (1..=11).collect(), (1..=11).collect());
        assert!(matches!(cardnim_dp(&s, Player::P1, DEFAULT_CAP), Err(StrategyError::CapExceeded(_))));
    }
}
