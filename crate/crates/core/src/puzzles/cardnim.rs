//! CardNim: remove stones by playing single-use number cards; taking the
//! last stone wins, being unable to play loses.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Outcome, Player};
use crate::template::{Difficulty, PuzzleTemplate};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NimState {
    pub stones: u32,
    pub initial_stones: u32,
    /// Sorted ascending; index 0 = P1.
    pub hands: [Vec<u32>; 2],
}

impl NimState {
    pub fn new(stones: u32, p1: Vec<u32>, p2: Vec<u32>) -> Self {
        let mut hands = [p1, p2];
        for h in &mut hands {
            h.sort_unstable();
        }
        NimState { stones, initial_stones: stones, hands }
    }

    /// Cards the player may play right now (with multiplicity).
    pub fn legal_cards(&self, player: Player) -> Vec<u32> {
        self.hands[player.seat()]
            .iter()
            .copied()
            .filter(|&c| c <= self.stones)
            .collect()
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let num_cards = template.param("num_cards")?;
        let max_card = template.param("max_card")?;
        if max_card < num_cards {
            return Err(EngineError::InvalidTemplate(format!(
                "{num_cards} distinct cards need max_card >= {num_cards}"
            )));
        }
        let mut rng = template.key().child_str("deal").rng();
        let hand: Vec<u32> = match template.difficulty {
            Difficulty::Easy => (1..=num_cards).collect(),
            Difficulty::Normal => {
                let mut pool: Vec<u32> = (1..=max_card).collect();
                pool.shuffle(&mut rng);
                pool.truncate(num_cards as usize);
                pool
            }
        };
        let low = *hand.iter().min().expect("at least one card");
        let high: u32 = 2 * hand.iter().sum::<u32>();
        let stones = rng.gen_range(low.max(2)..=high.max(low.max(2)));
        Ok(NimState::new(stones, hand.clone(), hand))
    }
}

impl Rules for NimState {
    fn apply(&mut self, mover: Player, mv: &Move, _chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        let Move::PlayCard { card } = *mv else {
            return Err(EngineError::VariantMismatch("CardNim".into()));
        };
        let hand = &mut self.hands[mover.seat()];
        let Some(pos) = hand.iter().position(|&c| c == card) else {
            return Ok(Verdict::Violation(format!("card {card} is not in hand")));
        };
        if card > self.stones {
            return Ok(Verdict::Violation(format!(
                "card {card} exceeds the {} remaining stones",
                self.stones
            )));
        }
        hand.remove(pos);
        self.stones -= card;
        let end = (self.stones == 0).then_some(Outcome::Win(mover));
        Ok(Verdict::Legal { revealed: None, end })
    }

    fn legal_moves(&self, mover: Player) -> LegalMoves {
        let mut cards = self.legal_cards(mover);
        cards.dedup();
        LegalMoves::complete(cards.into_iter().map(|card| Move::PlayCard { card }).collect())
    }

    fn render(&self, viewer: Player, out: &mut ObsWriter) {
        let seat = viewer.seat();
        out.field("stones", &self.stones)
            .field("your_hand", &self.hands[seat])
            .field("opponent_hand", &self.hands[1 - seat]);
    }
}
