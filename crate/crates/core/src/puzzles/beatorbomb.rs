//! BeatOrBomb: both players commit a card and a compete/give-up decision
//! each round. The engine takes P1's commitment first and keeps it hidden
//! from P2 until P2 has committed too.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Outcome, Player, Revealed};
use crate::template::PuzzleTemplate;

const DEAL_ATTEMPTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DuelError {
    #[error("card {0} is not in hand")]
    CardNotHeld(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Play {
    pub card: u8,
    pub compete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Round {
    pub plays: [Play; 2],
    pub points: [u32; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CardDuelState {
    /// Remaining card values (A=1 .. K=13), sorted ascending.
    pub hands: [Vec<u8>; 2],
    pub points: [u32; 2],
    /// P1's commitment for the round in progress.
    pub pending: Option<Play>,
    pub rounds: Vec<Round>,
}

/// Points awarded to (first, second) for one round.
pub fn resolve_round(a: Play, b: Play) -> (u32, u32) {
    let (va, vb) = (u32::from(a.card), u32::from(b.card));
    match (a.compete, b.compete) {
        (true, true) if va > vb => (va + vb, 0),
        (true, true) if vb > va => (0, va + vb),
        // Equal cards both competing: nobody holds the higher card.
        (true, true) => (0, 0),
        (true, false) => (va, 0),
        (false, true) => (0, vb),
        (false, false) => (0, 0),
    }
}

pub fn card_label(value: u8) -> String {
    match value {
        1 => "A".into(),
        11 => "J".into(),
        12 => "Q".into(),
        13 => "K".into(),
        v => v.to_string(),
    }
}

impl CardDuelState {
    pub fn new(p1: Vec<u8>, p2: Vec<u8>) -> Self {
        let mut hands = [p1, p2];
        for h in &mut hands {
            h.sort_unstable();
        }
        CardDuelState { hands, points: [0, 0], pending: None, rounds: Vec::new() }
    }

    pub fn holds(&self, player: Player, card: u8) -> bool {
        self.hands[player.seat()].contains(&card)
    }

    /// Plays one full round, removing both cards.
    pub fn play_round(&mut self, a: Play, b: Play) -> Result<(u32, u32), DuelError> {
        for (seat, play) in [(0, a), (1, b)] {
            if !self.hands[seat].contains(&play.card) {
                return Err(DuelError::CardNotHeld(play.card));
            }
        }
        for (seat, play) in [(0, a), (1, b)] {
            let i = self.hands[seat].iter().position(|&c| c == play.card).expect("checked above");
            self.hands[seat].remove(i);
        }
        let (pa, pb) = resolve_round(a, b);
        self.points[0] += pa;
        self.points[1] += pb;
        self.rounds.push(Round { plays: [a, b], points: [pa, pb] });
        Ok((pa, pb))
    }

    pub fn is_over(&self) -> bool {
        self.hands[0].is_empty() && self.hands[1].is_empty()
    }

    pub fn final_outcome(&self) -> Outcome {
        match self.points[0].cmp(&self.points[1]) {
            std::cmp::Ordering::Greater => Outcome::Win(Player::P1),
            std::cmp::Ordering::Less => Outcome::Win(Player::P2),
            std::cmp::Ordering::Equal => Outcome::Tie,
        }
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let n = template.param("num_cards")? as usize;
        if n > 26 {
            return Err(EngineError::InvalidTemplate("num_cards above 26 cannot fill two hands".into()));
        }
        let mut rng = template.key().child_str("deal").rng();
        let deck: Vec<u8> = (1..=13u8).flat_map(|v| std::iter::repeat_n(v, 4)).collect();
        for _ in 0..DEAL_ATTEMPTS {
            let first: Vec<u8> = deck.choose_multiple(&mut rng, n).copied().collect();
            let mut available = [4u8; 14];
            for &c in &first {
                available[c as usize] -= 1;
            }
            let target: u32 = first.iter().map(|&c| u32::from(c)).sum();
            let mut order: Vec<u8> = (1..=13).collect();
            order.shuffle(&mut rng);
            let mut second = Vec::with_capacity(n);
            if balanced_hand(&order, &mut available, n, target, &mut second) {
                second.shuffle(&mut rng);
                return Ok(CardDuelState::new(first, second));
            }
        }
        Err(EngineError::InvalidTemplate("could not deal balanced hands".into()))
    }
}

/// Depth-first search for `n` cards from `available` summing to `target`.
fn balanced_hand(order: &[u8], available: &mut [u8; 14], n: usize, target: u32, out: &mut Vec<u8>) -> bool {
    if n == 0 {
        return target == 0;
    }
    if target < n as u32 || target > 13 * n as u32 {
        return false;
    }
    for &v in order {
        if available[v as usize] == 0 || u32::from(v) > target {
            continue;
        }
        available[v as usize] -= 1;
        out.push(v);
        if balanced_hand(order, available, n - 1, target - u32::from(v), out) {
            return true;
        }
        out.pop();
        available[v as usize] += 1;
    }
    false
}

impl Rules for CardDuelState {
    fn apply(&mut self, mover: Player, mv: &Move, _chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        let Move::DuelPlay { card, compete } = *mv else {
            return Err(EngineError::VariantMismatch("BeatOrBomb".into()));
        };
        if !self.holds(mover, card) {
            return Ok(Verdict::Violation(DuelError::CardNotHeld(card).to_string()));
        }
        let play = Play { card, compete };
        match (mover, self.pending) {
            (Player::P1, None) => {
                self.pending = Some(play);
                Ok(Verdict::legal())
            }
            (Player::P2, Some(first)) => {
                self.pending = None;
                let (p1_points, p2_points) = self
                    .play_round(first, play)
                    .map_err(|e| EngineError::InvalidTemplate(e.to_string()))?;
                let revealed = Revealed::RoundResult {
                    p1_card: first.card,
                    p1_compete: first.compete,
                    p2_card: card,
                    p2_compete: compete,
                    p1_points,
                    p2_points,
                };
                let end = self.is_over().then(|| self.final_outcome());
                Ok(Verdict::Legal { revealed: Some(revealed), end })
            }
            _ => Ok(Verdict::Violation("out-of-turn commitment".into())),
        }
    }

    fn legal_moves(&self, mover: Player) -> LegalMoves {
        let mut cards = self.hands[mover.seat()].clone();
        cards.dedup();
        LegalMoves::complete(
            cards
                .into_iter()
                .flat_map(|card| {
                    [true, false].into_iter().map(move |compete| Move::DuelPlay { card, compete })
                })
                .collect(),
        )
    }

    fn render(&self, viewer: Player, out: &mut ObsWriter) {
        let labels = |h: &Vec<u8>| h.iter().map(|&c| card_label(c)).collect::<Vec<_>>();
        out.field("your_hand", &labels(&self.hands[viewer.seat()]))
            .field("opponent_hand", &labels(&self.hands[viewer.other().seat()]))
            .field("your_points", &self.points[viewer.seat()])
            .field("opponent_points", &self.points[viewer.other().seat()])
            .field("rounds", &self.rounds);
    }

    fn scrub(&mut self, viewer: Player) {
        if viewer != Player::P1 {
            self.pending = None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::{Difficulty, PuzzleId};

    fn p(card: u8, compete: bool) -> Play {
        Play { card, compete }
    }

    #[test]
    fn worked_round_awards() {
        assert_eq!(resolve_round(p(5, true), p(13, false)), (5, 0));
        assert_eq!(resolve_round(p(5, false), p(13, false)), (0, 0));
        assert_eq!(resolve_round(p(9, true), p(3, true)), (12, 0));
        assert_eq!(resolve_round(p(3, true), p(9, true)), (0, 12));
        assert_eq!(resolve_round(p(7, true), p(7, true)), (0, 0));
    }

    #[test]
    fn round_awards_stay_in_allowed_set() {
        for a in 1..=13u8 {
            for b in 1..=13u8 {
                for ca in [true, false] {
                    for cb in [true, false] {
                        let (x, y) = resolve_round(p(a, ca), p(b, cb));
                        let total = x + y;
                        let (a, b) = (u32::from(a), u32::from(b));
                        assert!([0, a.min(b), a.max(b), a + b].contains(&total));
                    }
                }
            }
        }
    }

    #[test]
    fn cards_are_consumed() {
        let mut s = CardDuelState::new(vec![5, 9], vec![13, 1]);
        s.play_round(p(5, true), p(13, false)).unwrap();
        assert_eq!(s.points, [5, 0]);
        assert_eq!(s.hands, [vec![9], vec![1]]);
        assert_eq!(s.play_round(p(5, true), p(1, true)), Err(DuelError::CardNotHeld(5)));
    }

    #[test]
    fn dealt_hands_are_balanced_and_fit_the_deck() {
        for seed in 0..200 {
            for d in Difficulty::ALL {
                let t = PuzzleTemplate::new(PuzzleId::BeatOrBomb, d, seed);
                let s = CardDuelState::generate(&t).unwrap();
                let sum = |h: &Vec<u8>| h.iter().map(|&c| u32::from(c)).sum::<u32>();
                assert_eq!(sum(&s.hands[0]), sum(&s.hands[1]));
                assert_eq!(s.hands[0].len(), t.param("num_cards").unwrap() as usize);
                let mut counts = [0u8; 14];
                for &c in s.hands[0].iter().chain(&s.hands[1]) {
                    counts[c as usize] += 1;
                }
                assert!(counts.iter().all(|&c| c <= 4));
            }
        }
    }
}
