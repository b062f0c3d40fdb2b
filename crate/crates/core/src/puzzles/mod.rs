//! Per-puzzle rules. Each puzzle state implements [`Rules`]; the engine
//! dispatches on [`crate::state::Payload`].

use serde::Serialize;

use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Outcome, Player, Revealed};

pub mod bags;
pub mod beatorbomb;
pub mod cardnim;
pub mod cocktails;
pub mod particles;
pub mod probes;
pub mod ruby;
pub mod sudokill;
pub mod superply;
pub mod tidytower;
pub mod touring;

/// Result of applying a move to a puzzle payload.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Legal {
        revealed: Option<Revealed>,
        end: Option<Outcome>,
    },
    /// Invalid but non-terminating: the turn passes (Superply).
    Skip {
        reason: String,
        end: Option<Outcome>,
    },
    Violation(String),
    Malformed(String),
}

impl Verdict {
    pub(crate) fn legal() -> Self {
        Verdict::Legal { revealed: None, end: None }
    }
}

/// Legal move list; `truncated` is set when the true move space is larger
/// than the listed moves (open-ended answers).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LegalMoves {
    pub moves: Vec<Move>,
    pub truncated: bool,
}

impl LegalMoves {
    pub fn complete(moves: Vec<Move>) -> Self {
        LegalMoves { moves, truncated: false }
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

pub(crate) trait Rules {
    /// Mutates the payload in place; the engine hands it a private copy.
    fn apply(
        &mut self,
        mover: Player,
        mv: &Move,
        chance: &mut ChanceStream,
    ) -> Result<Verdict, EngineError>;

    fn legal_moves(&self, mover: Player) -> LegalMoves;

    fn render(&self, viewer: Player, out: &mut ObsWriter);

    /// Removes everything `viewer` must not see.
    fn scrub(&mut self, _viewer: Player) {}

    /// Raw score credited to a solo player whose game ends in a violation.
    fn failure_score(&self) -> f64 {
        0.0
    }
}

/// Builds `key: <json>` observation lines.
#[derive(Debug, Default)]
pub struct ObsWriter {
    text: String,
}

impl ObsWriter {
    pub fn field<T: Serialize + ?Sized>(&mut self, key: &str, value: &T) -> &mut Self {
        let json = serde_json::to_string(value).expect("observation field serializes");
        self.text.push_str(key);
        self.text.push_str(": ");
        self.text.push_str(&json);
        self.text.push('\n');
        self
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub(crate) fn parse_bits(position: &[u8], dimension: usize) -> Result<u32, String> {
    if position.len() != dimension {
        return Err(format!(
            "position has {} coordinates, expected {dimension}",
            position.len()
        ));
    }
    let mut mask = 0u32;
    for &b in position {
        if b > 1 {
            return Err(format!("coordinate {b} is not binary"));
        }
        mask = (mask << 1) | u32::from(b);
    }
    Ok(mask)
}

/// Coordinate 0 is the most significant bit so ascending masks follow
/// lexicographic order of the bit strings.
pub fn bits_of(mask: u32, dimension: usize) -> Vec<u8> {
    (0..dimension)
        .map(|i| ((mask >> (dimension - 1 - i)) & 1) as u8)
        .collect()
}

pub fn bit_string(mask: u32, dimension: usize) -> String {
    bits_of(mask, dimension)
        .into_iter()
        .map(|b| if b == 1 { '1' } else { '0' })
        .collect()
}

pub fn hamming(a: u32, b: u32) -> u32 {
    (a ^ b).count_ones()
}
