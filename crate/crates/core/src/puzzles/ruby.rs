//! RubyRisks: request rubies from hidden boxes opened left to right; an
//! over-request yields nothing from that box.

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Outcome, Player, Revealed};
use crate::template::PuzzleTemplate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RubyError {
    #[error("no boxes left")]
    NoBoxesLeft,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RubyWorld {
    pub num_boxes: usize,
    pub total_rubies: u32,
    /// Hidden contents; empty in public views.
    pub boxes: Vec<u32>,
    pub next_box: usize,
    pub collected: u32,
    /// (request, gain) per opened box.
    pub log: Vec<(u32, u32)>,
}

impl RubyWorld {
    pub fn new(boxes: Vec<u32>) -> Self {
        RubyWorld {
            num_boxes: boxes.len(),
            total_rubies: boxes.iter().sum(),
            boxes,
            next_box: 0,
            collected: 0,
            log: Vec::new(),
        }
    }

    pub fn boxes_left(&self) -> usize {
        self.num_boxes - self.next_box
    }

    /// Upper bound on what the unopened boxes can still hold.
    pub fn remaining_total(&self) -> u32 {
        self.total_rubies - self.collected
    }

    /// Rubies lost in boxes whose request failed or undershot.
    pub fn forfeited(&self) -> u32 {
        self.boxes[..self.next_box].iter().sum::<u32>() - self.collected
    }

    pub fn resolve(&mut self, request: u32) -> Result<u32, RubyError> {
        let content = *self.boxes.get(self.next_box).ok_or(RubyError::NoBoxesLeft)?;
        let gain = if request <= content { request } else { 0 };
        self.collected += gain;
        self.next_box += 1;
        self.log.push((request, gain));
        Ok(gain)
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let boxes = template.param("num_boxes")? as usize;
        let total = template.param("total_rubies")?;
        let mut rng = template.key().child_str("boxes").rng();
        Ok(RubyWorld::new(random_composition(total, boxes, &mut rng)))
    }
}

/// Uniform random composition of `total` into `parts` non-negative parts
/// (stars and bars: choose the bar positions uniformly).
pub fn random_composition<R: rand::Rng>(total: u32, parts: usize, rng: &mut R) -> Vec<u32> {
    let slots = total as usize + parts - 1;
    let mut bars: Vec<usize> = sample(rng, slots, parts - 1).into_vec();
    bars.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0usize;
    for (i, &b) in bars.iter().enumerate() {
        out.push((b - prev - if i == 0 { 0 } else { 1 }) as u32);
        prev = b;
    }
    let last_start = if bars.is_empty() { 0 } else { prev + 1 };
    out.push((slots - last_start) as u32);
    out
}

impl Rules for RubyWorld {
    fn apply(&mut self, _mover: Player, mv: &Move, _chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        let Move::Request { amount } = *mv else {
            return Err(EngineError::VariantMismatch("RubyRisks".into()));
        };
        if amount > self.remaining_total() {
            return Ok(Verdict::Violation(format!(
                "request {amount} exceeds the {} rubies that can remain",
                self.remaining_total()
            )));
        }
        let gain = match self.resolve(amount) {
            Ok(g) => g,
            Err(e) => return Ok(Verdict::Violation(e.to_string())),
        };
        let end = (self.boxes_left() == 0).then_some(Outcome::SoloScore(f64::from(self.collected)));
        Ok(Verdict::Legal { revealed: Some(Revealed::RubyGain { gain }), end })
    }

    fn legal_moves(&self, _mover: Player) -> LegalMoves {
        if self.boxes_left() == 0 {
            return LegalMoves::default();
        }
        LegalMoves::complete((0..=self.remaining_total()).map(|amount| Move::Request { amount }).collect())
    }

    fn render(&self, _viewer: Player, out: &mut ObsWriter) {
        out.field("num_boxes", &self.num_boxes)
            .field("total_rubies", &self.total_rubies)
            .field("boxes_opened", &self.next_box)
            .field("history", &self.log)
            .field("collected", &self.collected);
    }

    fn scrub(&mut self, _viewer: Player) {
        self.boxes.clear();
    }
}
