//! ExclusivityParticles: players alternately place particles on hypercube
//! vertices keeping every pair at Hamming distance >= k; whoever cannot
//! place loses.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{bit_string, bits_of, hamming, parse_bits, LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Player};
use crate::template::PuzzleTemplate;

pub const MAX_DIMENSION: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParticleError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParticleSpace {
    pub dimension: usize,
    pub distance: u32,
    /// Vertex masks in placement order; coordinate 0 is the high bit.
    pub placed: Vec<u32>,
}

impl ParticleSpace {
    pub fn new(dimension: usize, distance: u32) -> Result<Self, EngineError> {
        if dimension == 0 || dimension > MAX_DIMENSION {
            return Err(EngineError::InvalidTemplate(format!(
                "dimension {dimension} outside 1..={MAX_DIMENSION}"
            )));
        }
        if distance == 0 || distance as usize > dimension {
            return Err(EngineError::InvalidTemplate(format!(
                "distance {distance} outside 1..={dimension}"
            )));
        }
        Ok(ParticleSpace { dimension, distance, placed: Vec::new() })
    }

    pub fn mask_legal(&self, mask: u32) -> bool {
        self.placed.iter().all(|&q| hamming(mask, q) >= self.distance)
    }

    pub fn placement_legal(&self, position: &[u8]) -> Result<bool, ParticleError> {
        let mask = parse_bits(position, self.dimension).map_err(ParticleError::DimensionMismatch)?;
        Ok(self.mask_legal(mask))
    }

    /// Legal vertices in ascending (lexicographic bit-string) order.
    pub fn legal_masks(&self) -> Vec<u32> {
        (0..1u32 << self.dimension).filter(|&m| self.mask_legal(m)).collect()
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        ParticleSpace::new(template.param("dimension")? as usize, template.param("distance")?)
    }
}

impl Rules for ParticleSpace {
    fn apply(&mut self, _mover: Player, mv: &Move, _chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        let Move::PlaceParticle { position } = mv else {
            return Err(EngineError::VariantMismatch("ExclusivityParticles".into()));
        };
        let mask = match parse_bits(position, self.dimension) {
            Ok(m) => m,
            Err(reason) => return Ok(Verdict::Violation(reason)),
        };
        if !self.mask_legal(mask) {
            return Ok(Verdict::Violation(format!(
                "{} is closer than {} to a placed particle",
                bit_string(mask, self.dimension),
                self.distance
            )));
        }
        self.placed.push(mask);
        Ok(Verdict::legal())
    }

    fn legal_moves(&self, _mover: Player) -> LegalMoves {
        LegalMoves::complete(
            self.legal_masks()
                .into_iter()
                .map(|m| Move::PlaceParticle { position: bits_of(m, self.dimension) })
                .collect(),
        )
    }

    fn render(&self, _viewer: Player, out: &mut ObsWriter) {
        let placed: Vec<Vec<u8>> = self.placed.iter().map(|&m| bits_of(m, self.dimension)).collect();
        out.field("dimension", &self.dimension)
            .field("distance", &self.distance)
            .field("placed", &placed);
    }
}
