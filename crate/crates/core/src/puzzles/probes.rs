//! ExclusivityProbes: locate hidden particles on a hypercube with yes/no
//! probes, using as few probes as possible. The match ends once every
//! particle has received a "yes"; the raw score is the probe count (lower
//! is better). A run that hits the probe cap scores the cap.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{bit_string, bits_of, hamming, parse_bits, LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Outcome, Player, Revealed};
use crate::template::PuzzleTemplate;

const MAX_DIMENSION: usize = 12;
const SAMPLING_ATTEMPTS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProbeWorld {
    pub dimension: usize,
    pub distance: u32,
    pub num_particles: usize,
    /// Hidden particle masks, ascending. Empty in public views.
    pub hidden: Vec<u32>,
    pub probes_used: u32,
    pub found: Vec<u32>,
    pub log: Vec<(u32, bool)>,
}

impl ProbeWorld {
    pub fn new(dimension: usize, distance: u32, hidden: Vec<u32>) -> Result<Self, EngineError> {
        if dimension == 0 || dimension > MAX_DIMENSION {
            return Err(EngineError::InvalidTemplate(format!(
                "dimension {dimension} outside 1..={MAX_DIMENSION}"
            )));
        }
        let mut hidden = hidden;
        hidden.sort_unstable();
        Ok(ProbeWorld {
            dimension,
            distance,
            num_particles: hidden.len(),
            hidden,
            probes_used: 0,
            found: Vec::new(),
            log: Vec::new(),
        })
    }

    /// Probes beyond which the run is cut off: two full sweeps.
    pub fn probe_cap(&self) -> u32 {
        2 << self.dimension
    }

    pub fn is_valid_configuration(&self, set: &[u32]) -> bool {
        set.iter().enumerate().all(|(i, &a)| {
            a < 1 << self.dimension && set[i + 1..].iter().all(|&b| hamming(a, b) >= self.distance)
        })
    }

    /// Answers a probe and records it.
    pub fn answer(&mut self, position: &[u8]) -> Result<bool, String> {
        let mask = parse_bits(position, self.dimension)?;
        let yes = self.hidden.binary_search(&mask).is_ok();
        self.probes_used += 1;
        self.log.push((mask, yes));
        if yes && !self.found.contains(&mask) {
            self.found.push(mask);
            self.found.sort_unstable();
        }
        Ok(yes)
    }

    pub fn all_found(&self) -> bool {
        self.found.len() == self.num_particles
    }

    /// Raw score of a finished search.
    pub fn score(&self) -> Result<u32, EngineError> {
        if self.all_found() {
            Ok(self.probes_used)
        } else {
            Err(EngineError::UnterminatedTrajectory)
        }
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let d = template.param("dimension")? as usize;
        let k = template.param("distance")?;
        let m = template.param("num_particles")? as usize;
        let shell = ProbeWorld::new(d, k, Vec::new())?;
        if m > 1 << d {
            return Err(EngineError::InvalidTemplate("more particles than vertices".into()));
        }
        let mut rng = template.key().child_str("particles").rng();
        // Rejection sampling keeps the draw uniform over all valid configurations.
        for _ in 0..SAMPLING_ATTEMPTS {
            let mut set: Vec<u32> = Vec::with_capacity(m);
            while set.len() < m {
                let v = rng.gen_range(0..1u32 << d);
                if !set.contains(&v) {
                    set.push(v);
                }
            }
            if shell.is_valid_configuration(&set) {
                return ProbeWorld::new(d, k, set);
            }
        }
        Err(EngineError::InvalidTemplate(format!(
            "no configuration of {m} particles at distance {k} found in dimension {d}"
        )))
    }
}

impl Rules for ProbeWorld {
    fn apply(&mut self, _mover: Player, mv: &Move, _chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        let Move::Probe { position } = mv else {
            return Err(EngineError::VariantMismatch("ExclusivityProbes".into()));
        };
        match self.answer(position) {
            Err(reason) => Ok(Verdict::Violation(reason)),
            Ok(yes) => {
                let end = if self.all_found() {
                    Some(Outcome::SoloScore(f64::from(self.probes_used)))
                } else if self.probes_used >= self.probe_cap() {
                    Some(Outcome::SoloScore(f64::from(self.probe_cap())))
                } else {
                    None
                };
                Ok(Verdict::Legal { revealed: Some(Revealed::ProbeAnswer { yes }), end })
            }
        }
    }

    fn legal_moves(&self, _mover: Player) -> LegalMoves {
        LegalMoves::complete(
            (0..1u32 << self.dimension)
                .map(|m| Move::Probe { position: bits_of(m, self.dimension) })
                .collect(),
        )
    }

    fn render(&self, _viewer: Player, out: &mut ObsWriter) {
        let log: Vec<(String, bool)> = self
            .log
            .iter()
            .map(|&(m, yes)| (bit_string(m, self.dimension), yes))
            .collect();
        out.field("dimension", &self.dimension)
            .field("distance", &self.distance)
            .field("num_particles", &self.num_particles)
            .field("probes_used", &self.probes_used)
            .field("probe_log", &log);
    }

    fn scrub(&mut self, _viewer: Player) {
        self.hidden.clear();
    }

    fn failure_score(&self) -> f64 {
        f64::from(self.probe_cap())
    }
}
