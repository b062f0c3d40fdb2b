//! Puzzle identities, difficulty levels and seeded templates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::rng::SeedKey;

/// The thirteen text puzzles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PuzzleId {
    SudoKill,
    TidyTower,
    CardNim,
    OptimalTouring,
    CountMaximalCocktails,
    MaxMaximalCocktails,
    ExclusivityParticles,
    ExclusivityProbes,
    RubyRisks,
    BeatOrBomb,
    MaxTarget,
    LargerTarget,
    Superply,
}

impl PuzzleId {
    pub const ALL: [PuzzleId; 13] = [
        PuzzleId::SudoKill,
        PuzzleId::TidyTower,
        PuzzleId::CardNim,
        PuzzleId::OptimalTouring,
        PuzzleId::CountMaximalCocktails,
        PuzzleId::MaxMaximalCocktails,
        PuzzleId::ExclusivityParticles,
        PuzzleId::ExclusivityProbes,
        PuzzleId::RubyRisks,
        PuzzleId::BeatOrBomb,
        PuzzleId::MaxTarget,
        PuzzleId::LargerTarget,
        PuzzleId::Superply,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PuzzleId::SudoKill => "SudoKill",
            PuzzleId::TidyTower => "TidyTower",
            PuzzleId::CardNim => "CardNim",
            PuzzleId::OptimalTouring => "OptimalTouring",
            PuzzleId::CountMaximalCocktails => "CountMaximalCocktails",
            PuzzleId::MaxMaximalCocktails => "MaxMaximalCocktails",
            PuzzleId::ExclusivityParticles => "ExclusivityParticles",
            PuzzleId::ExclusivityProbes => "ExclusivityProbes",
            PuzzleId::RubyRisks => "RubyRisks",
            PuzzleId::BeatOrBomb => "BeatOrBomb",
            PuzzleId::MaxTarget => "MaxTarget",
            PuzzleId::LargerTarget => "LargerTarget",
            PuzzleId::Superply => "Superply",
        }
    }

    /// Number of seats: 1 for single-player puzzles, 2 otherwise.
    pub fn arity(self) -> usize {
        if self.is_two_player() {
            2
        } else {
            1
        }
    }

    pub fn is_two_player(self) -> bool {
        matches!(
            self,
            PuzzleId::SudoKill
                | PuzzleId::CardNim
                | PuzzleId::MaxMaximalCocktails
                | PuzzleId::ExclusivityParticles
                | PuzzleId::BeatOrBomb
                | PuzzleId::LargerTarget
                | PuzzleId::Superply
        )
    }

    pub fn is_stochastic(self) -> bool {
        matches!(
            self,
            PuzzleId::ExclusivityProbes
                | PuzzleId::RubyRisks
                | PuzzleId::BeatOrBomb
                | PuzzleId::MaxTarget
                | PuzzleId::LargerTarget
        )
    }

    /// Default size parameters for a difficulty level.
    pub fn default_params(self, difficulty: Difficulty) -> SizeParams {
        let easy = difficulty == Difficulty::Easy;
        let pick = |e: u32, n: u32| if easy { e } else { n };
        let pairs: Vec<(&str, u32)> = match self {
            PuzzleId::SudoKill => vec![("side", pick(4, 9)), ("blanks", pick(10, 45))],
            PuzzleId::TidyTower => vec![("cubes", pick(6, 10))],
            PuzzleId::CardNim => vec![("num_cards", pick(3, 5)), ("max_card", pick(3, 9))],
            PuzzleId::OptimalTouring => vec![("sites", pick(5, 8)), ("grid", 100)],
            PuzzleId::CountMaximalCocktails => {
                vec![("nodes", pick(6, 9)), ("edge_percent", 30)]
            }
            PuzzleId::MaxMaximalCocktails => vec![("nodes", pick(5, 6))],
            PuzzleId::ExclusivityParticles => {
                vec![("dimension", pick(3, 5)), ("distance", 2)]
            }
            PuzzleId::ExclusivityProbes => vec![
                ("dimension", pick(3, 4)),
                ("distance", 2),
                ("num_particles", pick(2, 3)),
            ],
            PuzzleId::RubyRisks => {
                vec![("num_boxes", pick(3, 5)), ("total_rubies", pick(10, 20))]
            }
            PuzzleId::BeatOrBomb => vec![("num_cards", pick(5, 8))],
            PuzzleId::MaxTarget => vec![
                ("bag_count", pick(2, 3)),
                ("coins_per_bag", pick(2, 3)),
                ("max_guess", pick(2, 4)),
                ("max_coin", 10),
            ],
            PuzzleId::LargerTarget => vec![
                ("bag_count", pick(2, 3)),
                ("coins_per_bag", pick(3, 4)),
                ("max_guess", pick(2, 4)),
                ("max_coin", 10),
            ],
            PuzzleId::Superply => vec![("side", pick(4, 6))],
        };
        SizeParams(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }
}

impl fmt::Display for PuzzleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PuzzleId {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        let alias = match norm.as_str() {
            "beatorbombsto" => "beatorbomb",
            other => other,
        };
        PuzzleId::ALL
            .iter()
            .copied()
            .find(|p| p.name().to_ascii_lowercase() == alias)
            .ok_or_else(|| EngineError::UnknownPuzzle(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Difficulty {
    Easy,
    Normal,
}

impl Difficulty {
    pub const ALL: [Difficulty; 2] = [Difficulty::Easy, Difficulty::Normal];
}

impl fmt::Display for Difficulty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Difficulty::Easy => "Easy",
            Difficulty::Normal => "Normal",
        })
    }
}

impl FromStr for Difficulty {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "easy" => Ok(Difficulty::Easy),
            "normal" => Ok(Difficulty::Normal),
            _ => Err(EngineError::InvalidTemplate(format!("unknown difficulty {s:?}"))),
        }
    }
}

/// Named integer size parameters (grid side, cube count, node count, ...).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SizeParams(pub BTreeMap<String, u32>);

impl SizeParams {
    pub fn get(&self, key: &str) -> Result<u32, EngineError> {
        self.0
            .get(key)
            .copied()
            .ok_or_else(|| EngineError::InvalidTemplate(format!("missing size parameter {key:?}")))
    }

    pub fn set(&mut self, key: &str, value: u32) {
        self.0.insert(key.to_string(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// A puzzle family plus everything needed to produce one concrete instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PuzzleTemplate {
    pub puzzle: PuzzleId,
    pub difficulty: Difficulty,
    pub params: SizeParams,
    pub seed: u64,
}

impl PuzzleTemplate {
    pub fn new(puzzle: PuzzleId, difficulty: Difficulty, seed: u64) -> Self {
        PuzzleTemplate {
            puzzle,
            difficulty,
            params: puzzle.default_params(difficulty),
            seed,
        }
    }

    pub fn with_param(mut self, key: &str, value: u32) -> Self {
        self.params.set(key, value);
        self
    }

    pub fn param(&self, key: &str) -> Result<u32, EngineError> {
        self.params.get(key)
    }

    /// Checks that every expected key is present and strictly positive.
    pub fn validate_shape(&self) -> Result<(), EngineError> {
        let expected = self.puzzle.default_params(self.difficulty);
        for (key, _) in expected.iter() {
            let v = self.params.get(key)?;
            if v == 0 {
                return Err(EngineError::InvalidTemplate(format!(
                    "size parameter {key:?} must be positive"
                )));
            }
        }
        for (key, _) in self.params.iter() {
            if !expected.0.contains_key(key) {
                return Err(EngineError::InvalidTemplate(format!(
                    "unknown size parameter {key:?} for {}",
                    self.puzzle
                )));
            }
        }
        Ok(())
    }

    /// Root of the key tree for this instance: (puzzle, difficulty, seed).
    pub fn key(&self) -> SeedKey {
        let difficulty = match self.difficulty {
            Difficulty::Easy => 0,
            Difficulty::Normal => 1,
        };
        SeedKey::root(self.seed)
            .child_str(self.puzzle.name())
            .child(difficulty)
    }
}
