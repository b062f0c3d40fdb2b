//! Tournament configuration files (TOML).
//!
//! ```toml
//! mode = "instruction"          # or "program"
//! puzzles = ["CardNim", "TidyTower"]   # default: every puzzle the mode allows
//! difficulties = ["easy", "normal"]
//! pairing = "baseline"          # program duels: "baseline" or "all-pairs"
//! baseline = "table"            # participant used by pairing = "baseline"
//! threads = 4                   # 0 = one per core
//! move_time_limit = 30.0        # seconds per reply from a program
//! cpu_limit = 300               # CPU seconds per program process
//! elo_seed = 0
//! elo_resamples = 1000
//!
//! [[participants]]
//! name = "table"
//! agent = "baseline"            # baseline, a policy name, or cmd:<program>
//!
//! [[participants]]
//! name = "bot-1"
//! command = ["python3", "bot.py"]
//! group = "bot"                 # samples in a group get Avg and Best
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use ppx_core::{Difficulty, PuzzleId};
use ppx_strategies::Tunables;

use crate::agent::AgentSpec;
use crate::protocol::{Mode, Pairing, Participant, RunOptions};
use crate::runner::Limits;
use crate::HarnessError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticipantConfig {
    pub name: String,
    #[serde(default)]
    pub agent: Option<String>,
    #[serde(default)]
    pub command: Option<Vec<String>>,
    #[serde(default)]
    pub group: Option<String>,
}

fn default_difficulties() -> Vec<String> {
    vec!["easy".into(), "normal".into()]
}

fn default_move_time() -> f64 {
    30.0
}

fn default_cpu_limit() -> Option<u64> {
    Some(300)
}

fn default_resamples() -> usize {
    ppx_scoring::elo::DEFAULT_RESAMPLES
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TournamentConfig {
    pub mode: Mode,
    #[serde(default)]
    pub puzzles: Vec<String>,
    #[serde(default = "default_difficulties")]
    pub difficulties: Vec<String>,
    #[serde(default)]
    pub pairing: Pairing,
    #[serde(default)]
    pub baseline: Option<String>,
    #[serde(default)]
    pub threads: usize,
    #[serde(default = "default_move_time")]
    pub move_time_limit: f64,
    #[serde(default = "default_cpu_limit")]
    pub cpu_limit: Option<u64>,
    #[serde(default)]
    pub elo_seed: u64,
    #[serde(default = "default_resamples")]
    pub elo_resamples: usize,
    #[serde(default)]
    pub tunables: Tunables,
    pub participants: Vec<ParticipantConfig>,
}

/// A configuration with every name resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub mode: Mode,
    pub puzzles: Vec<PuzzleId>,
    pub difficulties: Vec<Difficulty>,
    pub participants: Vec<Participant>,
    pub options: RunOptions,
    pub threads: usize,
    pub elo_seed: u64,
    pub elo_resamples: usize,
}

impl Resolved {
    /// Participant name to sample group, for program runs.
    pub fn groups(&self) -> Option<BTreeMap<String, String>> {
        (self.mode == Mode::Program)
            .then(|| self.participants.iter().map(|p| (p.name.clone(), p.group_name().to_string())).collect())
    }
}

fn config_err(msg: impl Into<String>) -> HarnessError {
    HarnessError::Config(msg.into())
}

impl TournamentConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| config_err(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn resolve(&self) -> Result<Resolved, HarnessError> {
        if self.participants.is_empty() {
            return Err(config_err("no participants"));
        }
        let mut seen = BTreeSet::new();
        let mut participants = Vec::new();
        for p in &self.participants {
            if !seen.insert(p.name.as_str()) {
                return Err(config_err(format!("duplicate participant {:?}", p.name)));
            }
            let spec = match (&p.agent, &p.command) {
                (Some(a), None) => a.parse::<AgentSpec>().map_err(|e| config_err(format!("participant {}: {e}", p.name)))?,
                (None, Some(cmd)) if !cmd.is_empty() => AgentSpec::Program(cmd.clone()),
                _ => return Err(config_err(format!("participant {} needs exactly one of agent or command", p.name))),
            };
            participants.push(Participant { name: p.name.clone(), spec, group: p.group.clone() });
        }

        let puzzles: Vec<PuzzleId> = if self.puzzles.is_empty() {
            PuzzleId::ALL.into_iter().filter(|p| self.mode == Mode::Program || !p.is_stochastic()).collect()
        } else {
            self.puzzles.iter().map(|s| s.parse::<PuzzleId>()).collect::<Result<_, _>>().map_err(|e| config_err(e.to_string()))?
        };
        if self.mode == Mode::Instruction {
            if let Some(&p) = puzzles.iter().find(|p| p.is_stochastic()) {
                return Err(HarnessError::StochasticPuzzleRejected(p));
            }
        }
        for p in &participants {
            if let Some(puzzle) = puzzles.iter().find(|&&z| !p.spec.supports(z)) {
                return Err(config_err(format!("participant {} has no strategy for {puzzle}", p.name)));
            }
        }
        let difficulties = self
            .difficulties
            .iter()
            .map(|s| s.parse::<Difficulty>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| config_err(e.to_string()))?;

        let baseline = match &self.baseline {
            Some(name) => Some(
                participants.iter().position(|p| &p.name == name).ok_or_else(|| config_err(format!("baseline {name:?} is not a participant")))?,
            ),
            None => None,
        };
        if self.mode == Mode::Program && self.pairing == Pairing::Baseline && baseline.is_none() {
            return Err(config_err("pairing = \"baseline\" needs a baseline participant"));
        }
        if !(self.move_time_limit > 0.0 && self.move_time_limit.is_finite()) {
            return Err(config_err(format!("move_time_limit {} must be positive", self.move_time_limit)));
        }
        self.tunables.validate().map_err(config_err)?;

        Ok(Resolved {
            mode: self.mode,
            puzzles,
            difficulties,
            participants,
            options: RunOptions {
                limits: Limits { move_time: Duration::from_secs_f64(self.move_time_limit), cpu_seconds: self.cpu_limit },
                tunables: self.tunables,
                pairing: self.pairing,
                baseline,
            },
            threads: self.threads,
            elo_seed: self.elo_seed,
            elo_resamples: self.elo_resamples,
        })
    }
}
