//! Evaluation schedules: which seeds are played, by whom, in which seat.
//!
//! Instruction protocol (agents answer move by move): solo puzzles on seeds
//! 1 to 10, duels on seeds 1 to 5 with both seat orders. Stochastic puzzles
//! are not played this way. Program protocol (agents are whole programs):
//! deterministic puzzles use the same schedule, stochastic solo puzzles run
//! seeds 1 to 100 and stochastic duels seeds 1 to 50 with the first seat
//! alternating.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use ppx_core::{Difficulty, MatchRecord, Player, PuzzleId, PuzzleTemplate};
use ppx_strategies::Tunables;

use crate::agent::{AgentHandle, AgentSpec};
use crate::runner::{run_match, Limits};
use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Instruction,
    Program,
}

/// Who program-protocol duels pair up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pairing {
    /// Every participant against the baseline participant.
    #[default]
    Baseline,
    AllPairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolSpec {
    pub mode: Mode,
    pub seeds: Vec<u64>,
    /// 2 plays every seed in both seat orders.
    pub orderings: usize,
    /// Swap the first seat on every other seed.
    pub alternate: bool,
}

impl ProtocolSpec {
    pub fn for_puzzle(mode: Mode, puzzle: PuzzleId) -> Result<Self, HarnessError> {
        let spec = |n: u64, orderings, alternate| ProtocolSpec { mode, seeds: (1..=n).collect(), orderings, alternate };
        match (mode, puzzle.is_stochastic(), puzzle.is_two_player()) {
            (Mode::Instruction, true, _) => Err(HarnessError::StochasticPuzzleRejected(puzzle)),
            (_, false, false) => Ok(spec(10, 1, false)),
            (_, false, true) => Ok(spec(5, 2, false)),
            (Mode::Program, true, false) => Ok(spec(100, 1, false)),
            (Mode::Program, true, true) => Ok(spec(50, 1, true)),
        }
    }

    /// Records per solo participant or per duel pair.
    pub fn records_per_unit(&self) -> usize {
        self.seeds.len() * self.orderings
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Participant {
    pub name: String,
    pub spec: AgentSpec,
    /// Samples sharing a group are aggregated into Avg and Best.
    pub group: Option<String>,
}

impl Participant {
    pub fn new(name: impl Into<String>, spec: AgentSpec) -> Self {
        Participant { name: name.into(), spec, group: None }
    }

    pub fn group_name(&self) -> &str {
        self.group.as_deref().unwrap_or(&self.name)
    }
}

/// One scheduled match; `seats[i]` indexes the participant in seat `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchPlan {
    pub template: PuzzleTemplate,
    pub seats: Vec<usize>,
}

/// Unordered duel pairs over `n` participants.
pub fn pairs(n: usize, pairing: Pairing, baseline: Option<usize>) -> Vec<(usize, usize)> {
    match (pairing, baseline) {
        (Pairing::Baseline, Some(b)) => (0..n).filter(|&i| i != b).map(|i| (i, b)).collect(),
        _ => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
    }
}

pub fn plan_matches(spec: &ProtocolSpec, puzzle: PuzzleId, difficulty: Difficulty, n: usize, duel_pairs: &[(usize, usize)]) -> Vec<MatchPlan> {
    let template = |seed| PuzzleTemplate::new(puzzle, difficulty, seed);
    let mut plans = Vec::new();
    if !puzzle.is_two_player() {
        for p in 0..n {
            plans.extend(spec.seeds.iter().map(|&s| MatchPlan { template: template(s), seats: vec![p] }));
        }
        return plans;
    }
    for &(a, b) in duel_pairs {
        for (k, &seed) in spec.seeds.iter().enumerate() {
            if spec.orderings >= 2 {
                plans.push(MatchPlan { template: template(seed), seats: vec![a, b] });
                plans.push(MatchPlan { template: template(seed), seats: vec![b, a] });
            } else if spec.alternate && k % 2 == 1 {
                plans.push(MatchPlan { template: template(seed), seats: vec![b, a] });
            } else {
                plans.push(MatchPlan { template: template(seed), seats: vec![a, b] });
            }
        }
    }
    plans
}

/// Runs plans on the current rayon pool; records come back in plan order.
pub fn run_plans(plans: &[MatchPlan], participants: &[Participant], limits: &Limits, tunables: Tunables) -> Result<Vec<MatchRecord>, HarnessError> {
    plans
        .par_iter()
        .map(|plan| {
            let mut agents = plan
                .seats
                .iter()
                .enumerate()
                .map(|(seat, &p)| {
                    let who = &participants[p];
                    AgentHandle::new(&who.name, &who.spec, &plan.template, Player::from_seat(plan.template.puzzle, seat), tunables)
                })
                .collect::<Result<Vec<_>, _>>()?;
            run_match(&plan.template, &mut agents, limits)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub limits: Limits,
    pub tunables: Tunables,
    pub pairing: Pairing,
    /// Index of the reference participant for `Pairing::Baseline`.
    pub baseline: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { limits: Limits::default(), tunables: Tunables::default(), pairing: Pairing::AllPairs, baseline: None }
    }
}

fn run_protocol(mode: Mode, puzzle: PuzzleId, difficulty: Difficulty, participants: &[Participant], opts: &RunOptions) -> Result<Vec<MatchRecord>, HarnessError> {
    let spec = ProtocolSpec::for_puzzle(mode, puzzle)?;
    if let Some(p) = participants.iter().find(|p| !p.spec.supports(puzzle)) {
        return Err(HarnessError::Config(format!("participant {} has no strategy for {puzzle}", p.name)));
    }
    let pairing = if mode == Mode::Instruction { Pairing::AllPairs } else { opts.pairing };
    let duel_pairs = pairs(participants.len(), pairing, opts.baseline);
    let plans = plan_matches(&spec, puzzle, difficulty, participants.len(), &duel_pairs);
    run_plans(&plans, participants, &opts.limits, opts.tunables)
}

/// Instruction protocol: every participant on solo puzzles, every pair on
/// duels.
pub fn run_instruction_protocol(puzzle: PuzzleId, difficulty: Difficulty, participants: &[Participant], opts: &RunOptions) -> Result<Vec<MatchRecord>, HarnessError> {
    run_protocol(Mode::Instruction, puzzle, difficulty, participants, opts)
}

/// Program protocol; duels follow `opts.pairing`.
pub fn run_program_protocol(puzzle: PuzzleId, difficulty: Difficulty, participants: &[Participant], opts: &RunOptions) -> Result<Vec<MatchRecord>, HarnessError> {
    run_protocol(Mode::Program, puzzle, difficulty, participants, opts)
}
