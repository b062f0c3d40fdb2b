//! Built-in playing strategies for every puzzle, the policy table that maps
//! (puzzle, difficulty) to a strategy family, and the brute-force oracles the
//! test suites check the fast solvers against.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use ppx_core::{legal_moves, public_view, Difficulty, EngineError, GameState, Move, Payload, PuzzleId};

pub mod cocktails;
pub mod greedy;
pub mod nim;
pub mod oracles;
pub mod particles;
pub mod random;
pub mod ruby;
pub mod superply;
pub mod touring;
pub mod tower;

pub use ruby::MctsParams;
pub use touring::SaParams;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrategyError {
    #[error("no legal moves")]
    NoLegalMoves,
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("{policy} has no implementation for {puzzle}")]
    Unsupported { policy: PolicyKind, puzzle: PuzzleId },
    #[error("strategy produced {0:?}, which is not a legal move")]
    IllegalChoice(Move),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Strategy families named in the baseline table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolicyKind {
    Random,
    Greedy,
    DynamicProgramming,
    BruteForce,
    Mcts,
    SimulatedAnnealing,
    Search,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 7] = [
        PolicyKind::Random,
        PolicyKind::Greedy,
        PolicyKind::DynamicProgramming,
        PolicyKind::BruteForce,
        PolicyKind::Mcts,
        PolicyKind::SimulatedAnnealing,
        PolicyKind::Search,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Random => "random",
            PolicyKind::Greedy => "greedy",
            PolicyKind::DynamicProgramming => "dp",
            PolicyKind::BruteForce => "bruteforce",
            PolicyKind::Mcts => "mcts",
            PolicyKind::SimulatedAnnealing => "sa",
            PolicyKind::Search => "search",
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase();
        PolicyKind::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .or(match s.as_str() {
                "dynamic-programming" | "dynamicprogramming" => Some(PolicyKind::DynamicProgramming),
                "brute-force" => Some(PolicyKind::BruteForce),
                "simulated-annealing" | "annealing" => Some(PolicyKind::SimulatedAnnealing),
                "searching" => Some(PolicyKind::Search),
                _ => None,
            })
            .ok_or_else(|| format!("unknown policy {s:?}"))
    }
}

/// The baseline strategy for a puzzle at a difficulty.
pub fn table_policy(puzzle: PuzzleId, difficulty: Difficulty) -> PolicyKind {
    use PolicyKind::*;
    let (easy, normal) = match puzzle {
        PuzzleId::SudoKill => (Random, Greedy),
        PuzzleId::TidyTower => (DynamicProgramming, DynamicProgramming),
        PuzzleId::CardNim => (Random, DynamicProgramming),
        PuzzleId::OptimalTouring => (SimulatedAnnealing, SimulatedAnnealing),
        PuzzleId::CountMaximalCocktails => (BruteForce, BruteForce),
        PuzzleId::MaxMaximalCocktails => (Random, BruteForce),
        PuzzleId::ExclusivityParticles => (BruteForce, Greedy),
        PuzzleId::ExclusivityProbes => (Random, Greedy),
        PuzzleId::RubyRisks => (Mcts, Mcts),
        PuzzleId::BeatOrBomb => (Random, Greedy),
        PuzzleId::MaxTarget => (Greedy, Greedy),
        PuzzleId::LargerTarget => (Random, Greedy),
        PuzzleId::Superply => (Random, Search),
    };
    match difficulty {
        Difficulty::Easy => easy,
        Difficulty::Normal => normal,
    }
}

/// Whether `policy` has an implementation for `puzzle`.
pub fn supports(policy: PolicyKind, puzzle: PuzzleId) -> bool {
    use PolicyKind::*;
    match policy {
        Random => true,
        Greedy => matches!(
            puzzle,
            PuzzleId::SudoKill
                | PuzzleId::ExclusivityParticles
                | PuzzleId::ExclusivityProbes
                | PuzzleId::BeatOrBomb
                | PuzzleId::MaxTarget
                | PuzzleId::LargerTarget
        ),
        DynamicProgramming => matches!(puzzle, PuzzleId::TidyTower | PuzzleId::CardNim),
        BruteForce => matches!(
            puzzle,
            PuzzleId::CountMaximalCocktails | PuzzleId::MaxMaximalCocktails | PuzzleId::ExclusivityParticles
        ),
        Mcts => puzzle == PuzzleId::RubyRisks,
        SimulatedAnnealing => puzzle == PuzzleId::OptimalTouring,
        Search => puzzle == PuzzleId::Superply,
    }
}

/// Tunables shared by all agents; defaults follow the configuration defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tunables {
    pub mcts: MctsParams,
    pub sa: SaParams,
    /// Look-ahead for the Superply search, in plies.
    pub search_depth: u32,
}

impl Default for Tunables {
    fn default() -> Self {
        Tunables { mcts: MctsParams::default(), sa: SaParams::default(), search_depth: superply::DEFAULT_DEPTH }
    }
}

impl Tunables {
    pub fn validate(&self) -> Result<(), String> {
        self.mcts.validate()?;
        self.sa.validate()?;
        if self.search_depth == 0 {
            return Err("search depth must be at least 1".into());
        }
        Ok(())
    }
}

/// A built-in agent. Decisions are a pure function of the observed public
/// state and the agent's own seeded stream.
#[derive(Debug, Clone)]
pub struct StrategyAgent {
    pub puzzle: PuzzleId,
    pub difficulty: Difficulty,
    pub policy: PolicyKind,
    pub tunables: Tunables,
    rng: ChaCha8Rng,
}

impl StrategyAgent {
    pub fn new(puzzle: PuzzleId, difficulty: Difficulty, policy: PolicyKind, seed: u64) -> Result<Self, StrategyError> {
        if !supports(policy, puzzle) {
            return Err(StrategyError::Unsupported { policy, puzzle });
        }
        Ok(StrategyAgent { puzzle, difficulty, policy, tunables: Tunables::default(), rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    /// The table strategy for this puzzle and difficulty.
    pub fn baseline(puzzle: PuzzleId, difficulty: Difficulty, seed: u64) -> Self {
        Self::new(puzzle, difficulty, table_policy(puzzle, difficulty), seed).expect("table policies are implemented")
    }

    pub fn with_tunables(mut self, tunables: Tunables) -> Self {
        self.tunables = tunables;
        self
    }

    pub fn label(&self) -> String {
        format!("{}:{}", self.policy, self.puzzle)
    }

    /// Picks a move for the active player of `state`.
    pub fn choose(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        let view = public_view(state, state.active);
        let legal = legal_moves(&view);
        if legal.moves.is_empty() && !legal.truncated {
            return Err(StrategyError::NoLegalMoves);
        }
        if legal.moves.len() == 1 && !legal.truncated {
            return Ok(legal.moves[0].clone());
        }
        let mv = self.decide(&view, &legal.moves)?;
        if !legal.truncated && !legal.moves.contains(&mv) {
            return Err(StrategyError::IllegalChoice(mv));
        }
        Ok(mv)
    }

    fn decide(&mut self, view: &GameState, legal: &[Move]) -> Result<Move, StrategyError> {
        let me = view.active;
        let t = self.tunables;
        match (self.policy, &view.payload) {
            (PolicyKind::Random, _) => random::random_move(legal, &mut self.rng),
            (PolicyKind::Greedy, Payload::SudoKill(b)) => greedy::sudokill(b),
            (PolicyKind::Greedy, Payload::ExclusivityParticles(p)) => greedy::particles(p),
            (PolicyKind::Greedy, Payload::ExclusivityProbes(w)) => greedy::probes(w, &mut self.rng),
            (PolicyKind::Greedy, Payload::BeatOrBomb(d)) => greedy::beatorbomb(d, me),
            (PolicyKind::Greedy, Payload::MaxTarget(w) | Payload::LargerTarget(w)) => greedy::bags(w, me),
            (PolicyKind::DynamicProgramming, Payload::TidyTower(tower)) => tower::next_move(tower),
            (PolicyKind::DynamicProgramming, Payload::CardNim(n)) => nim::cardnim_dp(n, me, nim::DEFAULT_CAP),
            (PolicyKind::SimulatedAnnealing, Payload::OptimalTouring(tour)) => {
                touring::next_move(tour, &t.sa, &mut self.rng)
            }
            (PolicyKind::BruteForce, Payload::CountMaximalCocktails(g)) => cocktails::answer(g),
            (PolicyKind::BruteForce, Payload::MaxMaximalCocktails(g)) => cocktails::edge_game_move(g),
            (PolicyKind::BruteForce, Payload::ExclusivityParticles(p)) => particles::particles_bruteforce(p),
            (PolicyKind::Mcts, Payload::RubyRisks(w)) => {
                Ok(Move::Request { amount: ruby::ruby_mcts(w, &t.mcts, &mut self.rng).action })
            }
            (PolicyKind::Search, Payload::Superply(b)) => superply::superply_search(b, me, t.search_depth),
            (policy, _) => Err(StrategyError::Unsupported { policy, puzzle: view.puzzle }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        use PolicyKind::*;
        let rows = [
            (PuzzleId::SudoKill, Random, Greedy),
            (PuzzleId::TidyTower, DynamicProgramming, DynamicProgramming),
            (PuzzleId::CardNim, Random, DynamicProgramming),
            (PuzzleId::OptimalTouring, SimulatedAnnealing, SimulatedAnnealing),
            (PuzzleId::CountMaximalCocktails, BruteForce, BruteForce),
            (PuzzleId::MaxMaximalCocktails, Random, BruteForce),
            (PuzzleId::ExclusivityParticles, BruteForce, Greedy),
            (PuzzleId::ExclusivityProbes, Random, Greedy),
            (PuzzleId::RubyRisks, Mcts, Mcts),
            (PuzzleId::BeatOrBomb, Random, Greedy),
            (PuzzleId::MaxTarget, Greedy, Greedy),
            (PuzzleId::LargerTarget, Random, Greedy),
            (PuzzleId::Superply, Random, Search),
        ];
        for (p, e, n) in rows {
            assert_eq!(table_policy(p, Difficulty::Easy), e, "{p}");
            assert_eq!(table_policy(p, Difficulty::Normal), n, "{p}");
            assert!(supports(e, p) && supports(n, p));
        }
    }

    #[test]
    fn policy_names_parse_back() {
        for p in PolicyKind::ALL {
            assert_eq!(p.name().parse::<PolicyKind>().unwrap(), p);
        }
        assert_eq!("Searching".parse::<PolicyKind>().unwrap(), PolicyKind::Search);
    }
}
