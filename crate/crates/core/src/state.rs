//! Engine value types: players, moves, feedback and the game state itself.

use serde::{Deserialize, Serialize};

use crate::puzzles::{
    bags::BagWorld, beatorbomb::CardDuelState, cardnim::NimState, cocktails::CocktailGraph,
    cocktails::EdgeGameState, particles::ParticleSpace, probes::ProbeWorld, ruby::RubyWorld,
    sudokill::SudokillBoard, superply::SuperplyBoard, tidytower::TowerState, touring::TourState,
};
use crate::rng::SeedKey;
use crate::template::{Difficulty, PuzzleId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
    Solo,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
            Player::Solo => Player::Solo,
        }
    }

    /// Seat index in per-player vectors.
    pub fn seat(self) -> usize {
        match self {
            Player::P1 | Player::Solo => 0,
            Player::P2 => 1,
        }
    }

    pub fn from_seat(puzzle: PuzzleId, seat: usize) -> Player {
        match (puzzle.is_two_player(), seat) {
            (false, _) => Player::Solo,
            (true, 0) => Player::P1,
            (true, _) => Player::P2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Player::P1 => "P1",
            Player::P2 => "P2",
            Player::Solo => "Solo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    Running,
    Finished,
}

/// How a match ended for one participant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TerminationStatus {
    Legal,
    NotFollowInstruction,
    Timeout,
    RuleViolation,
    RuntimeError,
    SyntaxError,
}

impl TerminationStatus {
    pub const ALL: [TerminationStatus; 6] = [
        TerminationStatus::Legal,
        TerminationStatus::NotFollowInstruction,
        TerminationStatus::Timeout,
        TerminationStatus::RuleViolation,
        TerminationStatus::RuntimeError,
        TerminationStatus::SyntaxError,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TerminationStatus::Legal => "Legal",
            TerminationStatus::NotFollowInstruction => "NotFollowInstruction",
            TerminationStatus::Timeout => "Timeout",
            TerminationStatus::RuleViolation => "RuleViolation",
            TerminationStatus::RuntimeError => "RuntimeError",
            TerminationStatus::SyntaxError => "SyntaxError",
        }
    }
}

/// One move; the variant must belong to the state's puzzle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// SudoKill placement, 0-indexed cell.
    Place { row: usize, col: usize, value: u8 },
    /// TidyTower: advance cubes `position..=top` by `turns` steps (1-based).
    Rotate { position: usize, turns: u8 },
    /// TidyTower: advance cubes `position..hold` by `turns` steps (1-based).
    RotateHold { position: usize, hold: usize, turns: u8 },
    /// CardNim: play the card with this value.
    PlayCard { card: u32 },
    /// OptimalTouring: travel to and visit a site (1-based id).
    Visit { site: usize },
    /// OptimalTouring: end the day.
    FinishTour,
    /// CountMaximalCocktails easy answer.
    AnswerCount { count: u64 },
    /// CountMaximalCocktails normal answer.
    AnswerFamily { sets: Vec<Vec<u32>> },
    /// MaxMaximalCocktails: add an interaction edge.
    AddEdge { u: u32, v: u32 },
    /// ExclusivityParticles placement.
    PlaceParticle { position: Vec<u8> },
    /// ExclusivityProbes query.
    Probe { position: Vec<u8> },
    /// RubyRisks request for the next box.
    Request { amount: u32 },
    /// BeatOrBomb: commit a card and a decision.
    DuelPlay { card: u8, compete: bool },
    /// MaxTarget / LargerTarget: draw from a visible bag index.
    PickBag { index: usize },
    /// Superply claim, 1-indexed cell.
    Claim { row: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Legality {
    Legal,
    Illegal(String),
    /// Answer could not be interpreted at all; maps onto NotFollowInstruction.
    Malformed(String),
}

impl Legality {
    pub fn is_legal(&self) -> bool {
        matches!(self, Legality::Legal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", content = "value", rename_all = "snake_case")]
pub enum Outcome {
    Win(Player),
    Tie,
    SoloScore(f64),
}

/// Newly public information produced by a move.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Revealed {
    ProbeAnswer { yes: bool },
    Coin { index: usize, value: u32 },
    RubyGain { gain: u32 },
    RoundResult {
        p1_card: u8,
        p1_compete: bool,
        p2_card: u8,
        p2_compete: bool,
        p1_points: u32,
        p2_points: u32,
    },
    Visit { site: usize, start: u32, end: u32, counted: bool, value: u32 },
    CocktailCount { count: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Feedback {
    pub legality: Legality,
    pub terminated: bool,
    pub outcome: Option<Outcome>,
    pub revealed: Option<Revealed>,
}

/// Hidden chance stream: every stochastic resolution draws from child `counter`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChanceStream {
    pub key: u64,
    pub counter: u64,
}

impl ChanceStream {
    pub fn new(key: SeedKey) -> Self {
        ChanceStream { key: key.value(), counter: 0 }
    }

    pub fn next_rng(&mut self) -> rand_chacha::ChaCha8Rng {
        let rng = SeedKey::root(self.key).child(self.counter).rng();
        self.counter += 1;
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub player: Player,
    pub status: TerminationStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "puzzle")]
pub enum Payload {
    SudoKill(SudokillBoard),
    TidyTower(TowerState),
    CardNim(NimState),
    OptimalTouring(TourState),
    CountMaximalCocktails(CocktailGraph),
    MaxMaximalCocktails(EdgeGameState),
    ExclusivityParticles(ParticleSpace),
    ExclusivityProbes(ProbeWorld),
    RubyRisks(RubyWorld),
    BeatOrBomb(CardDuelState),
    MaxTarget(BagWorld),
    LargerTarget(BagWorld),
    Superply(SuperplyBoard),
}

impl Payload {
    pub fn puzzle(&self) -> PuzzleId {
        match self {
            Payload::SudoKill(_) => PuzzleId::SudoKill,
            Payload::TidyTower(_) => PuzzleId::TidyTower,
            Payload::CardNim(_) => PuzzleId::CardNim,
            Payload::OptimalTouring(_) => PuzzleId::OptimalTouring,
            Payload::CountMaximalCocktails(_) => PuzzleId::CountMaximalCocktails,
            Payload::MaxMaximalCocktails(_) => PuzzleId::MaxMaximalCocktails,
            Payload::ExclusivityParticles(_) => PuzzleId::ExclusivityParticles,
            Payload::ExclusivityProbes(_) => PuzzleId::ExclusivityProbes,
            Payload::RubyRisks(_) => PuzzleId::RubyRisks,
            Payload::BeatOrBomb(_) => PuzzleId::BeatOrBomb,
            Payload::MaxTarget(_) => PuzzleId::MaxTarget,
            Payload::LargerTarget(_) => PuzzleId::LargerTarget,
            Payload::Superply(_) => PuzzleId::Superply,
        }
    }
}

/// The full state Sₙ, hidden parts included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameState {
    pub puzzle: PuzzleId,
    pub difficulty: Difficulty,
    pub turn_index: u32,
    pub active: Player,
    pub phase: Phase,
    pub outcome: Option<Outcome>,
    pub violation: Option<Violation>,
    pub chance: ChanceStream,
    pub payload: Payload,
}

impl GameState {
    pub fn is_running(&self) -> bool {
        self.phase == Phase::Running
    }

    pub fn players(&self) -> Vec<Player> {
        if self.puzzle.is_two_player() {
            vec![Player::P1, Player::P2]
        } else {
            vec![Player::Solo]
        }
    }

    /// Per-seat termination status as far as the rules are concerned.
    pub fn statuses(&self) -> Vec<TerminationStatus> {
        self.players()
            .into_iter()
            .map(|p| match self.violation {
                Some(v) if v.player == p => v.status,
                _ => TerminationStatus::Legal,
            })
            .collect()
    }

    /// Short content hash of the full state (hidden parts included).
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let bytes = serde_json::to_vec(self).expect("state serializes");
        let hash = Sha256::digest(&bytes);
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}
