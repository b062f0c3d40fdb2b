//! Participants in a match: built-in strategies or external programs.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use ppx_core::{format_move, legal_moves, observe, public_view, Feedback, GameState, Move, Player, PuzzleId, PuzzleTemplate, TerminationStatus};
use ppx_strategies::{PolicyKind, StrategyAgent, Tunables};

use crate::runner::Limits;
use crate::session::{ExternalSession, SessionFailure};
use crate::wire::{decode_move, ToAgent};
use crate::HarnessError;

/// Unparseable replies tolerated per move; the last failure forfeits.
pub const FORMAT_ATTEMPTS: usize = 5;

/// How to build a participant. Parses from `baseline`, a policy name such
/// as `random` or `greedy`, or `cmd:<program> [args...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgentSpec {
    /// `None` plays the table strategy for the puzzle and difficulty.
    Builtin(Option<PolicyKind>),
    Program(Vec<String>),
}

impl FromStr for AgentSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(cmd) = s.strip_prefix("cmd:") {
            let parts: Vec<String> = cmd.split_whitespace().map(String::from).collect();
            if parts.is_empty() {
                return Err("cmd: needs a program".into());
            }
            return Ok(AgentSpec::Program(parts));
        }
        if s.eq_ignore_ascii_case("baseline") {
            return Ok(AgentSpec::Builtin(None));
        }
        s.parse::<PolicyKind>().map(|p| AgentSpec::Builtin(Some(p)))
    }
}

impl fmt::Display for AgentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgentSpec::Builtin(None) => f.write_str("baseline"),
            AgentSpec::Builtin(Some(p)) => write!(f, "{p}"),
            AgentSpec::Program(cmd) => write!(f, "cmd:{}", cmd.join(" ")),
        }
    }
}

impl AgentSpec {
    pub fn supports(&self, puzzle: PuzzleId) -> bool {
        match self {
            AgentSpec::Builtin(Some(p)) => ppx_strategies::supports(*p, puzzle),
            _ => true,
        }
    }
}

/// FNV-1a over the match seed, seat and agent name, so every built-in gets
/// its own reproducible stream.
fn agent_seed(seed: u64, seat: usize, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in seed.to_le_bytes().into_iter().chain([seat as u8]).chain(name.bytes()) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

#[derive(Debug)]
enum Kind {
    Builtin(Box<StrategyAgent>),
    Program { command: Vec<String>, session: Option<ExternalSession>, waited: Duration },
}

/// One seat's agent for the length of one match.
#[derive(Debug)]
pub struct AgentHandle {
    pub name: String,
    seat: Player,
    kind: Kind,
}

/// What `with_format_retries` produced and how many replies it read.
#[derive(Debug, Clone, PartialEq)]
pub struct RetryOutcome {
    pub result: Result<Move, TerminationStatus>,
    pub attempts: usize,
}

/// Reads replies until one parses as a move for `puzzle`, giving up after
/// `FORMAT_ATTEMPTS`. `next` receives the attempt number (from 1) and the
/// previous parse error; an `Err` from it ends the move with that status.
pub fn with_format_retries<F>(puzzle: PuzzleId, mut next: F) -> RetryOutcome
where
    F: FnMut(usize, Option<&str>) -> Result<String, TerminationStatus>,
{
    let mut error: Option<String> = None;
    for attempt in 1..=FORMAT_ATTEMPTS {
        let line = match next(attempt, error.as_deref()) {
            Ok(line) => line,
            Err(status) => return RetryOutcome { result: Err(status), attempts: attempt },
        };
        match decode_move(puzzle, &line) {
            Ok(mv) => return RetryOutcome { result: Ok(mv), attempts: attempt },
            Err(e) => error = Some(e),
        }
    }
    RetryOutcome { result: Err(TerminationStatus::NotFollowInstruction), attempts: FORMAT_ATTEMPTS }
}

impl AgentHandle {
    pub fn new(name: &str, spec: &AgentSpec, template: &PuzzleTemplate, seat: Player, tunables: Tunables) -> Result<Self, HarnessError> {
        let kind = match spec {
            AgentSpec::Builtin(policy) => {
                let seed = agent_seed(template.seed, seat.seat(), name);
                let agent = match policy {
                    None => StrategyAgent::baseline(template.puzzle, template.difficulty, seed),
                    Some(p) => StrategyAgent::new(template.puzzle, template.difficulty, *p, seed)
                        .map_err(|e| HarnessError::Config(format!("participant {name}: {e}")))?,
                };
                Kind::Builtin(Box::new(agent.with_tunables(tunables)))
            }
            AgentSpec::Program(command) => Kind::Program { command: command.clone(), session: None, waited: Duration::ZERO },
        };
        Ok(AgentHandle { name: name.to_string(), seat, kind })
    }

    /// Launches an external program and completes the handshake.
    pub fn start(&mut self, template: &PuzzleTemplate, limits: &Limits) -> Result<(), TerminationStatus> {
        let Kind::Program { command, session, waited } = &mut self.kind else { return Ok(()) };
        let init = ToAgent::Init {
            puzzle: template.puzzle,
            difficulty: template.difficulty,
            seed: template.seed,
            seat: self.seat,
            time_limit: limits.move_time.as_secs_f64(),
        };
        match ExternalSession::launch(command, &init, limits.move_time, limits.cpu_seconds) {
            Ok(s) => {
                *waited += s.waited;
                *session = Some(s);
                Ok(())
            }
            Err(failure) => Err(failure.status()),
        }
    }

    /// A move for the current state, or the status the seat forfeits with.
    pub fn choose(&mut self, state: &GameState) -> Result<Move, TerminationStatus> {
        match &mut self.kind {
            Kind::Builtin(agent) => agent.choose(state).map_err(|_| TerminationStatus::RuntimeError),
            Kind::Program { session, waited, .. } => {
                let s = session.as_mut().ok_or(TerminationStatus::RuntimeError)?;
                let view = public_view(state, self.seat);
                let legal = legal_moves(&view);
                let obs = ToAgent::Observation {
                    turn: state.turn_index,
                    text: observe(state, self.seat),
                    legal: legal.moves.iter().map(format_move).collect(),
                    truncated: legal.truncated,
                };
                let before = s.waited;
                let outcome = with_format_retries(state.puzzle, |attempt, error| {
                    if attempt == 1 {
                        s.send(&obs)
                    } else {
                        s.send(&ToAgent::Retry {
                            attempt,
                            attempts_left: FORMAT_ATTEMPTS + 1 - attempt,
                            error: error.unwrap_or_default().to_string(),
                        })
                    }
                    .and_then(|_| s.recv())
                    .map_err(|f: SessionFailure| f.status())
                });
                *waited += s.waited - before;
                if outcome.result.is_err() {
                    *session = None;
                }
                outcome.result
            }
        }
    }

    pub fn notify(&mut self, feedback: &Feedback) {
        if let Kind::Program { session: Some(s), .. } = &mut self.kind {
            let _ = s.send(&ToAgent::Feedback(feedback.clone()));
        }
    }

    pub fn finish(&mut self, scores: &[f64], statuses: &[TerminationStatus]) {
        if let Kind::Program { session, .. } = &mut self.kind {
            if let Some(s) = session.take() {
                s.shutdown(&ToAgent::End { scores: scores.to_vec(), statuses: statuses.to_vec() });
            }
        }
    }

    /// Time spent waiting on an external program; zero for built-ins.
    pub fn waited(&self) -> Duration {
        match &self.kind {
            Kind::Builtin(_) => Duration::ZERO,
            Kind::Program { waited, .. } => *waited,
        }
    }
}
