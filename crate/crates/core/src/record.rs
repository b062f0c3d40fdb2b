//! Match records and the line-delimited JSON replay format.
//!
//! A replay file starts with a header line carrying the format tag, the
//! template and the per-seat results, followed by one line per applied
//! action. Re-simulating the actions from the template must reproduce every
//! recorded state hash and feedback exactly.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{forfeit, instantiate, raw_scores, step};
use crate::error::EngineError;
use crate::state::{Feedback, GameState, Move, Player, TerminationStatus};
use crate::template::PuzzleTemplate;

pub const REPLAY_FORMAT: &str = "ppx-replay/1";

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("replay i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("replay line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported replay format {0:?}")]
    Format(String),
    #[error("corrupt replay at turn {turn}: {reason}")]
    CorruptReplay { turn: usize, reason: String },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Action {
    Move {
        player: Player,
        #[serde(rename = "move")]
        mv: Move,
    },
    /// The harness ended the match for a failure outside the rules.
    Forfeit { player: Player, status: TerminationStatus },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Turn {
    /// Digest of the state the action was applied to.
    pub state_hash: String,
    pub action: Action,
    pub feedback: Feedback,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchRecord {
    pub template: PuzzleTemplate,
    /// Agent names by seat.
    pub agents: Vec<String>,
    pub trajectory: Vec<Turn>,
    pub statuses: Vec<TerminationStatus>,
    pub raw_scores: Vec<f64>,
    pub wall_time: f64,
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    template: PuzzleTemplate,
    agents: Vec<String>,
    statuses: Vec<TerminationStatus>,
    raw_scores: Vec<f64>,
    wall_time: f64,
    turns: usize,
}

#[derive(Serialize, Deserialize)]
struct Line {
    turn: usize,
    #[serde(flatten)]
    entry: Turn,
}

/// Builds a record while a match is being played.
#[derive(Debug, Clone)]
pub struct Recorder {
    template: PuzzleTemplate,
    agents: Vec<String>,
    state: GameState,
    trajectory: Vec<Turn>,
}

impl Recorder {
    pub fn new(template: PuzzleTemplate, agents: Vec<String>) -> Result<Self, EngineError> {
        let state = instantiate(&template)?;
        Ok(Recorder { template, agents, state, trajectory: Vec::new() })
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn template(&self) -> &PuzzleTemplate {
        &self.template
    }

    pub fn play(&mut self, mv: Move) -> Result<&Feedback, EngineError> {
        let player = self.state.active;
        let (next, feedback) = step(&self.state, &mv)?;
        self.push(next, Action::Move { player, mv }, feedback);
        Ok(&self.trajectory.last().expect("just pushed").feedback)
    }

    pub fn forfeit(&mut self, player: Player, status: TerminationStatus) -> Result<&Feedback, EngineError> {
        let (next, feedback) = forfeit(&self.state, player, status)?;
        self.push(next, Action::Forfeit { player, status }, feedback);
        Ok(&self.trajectory.last().expect("just pushed").feedback)
    }

    fn push(&mut self, next: GameState, action: Action, feedback: Feedback) {
        let state_hash = self.state.digest();
        self.trajectory.push(Turn { state_hash, action, feedback });
        self.state = next;
    }

    pub fn finish(self, wall_time: f64) -> Result<MatchRecord, EngineError> {
        let raw_scores = raw_scores(&self.state)?;
        Ok(MatchRecord {
            statuses: self.state.statuses(),
            template: self.template,
            agents: self.agents,
            trajectory: self.trajectory,
            raw_scores,
            wall_time,
        })
    }
}

/// Re-simulates a trajectory from its template, returning the final state.
pub fn resimulate(record: &MatchRecord) -> Result<GameState, ReplayError> {
    let mut state = instantiate(&record.template)?;
    for (i, turn) in record.trajectory.iter().enumerate() {
        let corrupt = |reason: String| ReplayError::CorruptReplay { turn: i, reason };
        if state.digest() != turn.state_hash {
            return Err(corrupt(format!("state hash {} != recorded {}", state.digest(), turn.state_hash)));
        }
        let result = match &turn.action {
            Action::Move { player, mv } => {
                if *player != state.active {
                    return Err(corrupt(format!("{} moved but {} was to move", player.label(), state.active.label())));
                }
                step(&state, mv)
            }
            Action::Forfeit { player, status } => forfeit(&state, *player, *status),
        };
        let (next, feedback) = result.map_err(|e| corrupt(e.to_string()))?;
        if feedback != turn.feedback {
            return Err(corrupt(format!("feedback {feedback:?} != recorded {:?}", turn.feedback)));
        }
        state = next;
    }
    Ok(state)
}

/// Raw scores implied by the trajectory.
pub fn evaluate(record: &MatchRecord) -> Result<Vec<f64>, ReplayError> {
    let state = resimulate(record)?;
    Ok(raw_scores(&state)?)
}

/// Checks a record end to end: trajectory, statuses and scores.
pub fn verify(record: &MatchRecord) -> Result<(), ReplayError> {
    let state = resimulate(record)?;
    let end = record.trajectory.len();
    let scores = raw_scores(&state).map_err(|e| ReplayError::CorruptReplay { turn: end, reason: e.to_string() })?;
    if scores != record.raw_scores {
        return Err(ReplayError::CorruptReplay {
            turn: end,
            reason: format!("scores {scores:?} != recorded {:?}", record.raw_scores),
        });
    }
    if state.statuses() != record.statuses {
        return Err(ReplayError::CorruptReplay { turn: end, reason: "statuses differ".into() });
    }
    Ok(())
}

pub fn write_replay<W: Write>(record: &MatchRecord, mut out: W) -> Result<(), ReplayError> {
    let header = Header {
        format: REPLAY_FORMAT.to_string(),
        template: record.template.clone(),
        agents: record.agents.clone(),
        statuses: record.statuses.clone(),
        raw_scores: record.raw_scores.clone(),
        wall_time: record.wall_time,
        turns: record.trajectory.len(),
    };
    serde_json::to_writer(&mut out, &header).map_err(std::io::Error::from)?;
    out.write_all(b"\n")?;
    for (turn, entry) in record.trajectory.iter().enumerate() {
        let line = Line { turn, entry: entry.clone() };
        serde_json::to_writer(&mut out, &line).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn to_jsonl(record: &MatchRecord) -> String {
    let mut buf = Vec::new();
    write_replay(record, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("json is utf-8")
}

pub fn read_replay<R: BufRead>(input: R) -> Result<MatchRecord, ReplayError> {
    let mut lines = input.lines().enumerate().filter(|(_, l)| !matches!(l, Ok(s) if s.trim().is_empty()));
    let (_, first) = lines.next().ok_or(ReplayError::Parse { line: 1, message: "empty replay".into() })?;
    let header: Header =
        serde_json::from_str(&first?).map_err(|e| ReplayError::Parse { line: 1, message: e.to_string() })?;
    if header.format != REPLAY_FORMAT {
        return Err(ReplayError::Format(header.format));
    }
    let mut trajectory = Vec::with_capacity(header.turns);
    for (i, line) in lines {
        let parsed: Line =
            serde_json::from_str(&line?).map_err(|e| ReplayError::Parse { line: i + 1, message: e.to_string() })?;
        if parsed.turn != trajectory.len() {
            return Err(ReplayError::Parse { line: i + 1, message: format!("turn {} out of order", parsed.turn) });
        }
        trajectory.push(parsed.entry);
    }
    if trajectory.len() != header.turns {
        return Err(ReplayError::Parse {
            line: trajectory.len() + 1,
            message: format!("expected {} turns, found {}", header.turns, trajectory.len()),
        });
    }
    Ok(MatchRecord {
        template: header.template,
        agents: header.agents,
        trajectory,
        statuses: header.statuses,
        raw_scores: header.raw_scores,
        wall_time: header.wall_time,
    })
}

pub fn from_jsonl(text: &str) -> Result<MatchRecord, ReplayError> {
    read_replay(text.as_bytes())
}

/// Serializes, parses back and re-simulates a record.
pub fn replay_roundtrip(record: &MatchRecord) -> Result<MatchRecord, ReplayError> {
    let back = from_jsonl(&to_jsonl(record))?;
    // Unfinished records have no scores to check yet.
    if resimulate(&back)?.is_running() {
        return Ok(back);
    }
    verify(&back)?;
    Ok(back)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::legal_moves;
    use crate::template::{Difficulty, PuzzleId};

    fn play_first_legal(puzzle: PuzzleId, seed: u64) -> MatchRecord {
        let t = PuzzleTemplate::new(puzzle, Difficulty::Easy, seed);
        let mut r = Recorder::new(t, vec!["a".into(), "b".into()]).unwrap();
        while r.state().is_running() {
            let mv = legal_moves(r.state()).moves[0].clone();
            r.play(mv).unwrap();
        }
        r.finish(0.25).unwrap()
    }

    #[test]
    fn unplayed_record_round_trips() {
        let t = PuzzleTemplate::new(PuzzleId::CardNim, Difficulty::Easy, 1);
        let record = MatchRecord {
            template: t,
            agents: vec![],
            trajectory: vec![],
            statuses: vec![TerminationStatus::Legal; 2],
            raw_scores: vec![],
            wall_time: 0.0,
        };
        assert_eq!(replay_roundtrip(&record).unwrap(), record);
    }

    #[test]
    fn finished_matches_resimulate() {
        for p in PuzzleId::ALL {
            let rec = play_first_legal(p, 4);
            let back = replay_roundtrip(&rec).unwrap();
            assert_eq!(back, rec);
            assert_eq!(to_jsonl(&back), to_jsonl(&rec));
            assert_eq!(evaluate(&rec).unwrap(), rec.raw_scores);
            assert!(to_jsonl(&rec).starts_with("{\"format\":\"ppx-replay/1\""));
        }
    }

    #[test]
    fn tampered_move_is_corrupt() {
        let mut rec = play_first_legal(PuzzleId::CardNim, 2);
        if let Action::Move { mv: Move::PlayCard { card }, .. } = &mut rec.trajectory[0].action {
            *card += 1;
        }
        assert!(matches!(verify(&rec), Err(ReplayError::CorruptReplay { .. })));
    }

    #[test]
    fn forfeits_replay() {
        let t = PuzzleTemplate::new(PuzzleId::SudoKill, Difficulty::Easy, 8);
        let mut r = Recorder::new(t, vec!["a".into(), "b".into()]).unwrap();
        r.forfeit(Player::P1, TerminationStatus::Timeout).unwrap();
        let rec = r.finish(1.0).unwrap();
        assert_eq!(rec.raw_scores, vec![0.0, 1.0]);
        assert_eq!(rec.statuses, vec![TerminationStatus::Timeout, TerminationStatus::Legal]);
        verify(&replay_roundtrip(&rec).unwrap()).unwrap();
    }

    #[test]
    fn wrong_format_tag_rejected() {
        let rec = play_first_legal(PuzzleId::RubyRisks, 1);
        let text = to_jsonl(&rec).replace("ppx-replay/1", "ppx-replay/9");
        assert!(matches!(from_jsonl(&text), Err(ReplayError::Format(_))));
    }
}
