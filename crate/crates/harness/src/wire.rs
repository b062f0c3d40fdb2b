//! The agent wire protocol: one JSON object per line, `{"type", "payload"}`,
//! over the agent's standard input and output.
//!
//! ```text
//! engine -> agent   init         {puzzle, difficulty, seed, seat, time_limit}
//! agent  -> engine  ready        {}
//! engine -> agent   observation  {turn, text, legal, truncated}
//! agent  -> engine  move         {move: "<one move line>"}
//! engine -> agent   retry        {attempt, attempts_left, error}
//! engine -> agent   feedback     {legality, terminated, outcome, revealed}
//! engine -> agent   end          {scores, statuses}
//! ```

use serde::{Deserialize, Serialize};

use ppx_core::{parse_move, Difficulty, Feedback, Move, Player, PuzzleId, TerminationStatus};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "payload", rename_all = "snake_case")]
pub enum ToAgent {
    Init { puzzle: PuzzleId, difficulty: Difficulty, seed: u64, seat: Player, time_limit: f64 },
    Observation { turn: u32, text: String, legal: Vec<String>, truncated: bool },
    Retry { attempt: usize, attempts_left: usize, error: String },
    Feedback(Feedback),
    End { scores: Vec<f64>, statuses: Vec<TerminationStatus> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "payload", rename_all = "snake_case")]
pub enum FromAgent {
    Ready {},
    Move {
        #[serde(rename = "move")]
        text: String,
    },
}

impl ToAgent {
    pub fn to_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("wire messages serialize");
        s.push('\n');
        s
    }
}

impl FromAgent {
    pub fn to_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("wire messages serialize");
        s.push('\n');
        s
    }
}

/// Decodes a reply line into a move for `puzzle`.
pub fn decode_move(puzzle: PuzzleId, line: &str) -> Result<Move, String> {
    match serde_json::from_str::<FromAgent>(line.trim()) {
        Ok(FromAgent::Move { text }) => parse_move(puzzle, &text).map_err(|e| e.to_string()),
        Ok(other) => Err(format!("expected a move message, got {other:?}")),
        Err(e) => Err(format!("not a protocol message: {e}")),
    }
}
