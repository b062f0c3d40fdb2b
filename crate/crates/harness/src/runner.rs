//! The observe, choose, step loop for one match.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use ppx_core::{MatchRecord, Player, PuzzleTemplate, Recorder};

use crate::agent::AgentHandle;
use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    /// Wall-clock limit on each reply from an external program.
    pub move_time: Duration,
    /// CPU-second limit for each external program process.
    pub cpu_seconds: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { move_time: Duration::from_secs(30), cpu_seconds: Some(300) }
    }
}

/// Plays `template` to the end. Agent failures become termination statuses;
/// only engine errors are returned. The record's wall time counts time spent
/// waiting on external programs, so built-in matches replay byte for byte.
pub fn run_match(template: &PuzzleTemplate, agents: &mut [AgentHandle], limits: &Limits) -> Result<MatchRecord, HarnessError> {
    let arity = template.puzzle.arity();
    if agents.len() != arity {
        return Err(HarnessError::Config(format!("{} needs {arity} agents, got {}", template.puzzle, agents.len())));
    }
    let names = agents.iter().map(|a| a.name.clone()).collect();
    let mut rec = Recorder::new(template.clone(), names)?;

    for (seat, agent) in agents.iter_mut().enumerate() {
        if let Err(status) = agent.start(template, limits) {
            rec.forfeit(Player::from_seat(template.puzzle, seat), status)?;
            break;
        }
    }

    while rec.state().is_running() {
        let mover = rec.state().active;
        let agent = &mut agents[mover.seat()];
        match agent.choose(rec.state()) {
            Ok(mv) => {
                let feedback = rec.play(mv)?.clone();
                agent.notify(&feedback);
            }
            Err(status) => {
                rec.forfeit(mover, status)?;
            }
        }
    }

    let waited: Duration = agents.iter().map(AgentHandle::waited).sum();
    let record = rec.finish(waited.as_secs_f64())?;
    for agent in agents.iter_mut() {
        agent.finish(&record.raw_scores, &record.statuses);
    }
    Ok(record)
}
