//! Whole tournaments: every configured puzzle and difficulty, one rayon
//! pool, then the report.

use std::path::Path;

use ppx_core::MatchRecord;

use crate::config::Resolved;
use crate::protocol::{run_instruction_protocol, run_program_protocol, Mode};
use crate::report::{write_replays, Report};
use crate::HarnessError;

#[derive(Debug, Clone)]
pub struct Tournament {
    pub records: Vec<MatchRecord>,
    pub report: Report,
}

pub fn run_tournament(cfg: &Resolved) -> Result<Tournament, HarnessError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?;
    let records = pool.install(|| -> Result<Vec<MatchRecord>, HarnessError> {
        let mut all = Vec::new();
        for &puzzle in &cfg.puzzles {
            for &difficulty in &cfg.difficulties {
                let recs = match cfg.mode {
                    Mode::Instruction => run_instruction_protocol(puzzle, difficulty, &cfg.participants, &cfg.options)?,
                    Mode::Program => run_program_protocol(puzzle, difficulty, &cfg.participants, &cfg.options)?,
                };
                all.extend(recs);
            }
        }
        Ok(all)
    })?;
    let report = Report::from_records(&records, cfg.groups().as_ref(), cfg.elo_seed, cfg.elo_resamples)?;
    Ok(Tournament { records, report })
}

/// Replays go under `dir/replays`, tables into `dir`.
pub fn write_tournament(t: &Tournament, dir: &Path) -> Result<(), HarnessError> {
    write_replays(&t.records, &dir.join("replays"))?;
    t.report.write(dir)
}
