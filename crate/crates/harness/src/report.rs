//! Everything written after a tournament: replays, score tables, Elo,
//! win matrices, status breakdowns and sample aggregates.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use ppx_core::record::{read_replay, verify, write_replay};
use ppx_core::{Difficulty, MatchRecord, PuzzleId, TerminationStatus};
use ppx_scoring::{
    aggregate_samples, duel_results, normalized_scores, solo_to_matches, status_distribution, tournament_elo, win_matrix,
    EloEstimate, ScoreTable, StatusDistribution, WinMatrix,
};

use crate::HarnessError;

#[derive(Debug, Clone, PartialEq)]
pub struct EloRow {
    pub difficulty: Difficulty,
    pub participant: String,
    pub estimate: EloEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub puzzle: PuzzleId,
    pub difficulty: Difficulty,
    pub group: String,
    pub samples: usize,
    pub avg: f64,
    pub best: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub scores: ScoreTable,
    pub elo: Vec<EloRow>,
    pub statuses: BTreeMap<String, StatusDistribution>,
    pub win_matrices: Vec<(PuzzleId, Difficulty, WinMatrix)>,
    /// Present when participants were grouped into program samples.
    pub aggregates: Vec<AggregateRow>,
}

impl Report {
    /// `groups` maps participant names to sample groups; pass it to get
    /// Avg/Best aggregates.
    pub fn from_records(records: &[MatchRecord], groups: Option<&BTreeMap<String, String>>, elo_seed: u64, resamples: usize) -> Result<Self, HarnessError> {
        let normalized = normalized_scores(records)?;
        let scores = ScoreTable::from_scores(&normalized);

        let mut elo = Vec::new();
        for difficulty in Difficulty::ALL {
            let mut per_seed: BTreeMap<(PuzzleId, u64), BTreeMap<String, Vec<f64>>> = BTreeMap::new();
            for s in normalized.iter().filter(|s| s.difficulty == difficulty && !s.puzzle.is_two_player()) {
                per_seed.entry((s.puzzle, s.seed)).or_default().entry(s.participant.clone()).or_default().push(s.normalized);
            }
            let seeds: Vec<BTreeMap<String, f64>> = per_seed
                .into_values()
                .map(|m| m.into_iter().map(|(k, v)| (k, v.iter().sum::<f64>() / v.len() as f64)).collect())
                .collect();
            let mut log = solo_to_matches(&seeds);
            let duels: Vec<MatchRecord> = records.iter().filter(|r| r.template.difficulty == difficulty).cloned().collect();
            log.extend(duel_results(&duels)?);
            if log.is_empty() {
                continue;
            }
            for (participant, estimate) in tournament_elo(&log, elo_seed, resamples) {
                elo.push(EloRow { difficulty, participant, estimate });
            }
        }

        let mut by_game: BTreeMap<(PuzzleId, Difficulty), Vec<MatchRecord>> = BTreeMap::new();
        for r in records.iter().filter(|r| r.template.puzzle.is_two_player()) {
            by_game.entry((r.template.puzzle, r.template.difficulty)).or_default().push(r.clone());
        }
        let mut win_matrices = Vec::new();
        for ((puzzle, difficulty), recs) in by_game {
            win_matrices.push((puzzle, difficulty, win_matrix(&duel_results(&recs)?)));
        }

        let mut aggregates = Vec::new();
        if let Some(groups) = groups {
            let mut members: BTreeMap<(PuzzleId, Difficulty, &str), Vec<f64>> = BTreeMap::new();
            for row in &scores.rows {
                let group = groups.get(&row.participant).map_or(row.participant.as_str(), String::as_str);
                members.entry((row.puzzle, row.difficulty, group)).or_default().push(row.mean);
            }
            for ((puzzle, difficulty, group), means) in members {
                let agg = aggregate_samples(&means).expect("groups are non-empty");
                aggregates.push(AggregateRow { puzzle, difficulty, group: group.to_string(), samples: means.len(), avg: agg.avg, best: agg.best });
            }
        }

        Ok(Report { scores, elo, statuses: status_distribution(records), win_matrices, aggregates })
    }

    pub fn elo_csv(&self) -> String {
        let mut out = String::from("difficulty,participant,rating,mean,ci_low,ci_high\n");
        for r in &self.elo {
            let e = r.estimate;
            let _ = writeln!(out, "{},{},{:.2},{:.2},{:.2},{:.2}", r.difficulty, r.participant, e.rating, e.mean, e.ci_low, e.ci_high);
        }
        out
    }

    pub fn statuses_csv(&self) -> String {
        let mut out = String::from("participant,matches");
        for s in TerminationStatus::ALL {
            let _ = write!(out, ",{}", s.name());
        }
        out.push('\n');
        for (name, d) in &self.statuses {
            let _ = write!(out, "{name},{}", d.total);
            for f in d.fractions() {
                let _ = write!(out, ",{f:.4}");
            }
            out.push('\n');
        }
        out
    }

    pub fn aggregates_csv(&self) -> String {
        let mut out = String::from("puzzle,difficulty,group,samples,avg,best\n");
        for a in &self.aggregates {
            let _ = writeln!(out, "{},{},{},{},{:.4},{:.4}", a.puzzle, a.difficulty, a.group, a.samples, a.avg, a.best);
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = self.scores.to_pretty();
        if !self.elo.is_empty() {
            out.push_str("\nElo\n");
            for r in &self.elo {
                let e = r.estimate;
                let _ = writeln!(out, "  {:<7} {:<24} {:>8.1}  [{:.1}, {:.1}]", r.difficulty.to_string(), r.participant, e.rating, e.ci_low, e.ci_high);
            }
        }
        out.push_str("\nTermination statuses\n");
        for (name, d) in &self.statuses {
            let parts: Vec<String> = TerminationStatus::ALL
                .iter()
                .filter(|&&s| d.fraction(s) > 0.0)
                .map(|&s| format!("{} {:.1}%", s.name(), 100.0 * d.fraction(s)))
                .collect();
            let _ = writeln!(out, "  {:<24} {}", name, parts.join(", "));
        }
        if !self.aggregates.is_empty() {
            out.push_str("\nSamples\n");
            for a in &self.aggregates {
                let _ = writeln!(out, "  {:<22} {:<7} {:<16} n={:<3} avg {:.3}  best {:.3}", a.puzzle.name(), a.difficulty.to_string(), a.group, a.samples, a.avg, a.best);
            }
        }
        out
    }

    /// Writes the tables into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(), HarnessError> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("scores.csv"), self.scores.to_csv()?)?;
        fs::write(dir.join("scores.txt"), self.to_pretty())?;
        fs::write(dir.join("elo.csv"), self.elo_csv())?;
        fs::write(dir.join("statuses.csv"), self.statuses_csv())?;
        for (puzzle, difficulty, wm) in &self.win_matrices {
            fs::write(dir.join(format!("win-matrix-{puzzle}-{difficulty}.csv")), wm.to_csv()?)?;
        }
        if !self.aggregates.is_empty() {
            fs::write(dir.join("aggregates.csv"), self.aggregates_csv())?;
        }
        Ok(())
    }
}

pub fn replay_name(index: usize, record: &MatchRecord) -> String {
    let t = &record.template;
    format!("{index:05}-{}-{}-seed{}.jsonl", t.puzzle, t.difficulty, t.seed)
}

/// Writes one replay file per record into `dir`.
pub fn write_replays(records: &[MatchRecord], dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::with_capacity(records.len());
    for (i, r) in records.iter().enumerate() {
        let path = dir.join(replay_name(i, r));
        let mut file = std::io::BufWriter::new(fs::File::create(&path)?);
        write_replay(r, &mut file)?;
        std::io::Write::flush(&mut file)?;
        paths.push(path);
    }
    Ok(paths)
}

/// Reads and re-simulates one replay file.
pub fn load_replay(path: &Path) -> Result<MatchRecord, HarnessError> {
    let record = read_replay(BufReader::new(fs::File::open(path)?))?;
    verify(&record)?;
    Ok(record)
}

/// Every `.jsonl` replay under `dir`, in file-name order, each verified.
pub fn load_replays(dir: &Path) -> Result<Vec<MatchRecord>, HarnessError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_replay(p)).collect()
}
