//! Per-participant score tables, emitted as CSV or aligned text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use ppx_core::{Difficulty, PuzzleId};

use crate::records::NormalizedScore;
use crate::ScoringError;

/// Mean normalized score over every seed a participant played.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub participant: String,
    pub puzzle: PuzzleId,
    pub difficulty: Difficulty,
    pub n: usize,
    pub mean: f64,
    /// Half-width of a normal-approximation 95% interval.
    pub ci95: f64,
    pub mean_raw: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    pub rows: Vec<ScoreRow>,
}

fn mean_ci(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, 1.96 * (var / n).sqrt())
}

impl ScoreTable {
    /// Rows sorted by puzzle, difficulty, then participant.
    pub fn from_scores(scores: &[NormalizedScore]) -> Self {
        let mut groups: BTreeMap<_, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
        for s in scores {
            let g = groups.entry((s.puzzle, s.difficulty, s.participant.as_str())).or_default();
            g.0.push(s.normalized);
            g.1.push(s.raw);
        }
        let rows = groups
            .into_iter()
            .map(|((puzzle, difficulty, participant), (norm, raw))| {
                let (mean, ci95) = mean_ci(&norm);
                ScoreRow {
                    participant: participant.to_string(),
                    puzzle,
                    difficulty,
                    n: norm.len(),
                    mean,
                    ci95,
                    mean_raw: raw.iter().sum::<f64>() / raw.len() as f64,
                }
            })
            .collect();
        ScoreTable { rows }
    }

    pub fn to_csv(&self) -> Result<String, ScoringError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| ScoringError::Csv(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| ScoringError::Csv(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_pretty(&self) -> String {
        let width = self.rows.iter().map(|r| r.participant.len()).max().unwrap_or(0).max("participant".len());
        let mut out = String::new();
        let _ = writeln!(out, "{:<22} {:<7} {:<width$} {:>5} {:>16} {:>10}", "puzzle", "level", "participant", "n", "score", "raw");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<22} {:<7} {:<width$} {:>5} {:>8.3} ± {:<5.3} {:>10.3}",
                r.puzzle.name(),
                r.difficulty.to_string(),
                r.participant,
                r.n,
                r.mean,
                r.ci95,
                r.mean_raw
            );
        }
        out
    }
}

/// Average and best of per-sample mean scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub avg: f64,
    pub best: f64,
}

pub fn aggregate_samples(per_sample: &[f64]) -> Option<Aggregate> {
    if per_sample.is_empty() {
        return None;
    }
    Some(Aggregate {
        avg: per_sample.iter().sum::<f64>() / per_sample.len() as f64,
        best: per_sample.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}
