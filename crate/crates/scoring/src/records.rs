//! Views over finished match records: normalized scores, pairwise results,
//! win rates and termination statuses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use ppx_core::{Difficulty, MatchRecord, PuzzleId, PuzzleTemplate, TerminationStatus};

use crate::elo::MatchResult;
use crate::normalize::normalize_for;
use crate::ScoringError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedScore {
    pub participant: String,
    pub puzzle: PuzzleId,
    pub difficulty: Difficulty,
    pub seed: u64,
    pub raw: f64,
    pub normalized: f64,
}

fn check(record: &MatchRecord) -> Result<(), ScoringError> {
    if record.agents.len() != record.raw_scores.len() {
        return Err(ScoringError::MalformedRecord { agents: record.agents.len(), scores: record.raw_scores.len() });
    }
    Ok(())
}

/// One entry per seat per record. Solo records are normalized against every
/// other record on the same template; duel scores pass through.
pub fn normalized_scores(records: &[MatchRecord]) -> Result<Vec<NormalizedScore>, ScoringError> {
    let mut groups: Vec<(&PuzzleTemplate, Vec<(usize, usize)>)> = Vec::new();
    for (i, r) in records.iter().enumerate() {
        check(r)?;
        let seats = (0..r.agents.len()).map(|s| (i, s));
        match groups.iter_mut().find(|(t, _)| **t == r.template) {
            Some((_, members)) if !r.template.puzzle.is_two_player() => members.extend(seats),
            _ => groups.push((&r.template, seats.collect())),
        }
    }
    let mut out = Vec::new();
    for (template, members) in groups {
        let raws: Vec<f64> = members.iter().map(|&(i, s)| records[i].raw_scores[s]).collect();
        let normalized = normalize_for(template.puzzle, &raws)?;
        for (&(i, s), (raw, normalized)) in members.iter().zip(raws.into_iter().zip(normalized)) {
            out.push(NormalizedScore {
                participant: records[i].agents[s].clone(),
                puzzle: template.puzzle,
                difficulty: template.difficulty,
                seed: template.seed,
                raw,
                normalized,
            });
        }
    }
    Ok(out)
}

/// Pairwise results from two-seat records, seat 1 as A. Self-play records
/// are skipped since they carry no rating information.
pub fn duel_results(records: &[MatchRecord]) -> Result<Vec<MatchResult>, ScoringError> {
    let mut out = Vec::new();
    for r in records.iter().filter(|r| r.agents.len() == 2) {
        check(r)?;
        if r.agents[0] != r.agents[1] {
            out.push(MatchResult::new(r.agents[0].clone(), r.agents[1].clone(), r.raw_scores[0]));
        }
    }
    Ok(out)
}

/// Head-to-head win rates with ties left out.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct WinMatrix {
    pub names: Vec<String>,
    /// `wins[i][j]`: decisive wins of `names[i]` over `names[j]`.
    pub wins: Vec<Vec<u32>>,
}

impl WinMatrix {
    /// `wins(i over j) / (wins(i over j) + wins(j over i))`; `None` on the
    /// diagonal and for pairs with no decisive game.
    pub fn rate(&self, i: usize, j: usize) -> Option<f64> {
        let (w, l) = (self.wins[i][j], self.wins[j][i]);
        (i != j && w + l > 0).then(|| f64::from(w) / f64::from(w + l))
    }

    pub fn rate_by_name(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.names.iter().position(|n| n == a)?;
        let j = self.names.iter().position(|n| n == b)?;
        self.rate(i, j)
    }

    /// Rows of win rates with an empty cell where the rate is undefined.
    pub fn to_csv(&self) -> Result<String, ScoringError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| ScoringError::Csv(e.to_string());
        let mut header = vec![String::new()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header).map_err(csv_err)?;
        for (i, name) in self.names.iter().enumerate() {
            let mut row = vec![name.clone()];
            row.extend((0..self.names.len()).map(|j| self.rate(i, j).map_or(String::new(), |r| format!("{r:.4}"))));
            w.write_record(&row).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| ScoringError::Csv(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub fn win_matrix(results: &[MatchResult]) -> WinMatrix {
    let mut names: Vec<String> = results.iter().flat_map(|m| [m.a.clone(), m.b.clone()]).collect();
    names.sort();
    names.dedup();
    let index = |n: &str| names.binary_search_by(|x| x.as_str().cmp(n)).expect("name collected above");
    let mut wins = vec![vec![0u32; names.len()]; names.len()];
    for m in results.iter().filter(|m| m.a != m.b) {
        let (a, b) = (index(&m.a), index(&m.b));
        if m.score_a > 0.5 {
            wins[a][b] += 1;
        } else if m.score_a < 0.5 {
            wins[b][a] += 1;
        }
    }
    WinMatrix { names, wins }
}

/// How one participant's matches ended.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StatusDistribution {
    pub counts: BTreeMap<TerminationStatus, u32>,
    pub total: u32,
}

impl StatusDistribution {
    pub fn fraction(&self, status: TerminationStatus) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        f64::from(self.counts.get(&status).copied().unwrap_or(0)) / f64::from(self.total)
    }

    /// Fractions in the order of `TerminationStatus::ALL`.
    pub fn fractions(&self) -> [f64; 6] {
        TerminationStatus::ALL.map(|s| self.fraction(s))
    }
}

pub fn status_distribution(records: &[MatchRecord]) -> BTreeMap<String, StatusDistribution> {
    let mut out: BTreeMap<String, StatusDistribution> = BTreeMap::new();
    for r in records {
        for (name, &status) in r.agents.iter().zip(&r.statuses) {
            let d = out.entry(name.clone()).or_default();
            *d.counts.entry(status).or_default() += 1;
            d.total += 1;
        }
    }
    out
}
