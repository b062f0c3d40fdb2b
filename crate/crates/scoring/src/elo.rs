//! Elo ratings: R = 1000 to start, K = 32.
//!
//! Elo depends on the order matches are applied in, so the reported rating
//! comes from one seeded shuffle of the log and the interval from the spread
//! over further reshuffles.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const INITIAL_RATING: f64 = 1000.0;
pub const K_FACTOR: f64 = 32.0;
pub const DEFAULT_RESAMPLES: usize = 1000;

pub fn elo_expected(r_a: f64, r_b: f64) -> f64 {
    1.0 / (1.0 + 10f64.powf((r_b - r_a) / 400.0))
}

/// New rating for A after scoring `s_a` (1 win, 0.5 tie, 0 loss) against B.
pub fn elo_update(r_a: f64, r_b: f64, s_a: f64) -> f64 {
    r_a + K_FACTOR * (s_a - elo_expected(r_a, r_b))
}

/// One pairwise result; `score_a` is A's score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    pub a: String,
    pub b: String,
    pub score_a: f64,
}

impl MatchResult {
    pub fn new(a: impl Into<String>, b: impl Into<String>, score_a: f64) -> Self {
        MatchResult { a: a.into(), b: b.into(), score_a }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RatingTable {
    pub ratings: BTreeMap<String, f64>,
    pub log: Vec<MatchResult>,
}

impl RatingTable {
    pub fn rating(&self, name: &str) -> f64 {
        self.ratings.get(name).copied().unwrap_or(INITIAL_RATING)
    }

    /// Applies one result to both players. A's gain is exactly B's loss.
    pub fn apply(&mut self, m: &MatchResult) {
        let (ra, rb) = (self.rating(&m.a), self.rating(&m.b));
        let delta = K_FACTOR * (m.score_a - elo_expected(ra, rb));
        self.ratings.insert(m.a.clone(), ra + delta);
        self.ratings.insert(m.b.clone(), rb - delta);
        self.log.push(m.clone());
    }

    pub fn from_log<'a>(log: impl IntoIterator<Item = &'a MatchResult>) -> Self {
        let mut t = RatingTable::default();
        for m in log {
            t.apply(m);
        }
        t
    }
}

/// Every unordered pair on every seed plays one match: the higher normalized
/// score wins, equal scores tie. Pairs are emitted in name order.
pub fn solo_to_matches(seeds: &[BTreeMap<String, f64>]) -> Vec<MatchResult> {
    let mut out = Vec::new();
    for scores in seeds {
        let entries: Vec<(&String, f64)> = scores.iter().map(|(k, &v)| (k, v)).collect();
        for (i, &(a, sa)) in entries.iter().enumerate() {
            for &(b, sb) in &entries[i + 1..] {
                let score_a = if sa > sb {
                    1.0
                } else if sa < sb {
                    0.0
                } else {
                    0.5
                };
                out.push(MatchResult::new(a.clone(), b.clone(), score_a));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EloEstimate {
    /// Rating after the seeded ordering.
    pub rating: f64,
    /// Mean over the reshuffled orderings (the rating itself with none).
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

fn shuffled_ratings(log: &[MatchResult], rng: &mut ChaCha8Rng) -> BTreeMap<String, f64> {
    let mut order: Vec<&MatchResult> = log.iter().collect();
    order.shuffle(rng);
    RatingTable::from_log(order).ratings
}

/// Linear-interpolated percentile of sorted data.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Ratings with a 95% percentile interval over `resamples` reshuffles.
pub fn tournament_elo(log: &[MatchResult], seed: u64, resamples: usize) -> BTreeMap<String, EloEstimate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point = shuffled_ratings(log, &mut rng);
    let mut draws: BTreeMap<&str, Vec<f64>> = point.keys().map(|k| (k.as_str(), Vec::with_capacity(resamples))).collect();
    for i in 0..resamples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64 + 1);
        for (name, r) in shuffled_ratings(log, &mut rng) {
            draws.get_mut(name.as_str()).expect("same participants").push(r);
        }
    }
    point
        .iter()
        .map(|(name, &rating)| {
            let mut d = draws.remove(name.as_str()).unwrap_or_default();
            let est = if d.is_empty() {
                EloEstimate { rating, mean: rating, ci_low: rating, ci_high: rating }
            } else {
                d.sort_by(f64::total_cmp);
                EloEstimate {
                    rating,
                    mean: d.iter().sum::<f64>() / d.len() as f64,
                    ci_low: percentile(&d, 0.025),
                    ci_high: percentile(&d, 0.975),
                }
            };
            (name.clone(), est)
        })
        .collect()
}
