//! OptimalTouring: a one-day tour over sites with visiting windows.
//!
//! The clock starts at the earliest opening hour among all sites. Travel
//! costs one minute per Manhattan unit. Arriving early means waiting for the
//! window to open; a visit counts only if it ends by the closing hour. A visit
//! that cannot fit still moves the traveller to that site and scores nothing.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Outcome, Player, Revealed};
use crate::template::PuzzleTemplate;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Site {
    /// 1-based identifier.
    pub id: usize,
    pub avenue: i32,
    pub street: i32,
    pub desired_time: u32,
    pub value: u32,
    pub begin_hour: u32,
    pub end_hour: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VisitRecord {
    pub site: usize,
    pub start: u32,
    pub end: u32,
    pub counted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TourState {
    pub sites: Vec<Site>,
    pub itinerary: Vec<VisitRecord>,
    /// Minutes since midnight.
    pub clock: u32,
    pub location: Option<usize>,
    pub collected: u32,
}

pub fn travel_minutes(a: &Site, b: &Site) -> u32 {
    a.avenue.abs_diff(b.avenue) + a.street.abs_diff(b.street)
}

/// Schedules a visit to `to` leaving `from` at `clock`.
pub fn schedule_visit(clock: u32, from: Option<&Site>, to: &Site) -> VisitRecord {
    let arrival = clock + from.map_or(0, |f| travel_minutes(f, to));
    let start = arrival.max(to.begin_hour * 60);
    let end = start + to.desired_time;
    if end <= to.end_hour * 60 {
        VisitRecord { site: to.id, start, end, counted: true }
    } else {
        VisitRecord { site: to.id, start: arrival, end: arrival, counted: false }
    }
}

pub fn day_start(sites: &[Site]) -> u32 {
    sites.iter().map(|s| s.begin_hour * 60).min().unwrap_or(0)
}

/// Total value of a plan (1-based site ids, visited in order).
pub fn tour_score(sites: &[Site], plan: &[usize]) -> u32 {
    let mut state = TourState::new(sites.to_vec());
    for &id in plan {
        if state.visit(id).is_none() {
            continue;
        }
    }
    state.collected
}

impl TourState {
    pub fn new(sites: Vec<Site>) -> Self {
        let clock = day_start(&sites);
        TourState { sites, itinerary: Vec::new(), clock, location: None, collected: 0 }
    }

    pub fn site(&self, id: usize) -> Option<&Site> {
        id.checked_sub(1).and_then(|i| self.sites.get(i))
    }

    pub fn visited(&self, id: usize) -> bool {
        self.itinerary.iter().any(|v| v.site == id)
    }

    /// Performs a visit; `None` when the id is unknown or already visited.
    pub fn visit(&mut self, id: usize) -> Option<VisitRecord> {
        if self.visited(id) {
            return None;
        }
        let to = self.site(id)?.clone();
        let from = self.location.and_then(|l| self.site(l)).cloned();
        let rec = schedule_visit(self.clock, from.as_ref(), &to);
        self.clock = rec.end;
        self.location = Some(id);
        if rec.counted {
            self.collected += to.value;
        }
        self.itinerary.push(rec);
        Some(rec)
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let n = template.param("sites")? as usize;
        let grid = template.param("grid")? as i32;
        let mut rng = template.key().child_str("sites").rng();
        let sites = (1..=n)
            .map(|id| {
                let begin_hour = rng.gen_range(5..=14);
                let end_hour = rng.gen_range(begin_hour + 3..=(begin_hour + 12).min(23));
                Site {
                    id,
                    avenue: rng.gen_range(0..grid),
                    street: rng.gen_range(0..grid),
                    desired_time: rng.gen_range(30..=240),
                    value: rng.gen_range(1..=200),
                    begin_hour,
                    end_hour,
                }
            })
            .collect();
        Ok(TourState::new(sites))
    }
}

impl Rules for TourState {
    fn apply(&mut self, _mover: Player, mv: &Move, _chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        match *mv {
            Move::FinishTour => Ok(Verdict::Legal {
                revealed: None,
                end: Some(Outcome::SoloScore(f64::from(self.collected))),
            }),
            Move::Visit { site } => {
                if self.site(site).is_none() {
                    return Ok(Verdict::Violation(format!("unknown site {site}")));
                }
                let Some(rec) = self.visit(site) else {
                    return Ok(Verdict::Violation(format!("site {site} already visited")));
                };
                let value = if rec.counted { self.site(site).map_or(0, |s| s.value) } else { 0 };
                let all_done = self.itinerary.len() == self.sites.len();
                Ok(Verdict::Legal {
                    revealed: Some(Revealed::Visit {
                        site,
                        start: rec.start,
                        end: rec.end,
                        counted: rec.counted,
                        value,
                    }),
                    end: all_done.then_some(Outcome::SoloScore(f64::from(self.collected))),
                })
            }
            _ => Err(EngineError::VariantMismatch("OptimalTouring".into())),
        }
    }

    fn legal_moves(&self, _mover: Player) -> LegalMoves {
        let mut moves: Vec<Move> = self
            .sites
            .iter()
            .filter(|s| !self.visited(s.id))
            .map(|s| Move::Visit { site: s.id })
            .collect();
        moves.push(Move::FinishTour);
        LegalMoves::complete(moves)
    }

    fn render(&self, _viewer: Player, out: &mut ObsWriter) {
        out.field("sites", &self.sites)
            .field("itinerary", &self.itinerary)
            .field("clock", &self.clock)
            .field("location", &self.location)
            .field("collected", &self.collected);
    }
}
