//! OptimalTouring by simulated annealing over visit orders.
//!
//! A candidate is a permutation of the unvisited sites plus a cut point; the
//! plan is the prefix before the cut. Neighbours swap, move or reverse parts
//! of the permutation, or shift the cut by one.

use rand::Rng;
use serde::{Deserialize, Serialize};

use ppx_core::puzzles::touring::{day_start, schedule_visit, Site, TourState};
use ppx_core::Move;

use crate::StrategyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Neighborhood {
    Swap,
    Insert,
    TwoOpt,
    /// One of the three above, chosen uniformly per step.
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SaParams {
    /// Starting temperature; `None` means ten times the mean site value.
    pub initial_temperature: Option<f64>,
    pub cooling: f64,
    pub iterations: u32,
    pub neighborhood: Neighborhood,
}

impl Default for SaParams {
    fn default() -> Self {
        SaParams { initial_temperature: None, cooling: 0.995, iterations: 20_000, neighborhood: Neighborhood::Mixed }
    }
}

impl SaParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(format!("cooling factor {} must lie in (0, 1)", self.cooling));
        }
        if self.iterations == 0 {
            return Err("iterations must be at least 1".into());
        }
        Ok(())
    }
}

/// Where the day continues from.
#[derive(Debug, Clone, Copy)]
struct Origin<'a> {
    clock: u32,
    location: Option<&'a Site>,
}

fn plan_value(sites: &[Site], origin: Origin<'_>, plan: &[usize]) -> u32 {
    let mut clock = origin.clock;
    let mut here = origin.location;
    let mut total = 0;
    for &id in plan {
        let to = &sites[id - 1];
        let rec = schedule_visit(clock, here, to);
        clock = rec.end;
        here = Some(to);
        if rec.counted {
            total += to.value;
        }
    }
    total
}

/// Anneals over orders of `candidates`; returns the best plan found and its value.
fn anneal<R: Rng>(sites: &[Site], origin: Origin<'_>, candidates: &[usize], params: &SaParams, rng: &mut R) -> (Vec<usize>, u32) {
    let n = candidates.len();
    if n == 0 {
        return (Vec::new(), 0);
    }
    let mean = candidates.iter().map(|&id| f64::from(sites[id - 1].value)).sum::<f64>() / n as f64;
    let mut temperature = params.initial_temperature.unwrap_or(10.0 * mean).max(1e-9);

    let mut perm = candidates.to_vec();
    let mut cut = n;
    let mut current = plan_value(sites, origin, &perm[..cut]);
    let mut best = (perm[..cut].to_vec(), current);

    for _ in 0..params.iterations {
        let mut next = perm.clone();
        let mut next_cut = cut;
        let kind = match params.neighborhood {
            Neighborhood::Mixed => rng.gen_range(0..4),
            Neighborhood::Swap => 0,
            Neighborhood::Insert => 1,
            Neighborhood::TwoOpt => 2,
        };
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match kind {
            0 => next.swap(i, j),
            1 => {
                let v = next.remove(i);
                next.insert(j, v);
            }
            2 => next[i.min(j)..=i.max(j)].reverse(),
            _ => {
                next_cut = if rng.gen_bool(0.5) { (cut + 1).min(n) } else { cut.saturating_sub(1) };
            }
        }
        let value = plan_value(sites, origin, &next[..next_cut]);
        let delta = f64::from(value) - f64::from(current);
        if delta >= 0.0 || rng.gen::<f64>() < (delta / temperature).exp() {
            perm = next;
            cut = next_cut;
            current = value;
            if current > best.1 {
                best = (perm[..cut].to_vec(), current);
            }
        }
        temperature *= params.cooling;
    }
    // Drop visits that score nothing at the end of the plan.
    while let Some(&last) = best.0.last() {
        if plan_value(sites, origin, &best.0) == plan_value(sites, origin, &best.0[..best.0.len() - 1]) {
            best.0.pop();
            let _ = last;
        } else {
            break;
        }
    }
    best
}

/// Best plan found for a fresh day over `sites` (ids are 1-based positions).
pub fn touring_sa<R: Rng>(sites: &[Site], params: &SaParams, rng: &mut R) -> (Vec<usize>, u32) {
    let ids: Vec<usize> = (1..=sites.len()).collect();
    anneal(sites, Origin { clock: day_start(sites), location: None }, &ids, params, rng)
}

/// Re-plans the rest of the day and returns its first step.
pub fn next_move<R: Rng>(tour: &TourState, params: &SaParams, rng: &mut R) -> Result<Move, StrategyError> {
    let remaining: Vec<usize> = tour.sites.iter().map(|s| s.id).filter(|&id| !tour.visited(id)).collect();
    let origin = Origin { clock: tour.clock, location: tour.location.and_then(|l| tour.site(l)) };
    let (plan, _) = anneal(&tour.sites, origin, &remaining, params, rng);
    Ok(match plan.first() {
        Some(&site) => Move::Visit { site },
        None => Move::FinishTour,
    })
}
