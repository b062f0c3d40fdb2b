//! RubyRisks by UCT over request amounts.
//!
//! Each simulation fixes one hidden composition drawn from the posterior
//! (uniform over compositions consistent with the revealed gains), walks the
//! tree choosing requests by UCB1, and finishes with uniformly random
//! requests. Tree edges are keyed by (request, observed gain), so nodes only
//! ever condition on what the player would actually see. The final choice
//! backs up the best action value at every node instead of the UCB-weighted
//! average, which would charge each request for the exploration below it.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use ppx_core::puzzles::ruby::{random_composition, RubyWorld};

/// Compositions beyond this count are sampled by rejection instead of listed.
pub const POSTERIOR_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MctsParams {
    pub simulations: u32,
    pub exploration: f64,
    /// Size of the pool of posterior samples the simulations cycle through.
    pub belief_samples: u32,
}

impl Default for MctsParams {
    fn default() -> Self {
        MctsParams { simulations: 2000, exploration: std::f64::consts::SQRT_2, belief_samples: 2000 }
    }
}

impl MctsParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.simulations == 0 {
            return Err("simulation budget must be at least 1".into());
        }
        if self.exploration.is_nan() || self.exploration <= 0.0 {
            return Err(format!("exploration constant {} must be positive", self.exploration));
        }
        if self.belief_samples == 0 {
            return Err("belief sample count must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MctsDecision {
    pub action: u32,
    /// Estimated future gain of `action` under the best continuation found.
    pub value: f64,
    pub visits: u32,
}

/// Whether a box holding `content` is consistent with a logged `(request, gain)`.
fn consistent(content: u32, (request, gain): (u32, u32)) -> bool {
    if gain == request {
        content >= request
    } else {
        content < request
    }
}

fn consistent_with_log(world: &RubyWorld, boxes: &[u32]) -> bool {
    world.log.iter().zip(boxes).all(|(&entry, &c)| consistent(c, entry))
}

/// Every composition of the world's total consistent with its log, or `None`
/// when there are more than `cap`.
pub fn posterior(world: &RubyWorld, cap: usize) -> Option<Vec<Vec<u32>>> {
    fn rec(world: &RubyWorld, left: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, cap: usize) -> bool {
        let i = current.len();
        if i + 1 == world.num_boxes {
            if let Some(&entry) = world.log.get(i) {
                if !consistent(left, entry) {
                    return true;
                }
            }
            if out.len() == cap {
                return false;
            }
            current.push(left);
            out.push(current.clone());
            current.pop();
            return true;
        }
        for c in 0..=left {
            if world.log.get(i).is_some_and(|&e| !consistent(c, e)) {
                continue;
            }
            current.push(c);
            let ok = rec(world, left - c, current, out, cap);
            current.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    if world.num_boxes == 0 {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    rec(world, world.total_rubies, &mut Vec::new(), &mut out, cap).then_some(out)
}

fn sample_pool<R: Rng>(world: &RubyWorld, size: usize, rng: &mut R) -> Vec<Vec<u32>> {
    if let Some(all) = posterior(world, POSTERIOR_CAP) {
        if all.is_empty() {
            return Vec::new();
        }
        return (0..size).map(|_| all.choose(rng).expect("non-empty").clone()).collect();
    }
    let mut pool = Vec::with_capacity(size);
    let mut attempts = 0usize;
    while pool.len() < size && attempts < size * 1000 {
        attempts += 1;
        let c = random_composition(world.total_rubies, world.num_boxes, rng);
        if consistent_with_log(world, &c) {
            pool.push(c);
        }
    }
    pool
}

#[derive(Debug, Default)]
struct Edge {
    count: u32,
    /// Sum of raw gains collected after this box.
    rest: f64,
    child: Option<usize>,
}

#[derive(Debug, Default)]
struct Node {
    /// Per request amount: (visits, total normalised return) for UCB1.
    stats: Vec<(u32, f64)>,
    visits: u32,
    edges: BTreeMap<(u32, u32), Edge>,
}

struct Search<'a, R> {
    nodes: Vec<Node>,
    params: &'a MctsParams,
    rng: &'a mut R,
    scale: f64,
}

impl<R: Rng> Search<'_, R> {
    fn node(&mut self, bound: u32) -> usize {
        self.nodes.push(Node { stats: vec![(0, 0.0); bound as usize + 1], ..Node::default() });
        self.nodes.len() - 1
    }

    /// Returns the raw gain collected from box `i` onwards.
    fn simulate(&mut self, id: usize, boxes: &[u32], i: usize, bound: u32) -> f64 {
        if i == boxes.len() {
            return 0.0;
        }
        let node = &self.nodes[id];
        let action = match node.stats.iter().position(|&(n, _)| n == 0) {
            Some(a) => a as u32,
            None => {
                let ln = f64::from(node.visits).ln();
                let c = self.params.exploration;
                let mut best = (0u32, f64::NEG_INFINITY);
                for (a, &(n, w)) in node.stats.iter().enumerate() {
                    let ucb = w / f64::from(n) + c * (ln / f64::from(n)).sqrt();
                    if ucb > best.1 {
                        best = (a as u32, ucb);
                    }
                }
                best.0
            }
        };
        let gain = if action <= boxes[i] { action } else { 0 };
        let fresh = self.nodes[id].stats[action as usize].0 == 0;
        let rest = if fresh || i + 1 == boxes.len() {
            self.rollout(boxes, i + 1, bound - gain)
        } else {
            let existing = self.nodes[id].edges.get(&(action, gain)).and_then(|e| e.child);
            let child = match existing {
                Some(c) => c,
                None => {
                    let c = self.node(bound - gain);
                    self.nodes[id].edges.entry((action, gain)).or_default().child = Some(c);
                    c
                }
            };
            self.simulate(child, boxes, i + 1, bound - gain)
        };
        let total = f64::from(gain) + rest;
        let node = &mut self.nodes[id];
        node.visits += 1;
        node.stats[action as usize].0 += 1;
        node.stats[action as usize].1 += total / self.scale;
        let edge = node.edges.entry((action, gain)).or_default();
        edge.count += 1;
        edge.rest += rest;
        total
    }

    /// Best action and its value, backing up maxima through the tree and
    /// weighting observations by how often they were sampled.
    fn backup(&self, id: usize) -> Option<(u32, f64, u32)> {
        let node = &self.nodes[id];
        let mut best: Option<(u32, f64, u32)> = None;
        for (a, &(n, _)) in node.stats.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let a = a as u32;
            let mut q = 0.0;
            let mut seen = 0u32;
            for (&(_, gain), edge) in node.edges.iter().filter(|((act, _), _)| *act == a) {
                let future = edge
                    .child
                    .and_then(|c| self.backup(c))
                    .map_or(edge.rest / f64::from(edge.count.max(1)), |(_, v, _)| v);
                q += f64::from(edge.count) * (f64::from(gain) + future);
                seen += edge.count;
            }
            let q = q / f64::from(seen.max(1));
            if best.is_none_or(|(_, b, _)| q > b + 1e-9) {
                best = Some((a, q, n));
            }
        }
        best
    }

    fn rollout(&mut self, boxes: &[u32], from: usize, mut bound: u32) -> f64 {
        let mut total = 0.0;
        for &content in &boxes[from..] {
            let request = self.rng.gen_range(0..=bound);
            if request <= content {
                total += f64::from(request);
                bound -= request;
            }
        }
        total
    }
}

/// Picks a request for the next box of `world` (a public view suffices).
pub fn ruby_mcts<R: Rng>(world: &RubyWorld, params: &MctsParams, rng: &mut R) -> MctsDecision {
    let bound = world.remaining_total();
    if world.boxes_left() == 0 {
        return MctsDecision { action: 0, value: 0.0, visits: 0 };
    }
    let pool = sample_pool(world, params.belief_samples as usize, rng);
    if pool.is_empty() {
        return MctsDecision { action: 0, value: 0.0, visits: 0 };
    }
    let scale = f64::from(bound.max(1));
    let mut search = Search { nodes: Vec::new(), params, rng, scale };
    let root = search.node(bound);
    for s in 0..params.simulations as usize {
        let boxes = &pool[s % pool.len()];
        search.simulate(root, boxes, world.next_box, bound);
    }
    let (action, value, visits) = search.backup(root).expect("root was visited");
    MctsDecision { action, value, visits }
}
