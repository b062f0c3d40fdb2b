//! Maximal independent sets ("maximal cocktails") and the two puzzles built
//! on them: CountMaximalCocktails (solo) and MaxMaximalCocktails (duel).

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Outcome, Player, Revealed};
use crate::template::{Difficulty, PuzzleTemplate};

/// Default node cap for exact enumeration.
pub const DEFAULT_NODE_CAP: usize = 24;

pub type Family = Vec<Vec<u32>>;

fn normalize_edge(u: u32, v: u32) -> (u32, u32) {
    (u.min(v), u.max(v))
}

/// All maximal independent sets, each sorted, the family sorted.
///
/// Bron–Kerbosch with Tomita pivoting run on the complement graph: a maximal
/// clique of the complement is a maximal independent set of the original.
pub fn maximal_independent_sets(
    nodes: &[u32],
    edges: &[(u32, u32)],
    cap: usize,
) -> Result<Family, EngineError> {
    let n = nodes.len();
    if n > cap || n > 64 {
        return Err(EngineError::CapExceeded(format!("{n} nodes exceeds cap {}", cap.min(64))));
    }
    let index = |id: u32| nodes.iter().position(|&x| x == id);
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // compat[i] = nodes that may share a cocktail with i.
    let mut compat = vec![full; n];
    for (i, c) in compat.iter_mut().enumerate() {
        *c &= !(1u64 << i);
    }
    for &(u, v) in edges {
        if let (Some(a), Some(b)) = (index(u), index(v)) {
            compat[a] &= !(1u64 << b);
            compat[b] &= !(1u64 << a);
        }
    }
    let mut out = Vec::new();
    bron_kerbosch(0, full, 0, &compat, &mut out);
    let mut family: Family = out
        .into_iter()
        .map(|mask| {
            let mut set: Vec<u32> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| nodes[i]).collect();
            set.sort_unstable();
            set
        })
        .collect();
    family.sort();
    Ok(family)
}

fn bron_kerbosch(r: u64, mut p: u64, mut x: u64, adj: &[u64], out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = {
        let mut best = 0usize;
        let mut best_deg = -1i32;
        let mut cand = p | x;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let deg = (p & adj[u]).count_ones() as i32;
            if deg > best_deg {
                best_deg = deg;
                best = u;
            }
        }
        best
    };
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        let bit = 1u64 << v;
        bron_kerbosch(r | bit, p & adj[v], x & adj[v], adj, out);
        p &= !bit;
        x |= bit;
    }
}

pub fn count_maximal_independent_sets(nodes: &[u32], edges: &[(u32, u32)]) -> Result<u64, EngineError> {
    Ok(maximal_independent_sets(nodes, edges, DEFAULT_NODE_CAP)?.len() as u64)
}

/// Moon–Moser bound on the number of maximal independent sets of an n-node graph.
pub fn moon_moser_bound(n: usize) -> u64 {
    match n {
        0 => 1,
        1 => 1,
        _ => match n % 3 {
            0 => 3u64.pow((n / 3) as u32),
            1 => 4 * 3u64.pow(((n - 4) / 3) as u32),
            _ => 2 * 3u64.pow((n / 3) as u32),
        },
    }
}

// -----------------------------------------------------------------------------
// CountMaximalCocktails
// -----------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AnswerMode {
    /// Easy: report only the count.
    CountOnly,
    /// Normal: list every maximal set.
    FullList,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CocktailGraph {
    pub nodes: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
    pub answer_mode: AnswerMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnswerError {
    #[error("malformed answer: {0}")]
    MalformedAnswer(String),
}

impl CocktailGraph {
    pub fn new(nodes: Vec<u32>, edges: Vec<(u32, u32)>, answer_mode: AnswerMode) -> Self {
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| normalize_edge(u, v)).collect();
        edges.sort_unstable();
        edges.dedup();
        CocktailGraph { nodes, edges, answer_mode }
    }

    pub fn family(&self) -> Result<Family, EngineError> {
        maximal_independent_sets(&self.nodes, &self.edges, DEFAULT_NODE_CAP)
    }

    /// Binary score of a submitted answer.
    pub fn score(&self, answer: &Move) -> Result<f64, AnswerError> {
        let truth = self
            .family()
            .map_err(|e| AnswerError::MalformedAnswer(e.to_string()))?;
        match (self.answer_mode, answer) {
            (AnswerMode::CountOnly, Move::AnswerCount { count }) => {
                Ok(if *count == truth.len() as u64 { 1.0 } else { 0.0 })
            }
            (AnswerMode::FullList, Move::AnswerFamily { sets }) => {
                let known: BTreeSet<u32> = self.nodes.iter().copied().collect();
                let mut canon = BTreeSet::new();
                for set in sets {
                    let s: BTreeSet<u32> = set.iter().copied().collect();
                    if s.len() != set.len() {
                        return Err(AnswerError::MalformedAnswer("repeated drug inside a set".into()));
                    }
                    if let Some(bad) = s.iter().find(|x| !known.contains(x)) {
                        return Err(AnswerError::MalformedAnswer(format!("unknown drug {bad}")));
                    }
                    canon.insert(s);
                }
                let truth: BTreeSet<BTreeSet<u32>> =
                    truth.into_iter().map(|s| s.into_iter().collect()).collect();
                Ok(if canon == truth && canon.len() == sets.len() { 1.0 } else { 0.0 })
            }
            (mode, other) => Err(AnswerError::MalformedAnswer(format!(
                "{other:?} does not match answer mode {mode:?}"
            ))),
        }
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let n = template.param("nodes")?;
        let percent = template.param("edge_percent")?;
        if n as usize > DEFAULT_NODE_CAP {
            return Err(EngineError::InvalidTemplate(format!("{n} nodes exceeds {DEFAULT_NODE_CAP}")));
        }
        if percent > 100 {
            return Err(EngineError::InvalidTemplate("edge_percent above 100".into()));
        }
        let mut rng = template.key().child_str("graph").rng();
        let nodes: Vec<u32> = (1..=n).collect();
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if rng.gen_range(0..100) < percent {
                    edges.push((u, v));
                }
            }
        }
        let mode = match template.difficulty {
            Difficulty::Easy => AnswerMode::CountOnly,
            Difficulty::Normal => AnswerMode::FullList,
        };
        Ok(CocktailGraph::new(nodes, edges, mode))
    }
}

impl Rules for CocktailGraph {
    fn apply(&mut self, _mover: Player, mv: &Move, _chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        if !matches!(mv, Move::AnswerCount { .. } | Move::AnswerFamily { .. }) {
            return Err(EngineError::VariantMismatch("CountMaximalCocktails".into()));
        }
        match self.score(mv) {
            Ok(score) => Ok(Verdict::Legal { revealed: None, end: Some(Outcome::SoloScore(score)) }),
            Err(AnswerError::MalformedAnswer(reason)) => Ok(Verdict::Malformed(reason)),
        }
    }

    fn legal_moves(&self, _mover: Player) -> LegalMoves {
        match self.answer_mode {
            AnswerMode::CountOnly => LegalMoves {
                moves: (1..=moon_moser_bound(self.nodes.len()))
                    .map(|count| Move::AnswerCount { count })
                    .collect(),
                truncated: true,
            },
            AnswerMode::FullList => LegalMoves { moves: Vec::new(), truncated: true },
        }
    }

    fn render(&self, _viewer: Player, out: &mut ObsWriter) {
        out.field("nodes_list", &self.nodes)
            .field("edges_list", &self.edges)
            .field("answer_mode", &self.answer_mode);
    }
}

// -----------------------------------------------------------------------------
// MaxMaximalCocktails
// -----------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EdgeError {
    #[error("edge already present")]
    DuplicateEdge,
    #[error("self-loop")]
    SelfLoop,
    #[error("unknown node {0}")]
    UnknownNode(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeGameState {
    pub nodes: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
    pub mis_count: u64,
    /// Require a strict increase instead of "does not decrease".
    pub strict_increase: bool,
}

impl EdgeGameState {
    pub fn new(nodes: Vec<u32>) -> Result<Self, EngineError> {
        let mis_count = count_maximal_independent_sets(&nodes, &[])?;
        Ok(EdgeGameState { nodes, edges: Vec::new(), mis_count, strict_increase: false })
    }

    fn check_edge(&self, u: u32, v: u32) -> Result<(u32, u32), EdgeError> {
        if u == v {
            return Err(EdgeError::SelfLoop);
        }
        for x in [u, v] {
            if !self.nodes.contains(&x) {
                return Err(EdgeError::UnknownNode(x));
            }
        }
        let e = normalize_edge(u, v);
        if self.edges.contains(&e) {
            return Err(EdgeError::DuplicateEdge);
        }
        Ok(e)
    }

    /// Whether adding `(u, v)` keeps the count from decreasing, and the new count.
    pub fn move_legal(&self, u: u32, v: u32) -> Result<(bool, u64), EdgeError> {
        let e = self.check_edge(u, v)?;
        let mut edges = self.edges.clone();
        edges.push(e);
        let count = count_maximal_independent_sets(&self.nodes, &edges).expect("node count validated at creation");
        let ok = if self.strict_increase { count > self.mis_count } else { count >= self.mis_count };
        Ok((ok, count))
    }

    pub fn add_edge(&mut self, u: u32, v: u32, count: u64) {
        self.edges.push(normalize_edge(u, v));
        self.edges.sort_unstable();
        self.mis_count = count;
    }

    pub fn absent_edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (i, &u) in self.nodes.iter().enumerate() {
            for &v in &self.nodes[i + 1..] {
                let e = normalize_edge(u, v);
                if !self.edges.contains(&e) {
                    out.push(e);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let n = template.param("nodes")?;
        if n as usize > DEFAULT_NODE_CAP {
            return Err(EngineError::InvalidTemplate(format!("{n} nodes exceeds {DEFAULT_NODE_CAP}")));
        }
        EdgeGameState::new((1..=n).collect())
    }
}

impl Rules for EdgeGameState {
    fn apply(&mut self, _mover: Player, mv: &Move, _chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        let Move::AddEdge { u, v } = *mv else {
            return Err(EngineError::VariantMismatch("MaxMaximalCocktails".into()));
        };
        match self.move_legal(u, v) {
            Err(e) => Ok(Verdict::Violation(e.to_string())),
            Ok((false, count)) => Ok(Verdict::Violation(format!(
                "edge ({u}, {v}) changes the count from {} to {count}",
                self.mis_count
            ))),
            Ok((true, count)) => {
                self.add_edge(u, v, count);
                Ok(Verdict::Legal { revealed: Some(Revealed::CocktailCount { count }), end: None })
            }
        }
    }

    fn legal_moves(&self, _mover: Player) -> LegalMoves {
        LegalMoves::complete(
            self.absent_edges()
                .into_iter()
                .filter(|&(u, v)| matches!(self.move_legal(u, v), Ok((true, _))))
                .map(|(u, v)| Move::AddEdge { u, v })
                .collect(),
        )
    }

    fn render(&self, _viewer: Player, out: &mut ObsWriter) {
        out.field("nodes_list", &self.nodes)
            .field("edges_list", &self.edges)
            .field("maximal_cocktails", &self.mis_count);
    }
}
