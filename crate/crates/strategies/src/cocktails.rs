//! Exhaustive strategies for the two maximal-cocktail puzzles.

use std::collections::HashMap;

use ppx_core::puzzles::cocktails::{AnswerMode, CocktailGraph, EdgeGameState};
use ppx_core::Move;

use crate::StrategyError;

/// Largest graph `mis_bruteforce` will enumerate.
pub const BRUTEFORCE_NODE_CAP: usize = 16;

/// Edge-game positions searched before giving up on an exact answer.
pub const EDGE_GAME_BUDGET: usize = 1 << 20;

/// Maximal independent sets by filtering all subsets. Sets are sorted, the
/// family lexicographically.
pub fn mis_bruteforce(nodes: &[u32], edges: &[(u32, u32)]) -> Result<Vec<Vec<u32>>, StrategyError> {
    let n = nodes.len();
    if n > BRUTEFORCE_NODE_CAP {
        return Err(StrategyError::CapExceeded(format!("{n} nodes exceeds {BRUTEFORCE_NODE_CAP}")));
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        let (Some(a), Some(b)) = (nodes.iter().position(|&x| x == u), nodes.iter().position(|&x| x == v)) else {
            continue;
        };
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut family = Vec::new();
    for set in 0u32..1 << n {
        let independent = (0..n).all(|i| set >> i & 1 == 0 || adj[i] & set == 0);
        let maximal = (0..n).all(|i| set >> i & 1 == 1 || adj[i] & set != 0);
        if independent && maximal {
            let mut s: Vec<u32> = (0..n).filter(|&i| set >> i & 1 == 1).map(|i| nodes[i]).collect();
            s.sort_unstable();
            family.push(s);
        }
    }
    family.sort();
    Ok(family)
}

pub fn answer(graph: &CocktailGraph) -> Result<Move, StrategyError> {
    let family = mis_bruteforce(&graph.nodes, &graph.edges)?;
    Ok(match graph.answer_mode {
        AnswerMode::CountOnly => Move::AnswerCount { count: family.len() as u64 },
        AnswerMode::FullList => Move::AnswerFamily { sets: family },
    })
}

/// Game-tree search over edge sets, encoded as bitmasks over the pairs of
/// the complete graph.
struct EdgeGame<'a> {
    state: &'a EdgeGameState,
    pairs: Vec<(u32, u32)>,
    counts: HashMap<u64, u64>,
    wins: HashMap<u64, bool>,
    budget: usize,
}

impl EdgeGame<'_> {
    fn count(&mut self, mask: u64) -> Result<u64, StrategyError> {
        if let Some(&c) = self.counts.get(&mask) {
            return Ok(c);
        }
        let edges: Vec<(u32, u32)> = (0..self.pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.pairs[i]).collect();
        let c = mis_bruteforce(&self.state.nodes, &edges)?.len() as u64;
        self.counts.insert(mask, c);
        Ok(c)
    }

    fn moves(&mut self, mask: u64) -> Result<Vec<usize>, StrategyError> {
        let current = self.count(mask)?;
        let mut out = Vec::new();
        for i in 0..self.pairs.len() {
            if mask >> i & 1 == 1 {
                continue;
            }
            let next = self.count(mask | 1 << i)?;
            let ok = if self.state.strict_increase { next > current } else { next >= current };
            if ok {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Whether the player to move from `mask` wins; `None` once the budget is spent.
    fn wins(&mut self, mask: u64) -> Result<Option<bool>, StrategyError> {
        if let Some(&w) = self.wins.get(&mask) {
            return Ok(Some(w));
        }
        if self.wins.len() >= self.budget {
            return Ok(None);
        }
        let mut result = false;
        for i in self.moves(mask)? {
            match self.wins(mask | 1 << i)? {
                None => return Ok(None),
                Some(false) => {
                    result = true;
                    break;
                }
                Some(true) => {}
            }
        }
        self.wins.insert(mask, result);
        Ok(Some(result))
    }
}

/// A winning edge for the mover if one exists, else the first legal edge.
/// Falls back to the first legal edge when the search budget runs out.
pub fn edge_game_move(state: &EdgeGameState) -> Result<Move, StrategyError> {
    edge_game_move_with_budget(state, EDGE_GAME_BUDGET)
}

fn edge_game(state: &EdgeGameState, budget: usize) -> Result<(EdgeGame<'_>, u64), StrategyError> {
    let n = state.nodes.len();
    if n * n.saturating_sub(1) / 2 > 64 {
        return Err(StrategyError::CapExceeded(format!("{n} nodes is too many for the edge game search")));
    }
    let mut pairs = Vec::new();
    for (i, &u) in state.nodes.iter().enumerate() {
        for &v in &state.nodes[i + 1..] {
            pairs.push((u.min(v), u.max(v)));
        }
    }
    pairs.sort_unstable();
    let mut mask = 0u64;
    for e in &state.edges {
        if let Some(i) = pairs.iter().position(|p| p == e) {
            mask |= 1 << i;
        }
    }
    Ok((EdgeGame { state, pairs, counts: HashMap::new(), wins: HashMap::new(), budget }, mask))
}

pub fn edge_game_move_with_budget(state: &EdgeGameState, budget: usize) -> Result<Move, StrategyError> {
    let (mut game, mask) = edge_game(state, budget)?;
    let moves = game.moves(mask)?;
    let first = *moves.first().ok_or(StrategyError::NoLegalMoves)?;
    for &i in &moves {
        match game.wins(mask | 1 << i)? {
            Some(false) => {
                let (u, v) = game.pairs[i];
                return Ok(Move::AddEdge { u, v });
            }
            Some(true) => {}
            None => break,
        }
    }
    let (u, v) = game.pairs[first];
    Ok(Move::AddEdge { u, v })
}

/// Whether the player to move in `state` wins with best play; `None` if the
/// search budget runs out.
pub fn edge_game_mover_wins(state: &EdgeGameState) -> Result<Option<bool>, StrategyError> {
    let (mut game, mask) = edge_game(state, EDGE_GAME_BUDGET)?;
    game.wins(mask)
}
