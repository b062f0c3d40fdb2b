//! TidyTower: a stack of four-coloured cubes to be made uniform.
//!
//! Positions are 1-based from the bottom. `rotate(p, t)` turns cubes
//! `p..=top` by `t` steps along R→Y→B→G→R; `rotate_hold(p, q, t)` turns
//! cubes `p..q` while the held cube `q` and everything above stay put.
//! Either operation counts as one move whatever `t ∈ 1..=3` is.
//!
//! Only the differences between neighbouring cubes matter for tidiness.
//! Every move adds `t` to one difference and (for a held rotation below the
//! top) subtracts `t` from another, which gives an exact closed form for the
//! optimum: the number of non-zero differences minus the largest number of
//! disjoint groups whose differences sum to 0 mod 4.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Outcome, Player};
use crate::template::PuzzleTemplate;

/// Largest tower the solver accepts.
pub const MAX_CUBES: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CubeColor {
    R,
    Y,
    B,
    G,
}

impl CubeColor {
    pub const CYCLE: [CubeColor; 4] = [CubeColor::R, CubeColor::Y, CubeColor::B, CubeColor::G];

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(i: u8) -> CubeColor {
        CubeColor::CYCLE[usize::from(i % 4)]
    }

    pub fn advance(self, turns: u8) -> CubeColor {
        CubeColor::from_index(self.index() + turns % 4)
    }

    pub fn from_char(c: char) -> Option<CubeColor> {
        match c.to_ascii_uppercase() {
            'R' => Some(CubeColor::R),
            'Y' => Some(CubeColor::Y),
            'B' => Some(CubeColor::B),
            'G' => Some(CubeColor::G),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            CubeColor::R => 'R',
            CubeColor::Y => 'Y',
            CubeColor::B => 'B',
            CubeColor::G => 'G',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("move budget exhausted")]
    BudgetExhausted,
    #[error("position {0} is outside the tower")]
    IndexOutOfRange(usize),
    #[error("held cube {hold} is not above position {position}")]
    HoldNotAbove { position: usize, hold: usize },
    #[error("rotation of {0} steps; expected 1..=3")]
    BadTurns(u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TowerState {
    /// Index 0 is the bottom cube.
    pub colors: Vec<CubeColor>,
    pub moves_used: u32,
    pub budget: u32,
}

impl TowerState {
    pub fn parse(colors: &str, budget: u32) -> Option<TowerState> {
        let colors = colors.chars().map(CubeColor::from_char).collect::<Option<Vec<_>>>()?;
        Some(TowerState { colors, moves_used: 0, budget })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    fn check(&self, turns: u8) -> Result<(), TowerError> {
        if self.moves_used >= self.budget {
            return Err(TowerError::BudgetExhausted);
        }
        if !(1..=3).contains(&turns) {
            return Err(TowerError::BadTurns(turns));
        }
        Ok(())
    }

    fn turn_span(&self, from: usize, to: usize, turns: u8) -> TowerState {
        let mut next = self.clone();
        for c in &mut next.colors[from..to] {
            *c = c.advance(turns);
        }
        next.moves_used += 1;
        next
    }

    pub fn rotate(&self, position: usize, turns: u8) -> Result<TowerState, TowerError> {
        self.check(turns)?;
        if position == 0 || position > self.len() {
            return Err(TowerError::IndexOutOfRange(position));
        }
        Ok(self.turn_span(position - 1, self.len(), turns))
    }

    pub fn rotate_hold(&self, position: usize, hold: usize, turns: u8) -> Result<TowerState, TowerError> {
        if hold <= position {
            return Err(TowerError::HoldNotAbove { position, hold });
        }
        self.check(turns)?;
        if position == 0 || position > self.len() {
            return Err(TowerError::IndexOutOfRange(position));
        }
        if hold > self.len() {
            return Err(TowerError::IndexOutOfRange(hold));
        }
        Ok(self.turn_span(position - 1, hold - 1, turns))
    }

    pub fn is_solved(&self) -> bool {
        is_tidy(&self.colors)
    }

    pub fn apply_move(&self, mv: &Move) -> Result<TowerState, TowerError> {
        match *mv {
            Move::Rotate { position, turns } => self.rotate(position, turns),
            Move::RotateHold { position, hold, turns } => self.rotate_hold(position, hold, turns),
            _ => unreachable!("non-tower move"),
        }
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let cubes = template.param("cubes")? as usize;
        if !(2..=MAX_CUBES).contains(&cubes) {
            return Err(EngineError::InvalidTemplate(format!(
                "cube count {cubes} outside 2..={MAX_CUBES}"
            )));
        }
        let mut rng = template.key().child_str("tower").rng();
        loop {
            let colors: Vec<CubeColor> =
                (0..cubes).map(|_| CubeColor::from_index(rng.gen_range(0..4))).collect();
            if !is_tidy(&colors) {
                let budget = optimal_moves(&colors)? as u32;
                return Ok(TowerState { colors, moves_used: 0, budget });
            }
        }
    }
}

impl fmt::Display for TowerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.colors {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

pub fn is_tidy(colors: &[CubeColor]) -> bool {
    colors.windows(2).all(|w| w[0] == w[1])
}

/// Every distinct move on a tower of `len` cubes, in canonical order.
pub fn all_moves(len: usize) -> Vec<Move> {
    let mut moves = Vec::new();
    for position in 1..=len {
        for turns in 1..=3 {
            moves.push(Move::Rotate { position, turns });
        }
        for hold in position + 1..=len {
            for turns in 1..=3 {
                moves.push(Move::RotateHold { position, hold, turns });
            }
        }
    }
    moves
}

fn diffs(colors: &[CubeColor]) -> Vec<u8> {
    colors
        .windows(2)
        .map(|w| (w[1].index() + 4 - w[0].index()) % 4)
        .collect()
}

/// Minimal zero-sum (mod 4) multisets of non-zero residues, as counts of (1, 2, 3).
const GROUP_KINDS: [(usize, usize, usize); 6] =
    [(1, 0, 1), (0, 2, 0), (2, 1, 0), (0, 1, 2), (4, 0, 0), (0, 0, 4)];

fn max_groups(
    counts: (usize, usize, usize),
    memo: &mut HashMap<(usize, usize, usize), (usize, Option<usize>)>,
) -> usize {
    if let Some(&(best, _)) = memo.get(&counts) {
        return best;
    }
    let (a, b, c) = counts;
    let mut best = (0, None);
    for (k, &(ga, gb, gc)) in GROUP_KINDS.iter().enumerate() {
        if ga <= a && gb <= b && gc <= c {
            let v = 1 + max_groups((a - ga, b - gb, c - gc), memo);
            if v > best.0 {
                best = (v, Some(k));
            }
        }
    }
    memo.insert(counts, best);
    best.0
}

fn check_cap(len: usize) -> Result<(), EngineError> {
    if len > MAX_CUBES {
        return Err(EngineError::CapExceeded(format!("tower of {len} cubes exceeds {MAX_CUBES}")));
    }
    Ok(())
}

/// Length of a shortest tidying sequence.
pub fn optimal_moves(colors: &[CubeColor]) -> Result<usize, EngineError> {
    check_cap(colors.len())?;
    let d = diffs(colors);
    let count = |v: u8| d.iter().filter(|&&x| x == v).count();
    let counts = (count(1), count(2), count(3));
    let nonzero = counts.0 + counts.1 + counts.2;
    Ok(nonzero - max_groups(counts, &mut HashMap::new()))
}

/// A shortest move sequence that makes the tower tidy.
pub fn solve(colors: &[CubeColor]) -> Result<Vec<Move>, EngineError> {
    check_cap(colors.len())?;
    let mut d = diffs(colors);
    let mut pools: [Vec<usize>; 4] = Default::default();
    for (i, &v) in d.iter().enumerate() {
        pools[usize::from(v)].push(i);
    }
    let mut memo = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    loop {
        let counts = (pools[1].len(), pools[2].len(), pools[3].len());
        max_groups(counts, &mut memo);
        let Some(&(_, Some(kind))) = memo.get(&counts) else { break };
        let (ga, gb, gc) = GROUP_KINDS[kind];
        let mut g = Vec::new();
        for (residue, take) in [(1, ga), (2, gb), (3, gc)] {
            for _ in 0..take {
                g.push(pools[residue].pop().expect("count checked"));
            }
        }
        groups.push(g);
    }
    let leftover: Vec<usize> = pools[1..].iter().flatten().copied().collect();

    // Boundary i sits between cube i and cube i+1 (0-based); turning cubes
    // i+1..=j adds to d[i] and subtracts from d[j].
    let mut moves = Vec::new();
    let mut chain = |members: &mut Vec<usize>, to_top: bool, d: &mut Vec<u8>| {
        members.sort_unstable();
        for w in 0..members.len() {
            let i = members[w];
            let turns = (4 - d[i]) % 4;
            if turns == 0 {
                continue;
            }
            match members.get(w + 1) {
                Some(&j) => {
                    d[i] = 0;
                    d[j] = (d[j] + 4 - turns) % 4;
                    moves.push(Move::RotateHold { position: i + 2, hold: j + 2, turns });
                }
                None => {
                    debug_assert!(to_top, "zero-sum group left a residue");
                    d[i] = 0;
                    moves.push(Move::Rotate { position: i + 2, turns });
                }
            }
        }
    };
    for mut g in groups {
        chain(&mut g, false, &mut d);
    }
    let mut rest = leftover;
    chain(&mut rest, true, &mut d);
    debug_assert!(d.iter().all(|&x| x == 0));
    Ok(moves)
}

impl Rules for TowerState {
    fn apply(&mut self, _mover: Player, mv: &Move, _chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        if !matches!(mv, Move::Rotate { .. } | Move::RotateHold { .. }) {
            return Err(EngineError::VariantMismatch("TidyTower".into()));
        }
        match self.apply_move(mv) {
            Ok(next) => {
                *self = next;
                let end = if self.is_solved() {
                    Some(Outcome::SoloScore(1.0))
                } else if self.moves_used >= self.budget {
                    Some(Outcome::SoloScore(0.0))
                } else {
                    None
                };
                Ok(Verdict::Legal { revealed: None, end })
            }
            Err(e) => Ok(Verdict::Violation(e.to_string())),
        }
    }

    fn legal_moves(&self, _mover: Player) -> LegalMoves {
        if self.moves_used >= self.budget {
            return LegalMoves::default();
        }
        LegalMoves::complete(all_moves(self.len()))
    }

    fn render(&self, _viewer: Player, out: &mut ObsWriter) {
        out.field("tower", &self.to_string())
            .field("moves_used", &self.moves_used)
            .field("budget", &self.budget);
    }
}
