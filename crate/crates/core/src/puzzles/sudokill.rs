//! SudoKill: competitive Sudoku where each placement must share a row or
//! column with the opponent's last placement.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Player};
use crate::template::PuzzleTemplate;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SudokillBoard {
    pub side: usize,
    pub box_side: usize,
    /// Row-major values, 0 = empty.
    pub grid: Vec<Vec<u8>>,
    pub last_move: Option<(usize, usize, u8)>,
}

impl SudokillBoard {
    pub fn from_grid(grid: Vec<Vec<u8>>, last_move: Option<(usize, usize, u8)>) -> Result<Self, EngineError> {
        let side = grid.len();
        let box_side = integer_sqrt(side)
            .ok_or_else(|| EngineError::InvalidTemplate(format!("side {side} is not a perfect square")))?;
        if grid.iter().any(|row| row.len() != side) {
            return Err(EngineError::InvalidTemplate("grid is not square".into()));
        }
        if grid.iter().flatten().any(|&v| usize::from(v) > side) {
            return Err(EngineError::InvalidTemplate("cell value out of range".into()));
        }
        Ok(SudokillBoard { side, box_side, grid, last_move })
    }

    pub fn empty_cells(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for r in 0..self.side {
            for c in 0..self.side {
                if self.grid[r][c] == 0 {
                    cells.push((r, c));
                }
            }
        }
        cells
    }

    /// Cells the next player may fill, row-major.
    pub fn allowed_cells(&self) -> Vec<(usize, usize)> {
        let empty = self.empty_cells();
        let Some((lr, lc, _)) = self.last_move else {
            return empty;
        };
        let constrained: Vec<_> = empty
            .iter()
            .copied()
            .filter(|&(r, c)| r == lr || c == lc)
            .collect();
        if constrained.is_empty() {
            empty
        } else {
            constrained
        }
    }

    /// True iff `value` does not already appear in the cell's row, column or subgrid.
    pub fn is_valid(&self, row: usize, col: usize, value: u8) -> bool {
        if row >= self.side || col >= self.side || value == 0 || usize::from(value) > self.side {
            return false;
        }
        if (0..self.side).any(|i| self.grid[row][i] == value || self.grid[i][col] == value) {
            return false;
        }
        let (br, bc) = (row / self.box_side * self.box_side, col / self.box_side * self.box_side);
        for r in br..br + self.box_side {
            for c in bc..bc + self.box_side {
                if self.grid[r][c] == value {
                    return false;
                }
            }
        }
        true
    }

    pub fn valid_placements(&self) -> Vec<(usize, usize, u8)> {
        let mut out = Vec::new();
        for (r, c) in self.allowed_cells() {
            for v in 1..=self.side as u8 {
                if self.is_valid(r, c, v) {
                    out.push((r, c, v));
                }
            }
        }
        out
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let side = template.param("side")? as usize;
        let blanks = template.param("blanks")? as usize;
        let box_side = integer_sqrt(side)
            .ok_or_else(|| EngineError::InvalidTemplate(format!("side {side} is not a perfect square")))?;
        if side > 25 {
            return Err(EngineError::InvalidTemplate("side above 25".into()));
        }
        if blanks > side * side {
            return Err(EngineError::InvalidTemplate("more blanks than cells".into()));
        }
        let mut rng = template.key().child_str("grid").rng();
        let mut grid = solved_grid(box_side, &mut rng);
        let mut cells: Vec<(usize, usize)> =
            (0..side).flat_map(|r| (0..side).map(move |c| (r, c))).collect();
        cells.shuffle(&mut rng);
        for &(r, c) in cells.iter().take(blanks) {
            grid[r][c] = 0;
        }
        Ok(SudokillBoard { side, box_side, grid, last_move: None })
    }
}

fn integer_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r >= 1 && r * r == n).then_some(r)
}

/// A random solved grid: the canonical band pattern under digit, row, column,
/// band and stack permutations.
fn solved_grid<R: Rng>(b: usize, rng: &mut R) -> Vec<Vec<u8>> {
    let n = b * b;
    let pattern = |r: usize, c: usize| (b * (r % b) + r / b + c) % n;
    let mut digits: Vec<u8> = (1..=n as u8).collect();
    digits.shuffle(rng);
    let shuffled_axis = |rng: &mut R| {
        let mut groups: Vec<usize> = (0..b).collect();
        groups.shuffle(rng);
        let mut order = Vec::with_capacity(n);
        for g in groups {
            let mut inner: Vec<usize> = (0..b).collect();
            inner.shuffle(rng);
            order.extend(inner.into_iter().map(|i| g * b + i));
        }
        order
    };
    let rows = shuffled_axis(rng);
    let cols = shuffled_axis(rng);
    rows.iter()
        .map(|&r| cols.iter().map(|&c| digits[pattern(r, c)]).collect())
        .collect()
}

impl Rules for SudokillBoard {
    fn apply(&mut self, _mover: Player, mv: &Move, _chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        let Move::Place { row, col, value } = *mv else {
            return Err(EngineError::VariantMismatch("SudoKill".into()));
        };
        if row >= self.side || col >= self.side {
            return Ok(Verdict::Violation(format!("cell ({row}, {col}) is off the board")));
        }
        if self.grid[row][col] != 0 {
            return Ok(Verdict::Violation(format!("cell ({row}, {col}) is occupied")));
        }
        if !self.allowed_cells().contains(&(row, col)) {
            return Ok(Verdict::Violation(format!(
                "cell ({row}, {col}) is not in the row or column of the last move"
            )));
        }
        if !self.is_valid(row, col, value) {
            return Ok(Verdict::Violation(format!(
                "value {value} repeats in the row, column or subgrid of ({row}, {col})"
            )));
        }
        self.grid[row][col] = value;
        self.last_move = Some((row, col, value));
        Ok(Verdict::legal())
    }

    fn legal_moves(&self, _mover: Player) -> LegalMoves {
        LegalMoves::complete(
            self.valid_placements()
                .into_iter()
                .map(|(row, col, value)| Move::Place { row, col, value })
                .collect(),
        )
    }

    fn render(&self, _viewer: Player, out: &mut ObsWriter) {
        out.field("grid", &self.grid)
            .field("last_move", &self.last_move)
            .field("allowed_cells", &self.allowed_cells());
    }
}
