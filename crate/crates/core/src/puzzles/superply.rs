//! Superply: claim hint-satisfying cells to build a path. P1 connects the
//! left and right edges with 1-cells, P2 the top and bottom edges with
//! 2-cells; diagonal neighbours count as adjacent. An invalid claim is
//! skipped and the turn passes.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Outcome, Player};
use crate::template::PuzzleTemplate;

pub const MAX_SIDE: usize = 32;
const HINT_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HintExpr {
    Sum,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HintTest {
    Less(u32),
    Greater(u32),
    Equal(u32),
    ContainsDigit(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hint {
    pub expr: HintExpr,
    pub test: HintTest,
}

impl Hint {
    /// Satisfied by every cell: row + col is at least 2.
    pub const ANY: Hint = Hint { expr: HintExpr::Sum, test: HintTest::Greater(1) };

    /// `row` and `col` are 1-based.
    pub fn holds(&self, row: usize, col: usize) -> bool {
        let x = match self.expr {
            HintExpr::Sum => (row + col) as u32,
            HintExpr::Product => (row * col) as u32,
        };
        match self.test {
            HintTest::Less(n) => x < n,
            HintTest::Greater(n) => x > n,
            HintTest::Equal(n) => x == n,
            HintTest::ContainsDigit(d) => x.to_string().contains(char::from(b'0' + d)),
        }
    }

    pub fn random<R: Rng>(side: usize, rng: &mut R) -> Hint {
        let expr = if rng.gen_bool(0.5) { HintExpr::Sum } else { HintExpr::Product };
        let (lo, hi) = match expr {
            HintExpr::Sum => (2, 2 * side as u32),
            HintExpr::Product => (1, (side * side) as u32),
        };
        let test = match rng.gen_range(0..4) {
            0 => HintTest::Less(rng.gen_range(lo + 1..=hi + 1)),
            1 => HintTest::Greater(rng.gen_range(lo - 1..hi)),
            2 => HintTest::Equal(rng.gen_range(lo..=hi)),
            _ => HintTest::ContainsDigit(rng.gen_range(0..10)),
        };
        Hint { expr, test }
    }
}

impl fmt::Display for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expr = match self.expr {
            HintExpr::Sum => "sum",
            HintExpr::Product => "product",
        };
        match self.test {
            HintTest::Less(n) => write!(f, "{expr} < {n}"),
            HintTest::Greater(n) => write!(f, "{expr} > {n}"),
            HintTest::Equal(n) => write!(f, "{expr} = {n}"),
            HintTest::ContainsDigit(d) => write!(f, "{expr} contains digit {d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperplyBoard {
    pub side: usize,
    /// 0 empty, 1 claimed by P1, 2 claimed by P2; `grid[r-1][c-1]`.
    pub grid: Vec<Vec<u8>>,
    pub hint: Hint,
    pub claims: [u32; 2],
    pub turns: u32,
    /// Turns after which an unfinished game is a tie.
    pub turn_cap: u32,
}

impl SuperplyBoard {
    pub fn new(side: usize, hint: Hint) -> Result<Self, EngineError> {
        if side == 0 || side > MAX_SIDE {
            return Err(EngineError::InvalidTemplate(format!("side {side} outside 1..={MAX_SIDE}")));
        }
        Ok(SuperplyBoard {
            side,
            grid: vec![vec![0; side]; side],
            hint,
            claims: [0, 0],
            turns: 0,
            turn_cap: 4 * (side * side) as u32,
        })
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<u8> {
        if row == 0 || col == 0 || row > self.side || col > self.side {
            return None;
        }
        Some(self.grid[row - 1][col - 1])
    }

    /// Unoccupied 1-based cells satisfying `hint`, row-major.
    pub fn cells_for(&self, hint: &Hint) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 1..=self.side {
            for c in 1..=self.side {
                if self.grid[r - 1][c - 1] == 0 && hint.holds(r, c) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    pub fn hint_cells(&self) -> Vec<(usize, usize)> {
        self.cells_for(&self.hint)
    }

    pub fn is_full(&self) -> bool {
        self.grid.iter().flatten().all(|&v| v != 0)
    }

    /// Flood fill from the player's starting edge.
    pub fn has_path(&self, player: Player) -> bool {
        let n = self.side;
        let mark = match player {
            Player::P1 => 1,
            Player::P2 => 2,
            Player::Solo => return false,
        };
        let mut seen = vec![vec![false; n]; n];
        let mut stack = Vec::new();
        for i in 0..n {
            let (r, c) = if mark == 1 { (i, 0) } else { (0, i) };
            if self.grid[r][c] == mark {
                seen[r][c] = true;
                stack.push((r, c));
            }
        }
        while let Some((r, c)) = stack.pop() {
            if (mark == 1 && c == n - 1) || (mark == 2 && r == n - 1) {
                return true;
            }
            for dr in -1i32..=1 {
                for dc in -1i32..=1 {
                    let (nr, nc) = (r as i32 + dr, c as i32 + dc);
                    if nr < 0 || nc < 0 || nr >= n as i32 || nc >= n as i32 {
                        continue;
                    }
                    let (nr, nc) = (nr as usize, nc as usize);
                    if !seen[nr][nc] && self.grid[nr][nc] == mark {
                        seen[nr][nc] = true;
                        stack.push((nr, nc));
                    }
                }
            }
        }
        false
    }

    /// Draws a hint with at least one unoccupied satisfying cell.
    pub fn draw_hint<R: Rng>(&self, rng: &mut R) -> Hint {
        for _ in 0..HINT_ATTEMPTS {
            let h = Hint::random(self.side, rng);
            if !self.cells_for(&h).is_empty() {
                return h;
            }
        }
        Hint::ANY
    }

    pub fn claim(&mut self, player: Player, row: usize, col: usize) -> Result<(), String> {
        match self.cell(row, col) {
            None => Err(format!("({row}, {col}) is off the board")),
            Some(v) if v != 0 => Err(format!("({row}, {col}) is occupied")),
            Some(_) if !self.hint.holds(row, col) => Err(format!("({row}, {col}) does not satisfy {}", self.hint)),
            Some(_) => {
                self.grid[row - 1][col - 1] = if player == Player::P1 { 1 } else { 2 };
                self.claims[player.seat()] += 1;
                Ok(())
            }
        }
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let side = template.param("side")? as usize;
        let mut board = SuperplyBoard::new(side, Hint::ANY)?;
        let mut rng = template.key().child_str("hint").rng();
        board.hint = board.draw_hint(&mut rng);
        Ok(board)
    }
}

impl Rules for SuperplyBoard {
    fn apply(&mut self, mover: Player, mv: &Move, chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        let Move::Claim { row, col } = *mv else {
            return Err(EngineError::VariantMismatch("Superply".into()));
        };
        self.turns += 1;
        let claimed = self.claim(mover, row, col);
        let end = if claimed.is_ok() && self.has_path(mover) {
            Some(Outcome::Win(mover))
        } else if self.is_full() || self.turns >= self.turn_cap {
            Some(Outcome::Tie)
        } else {
            None
        };
        if end.is_none() {
            self.hint = self.draw_hint(&mut chance.next_rng());
        }
        Ok(match claimed {
            Ok(()) => Verdict::Legal { revealed: None, end },
            Err(reason) => Verdict::Skip { reason, end },
        })
    }

    fn legal_moves(&self, _mover: Player) -> LegalMoves {
        LegalMoves::complete(self.hint_cells().into_iter().map(|(row, col)| Move::Claim { row, col }).collect())
    }

    fn render(&self, _viewer: Player, out: &mut ObsWriter) {
        out.field("grid", &self.grid).field("hint", &self.hint.to_string());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn board(side: usize, hint: Hint) -> SuperplyBoard {
        SuperplyBoard::new(side, hint).unwrap()
    }

    #[test]
    fn product_contains_six_on_empty_6x6() {
        let b = board(6, Hint { expr: HintExpr::Product, test: HintTest::ContainsDigit(6) });
        // 6 appears in the products 6, 16 and 36.
        assert_eq!(b.hint_cells(), vec![(1, 6), (2, 3), (3, 2), (4, 4), (6, 1), (6, 6)]);
    }

    #[test]
    fn sum_below_three_is_the_corner() {
        let b = board(6, Hint { expr: HintExpr::Sum, test: HintTest::Less(3) });
        assert_eq!(b.hint_cells(), vec![(1, 1)]);
    }

    #[test]
    fn full_board_has_no_hint_cells() {
        let mut b = board(3, Hint::ANY);
        for row in &mut b.grid {
            row.fill(2);
        }
        assert!(b.hint_cells().is_empty());
    }

    #[test]
    fn straight_and_diagonal_paths() {
        let mut b = board(4, Hint::ANY);
        assert!(!b.has_path(Player::P1) && !b.has_path(Player::P2));
        b.grid[2] = vec![1; 4];
        assert!(b.has_path(Player::P1));
        let mut b = board(4, Hint::ANY);
        for i in 0..4 {
            b.grid[i][3 - i] = 2;
        }
        assert!(b.has_path(Player::P2));
        assert!(!b.has_path(Player::P1));
    }

    #[test]
    fn invalid_claim_is_skipped() {
        let mut b = board(4, Hint { expr: HintExpr::Sum, test: HintTest::Less(3) });
        let before = b.grid.clone();
        let mut chance = ChanceStream { key: 1, counter: 0 };
        let v = b.apply(Player::P1, &Move::Claim { row: 4, col: 4 }, &mut chance).unwrap();
        assert!(matches!(v, Verdict::Skip { end: None, .. }));
        assert_eq!(b.grid, before);
    }

    #[test]
    fn completing_a_row_wins() {
        let mut b = board(3, Hint::ANY);
        b.grid[0] = vec![1, 1, 0];
        let mut chance = ChanceStream { key: 1, counter: 0 };
        let v = b.apply(Player::P1, &Move::Claim { row: 1, col: 3 }, &mut chance).unwrap();
        assert_eq!(v, Verdict::Legal { revealed: None, end: Some(Outcome::Win(Player::P1)) });
    }

    #[test]
    fn every_full_2x2_board_has_a_path() {
        // With corner adjacency for both sides a full board always contains a
        // path, so the full-board tie rule can only trigger through the cap.
        for bits in 0u8..16 {
            let mut b = board(2, Hint::ANY);
            for i in 0..4 {
                b.grid[i / 2][i % 2] = if bits >> i & 1 == 1 { 1 } else { 2 };
            }
            assert!(b.has_path(Player::P1) || b.has_path(Player::P2));
        }
    }

    #[test]
    fn drawn_hints_are_satisfiable() {
        let mut rng = crate::rng::SeedKey::root(5).rng();
        let mut b = board(5, Hint::ANY);
        for r in 0..5 {
            for c in 0..5 {
                if (r + c) % 3 != 0 {
                    b.grid[r][c] = 1;
                }
            }
        }
        for _ in 0..500 {
            let h = b.draw_hint(&mut rng);
            assert!(!b.cells_for(&h).is_empty());
        }
    }
}
