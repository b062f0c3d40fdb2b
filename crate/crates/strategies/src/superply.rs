//! Superply by shallow adversarial search.
//!
//! A position is scored by how many more empty cells the opponent still
//! needs to complete a path than the player does. Distances come from a 0-1
//! breadth-first relaxation over 8-neighbour steps: own cells cost nothing,
//! empty cells cost one, opponent cells are walls. The first ply is limited
//! to the current hint cells; later plies assume any empty cell, since the
//! future hints are unknown.

use std::collections::VecDeque;

use ppx_core::puzzles::superply::SuperplyBoard;
use ppx_core::{Move, Player};

use crate::StrategyError;

pub const DEFAULT_DEPTH: u32 = 2;

fn mark(player: Player) -> u8 {
    if player == Player::P2 {
        2
    } else {
        1
    }
}

/// Empty cells `player` still has to claim to connect their two sides, or
/// `None` if the opponent has cut every route.
pub fn completion_distance(grid: &[Vec<u8>], player: Player) -> Option<u32> {
    let n = grid.len();
    let own = mark(player);
    let cost = |r: usize, c: usize| -> Option<u32> {
        match grid[r][c] {
            0 => Some(1),
            v if v == own => Some(0),
            _ => None,
        }
    };
    let mut dist = vec![vec![u32::MAX; n]; n];
    let mut queue = VecDeque::new();
    for i in 0..n {
        let (r, c) = if own == 1 { (i, 0) } else { (0, i) };
        if let Some(w) = cost(r, c) {
            if w < dist[r][c] {
                dist[r][c] = w;
                if w == 0 {
                    queue.push_front((r, c));
                } else {
                    queue.push_back((r, c));
                }
            }
        }
    }
    while let Some((r, c)) = queue.pop_front() {
        let d = dist[r][c];
        for dr in -1i32..=1 {
            for dc in -1i32..=1 {
                let (nr, nc) = (r as i32 + dr, c as i32 + dc);
                if (dr, dc) == (0, 0) || nr < 0 || nc < 0 || nr >= n as i32 || nc >= n as i32 {
                    continue;
                }
                let (nr, nc) = (nr as usize, nc as usize);
                let Some(w) = cost(nr, nc) else { continue };
                if d + w < dist[nr][nc] {
                    dist[nr][nc] = d + w;
                    if w == 0 {
                        queue.push_front((nr, nc));
                    } else {
                        queue.push_back((nr, nc));
                    }
                }
            }
        }
    }
    (0..n)
        .map(|i| if own == 1 { dist[i][n - 1] } else { dist[n - 1][i] })
        .min()
        .filter(|&d| d != u32::MAX)
}

/// Score from `me`'s side; larger is better.
pub fn evaluate(grid: &[Vec<u8>], me: Player) -> f64 {
    let unreachable = (grid.len() * grid.len()) as f64 + 1.0;
    let to_f = |d: Option<u32>| d.map_or(unreachable, f64::from);
    let mine = to_f(completion_distance(grid, me));
    let theirs = to_f(completion_distance(grid, me.other()));
    if mine == 0.0 {
        return f64::INFINITY;
    }
    if theirs == 0.0 {
        return f64::NEG_INFINITY;
    }
    theirs - mine
}

fn empty_cells(grid: &[Vec<u8>]) -> Vec<(usize, usize)> {
    let n = grid.len();
    (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).filter(|&(r, c)| grid[r][c] == 0).collect()
}

/// Negamax value of `grid` for `mover`, looking `depth` plies ahead.
fn negamax(grid: &mut Vec<Vec<u8>>, mover: Player, depth: u32) -> f64 {
    let here = evaluate(grid, mover);
    if depth == 0 || here.is_infinite() {
        return here;
    }
    let cells = empty_cells(grid);
    if cells.is_empty() {
        return here;
    }
    let mut best = f64::NEG_INFINITY;
    for (r, c) in cells {
        grid[r][c] = mark(mover);
        let v = -negamax(grid, mover.other(), depth - 1);
        grid[r][c] = 0;
        if v > best {
            best = v;
            if best == f64::INFINITY {
                break;
            }
        }
    }
    best
}

pub fn superply_search(board: &SuperplyBoard, me: Player, depth: u32) -> Result<Move, StrategyError> {
    let options = board.hint_cells();
    if options.is_empty() {
        return Err(StrategyError::NoLegalMoves);
    }
    let mut grid = board.grid.clone();
    let mut best: Option<((usize, usize), f64)> = None;
    for &(row, col) in &options {
        grid[row - 1][col - 1] = mark(me);
        let v = if depth <= 1 { evaluate(&grid, me) } else { -negamax(&mut grid, me.other(), depth - 1) };
        grid[row - 1][col - 1] = 0;
        if best.is_none_or(|(_, b)| v > b) {
            best = Some(((row, col), v));
        }
        if v == f64::INFINITY {
            break;
        }
    }
    let ((row, col), _) = best.expect("options are non-empty");
    Ok(Move::Claim { row, col })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::flood_distance;
    use ppx_core::puzzles::superply::Hint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn takes_the_winning_cell() {
        let mut b = SuperplyBoard::new(4, Hint::ANY).unwrap();
        b.grid[1] = vec![1, 1, 1, 0];
        b.grid[0] = vec![2, 2, 2, 0];
        let Move::Claim { row, col } = superply_search(&b, Player::P1, 2).unwrap() else { panic!() };
        let mut next = b.clone();
        next.claim(Player::P1, row, col).unwrap();
        assert!(next.has_path(Player::P1));
    }

    #[test]
    fn empty_board_distance_is_the_side() {
        let b = SuperplyBoard::new(5, Hint::ANY).unwrap();
        assert_eq!(completion_distance(&b.grid, Player::P1), Some(5));
        assert_eq!(completion_distance(&b.grid, Player::P2), Some(5));
    }

    #[test]
    fn a_full_wall_cuts_the_route() {
        let mut b = SuperplyBoard::new(3, Hint::ANY).unwrap();
        for row in &mut b.grid {
            row[1] = 2;
        }
        assert_eq!(completion_distance(&b.grid, Player::P1), None);
        assert_eq!(completion_distance(&b.grid, Player::P2), Some(0));
    }

    #[test]
    fn matches_the_flood_fill_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let n = rng.gen_range(2..=7);
            let grid: Vec<Vec<u8>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..3)).collect()).collect();
            for p in [Player::P1, Player::P2] {
                assert_eq!(completion_distance(&grid, p), flood_distance(&grid, p), "{grid:?}");
            }
        }
    }
}
