//! Slow, direct reference solvers. They share as little code as possible with
//! the strategies they check and are only practical on small instances.

use ppx_core::puzzles::cocktails::EdgeGameState;
use ppx_core::puzzles::particles::ParticleSpace;
use ppx_core::puzzles::ruby::RubyWorld;
use ppx_core::puzzles::tidytower::CubeColor;
use ppx_core::puzzles::touring::{tour_score, Site};
use ppx_core::Player;

/// Plain minimax: does the mover, holding `mine`, win with `stones` left?
/// Taking the last stone wins; having no playable card loses.
pub fn nim_minimax(stones: u32, mine: &[u32], theirs: &[u32]) -> bool {
    (0..mine.len()).any(|i| {
        let c = mine[i];
        if c > stones {
            return false;
        }
        if c == stones {
            return true;
        }
        let mut rest = mine.to_vec();
        rest.remove(i);
        !nim_minimax(stones - c, theirs, &rest)
    })
}

/// Fewest moves that tidy `colors`, by iterative deepening. Every move adds
/// a number of quarter turns to a contiguous run of cubes, so moves commute
/// and a shortest solution never turns the same run twice; the search only
/// tries runs in increasing order.
pub fn tower_iddfs(colors: &[CubeColor], max_depth: usize) -> Option<usize> {
    let n = colors.len();
    let spans: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    let mut state: Vec<u8> = colors.iter().map(|c| c.index()).collect();

    fn tidy(s: &[u8]) -> bool {
        s.iter().all(|&x| x == s[0])
    }
    fn dfs(state: &mut [u8], spans: &[(usize, usize)], from: usize, left: usize) -> bool {
        if tidy(state) {
            return true;
        }
        if left == 0 {
            return false;
        }
        for (k, &(a, b)) in spans.iter().enumerate().skip(from) {
            for turns in 1..=3u8 {
                for x in &mut state[a..b] {
                    *x = (*x + turns) % 4;
                }
                let found = dfs(state, spans, k + 1, left - 1);
                for x in &mut state[a..b] {
                    *x = (*x + 4 - turns) % 4;
                }
                if found {
                    return true;
                }
            }
        }
        false
    }
    (0..=max_depth).find(|&depth| dfs(&mut state, &spans, 0, depth))
}

/// Best plan over every ordered subset of sites (ids are 1-based).
pub fn tour_bruteforce(sites: &[Site]) -> (Vec<usize>, u32) {
    fn rec(sites: &[Site], plan: &mut Vec<usize>, used: &mut [bool], best: &mut (Vec<usize>, u32)) {
        let v = tour_score(sites, plan);
        if v > best.1 {
            *best = (plan.clone(), v);
        }
        for id in 1..=sites.len() {
            if used[id - 1] {
                continue;
            }
            used[id - 1] = true;
            plan.push(id);
            rec(sites, plan, used, best);
            plan.pop();
            used[id - 1] = false;
        }
    }
    let mut best = (Vec::new(), 0);
    rec(sites, &mut Vec::new(), &mut vec![false; sites.len()], &mut best);
    best
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Exact expectimax for the next request: `(best request, expected future gain)`.
/// The prior is uniform over compositions, conditioned on the world's log.
pub fn ruby_expectimax(world: &RubyWorld) -> (u32, f64) {
    let worlds: Vec<Vec<u32>> = compositions(world.total_rubies, world.num_boxes)
        .into_iter()
        .filter(|c| {
            world.log.iter().enumerate().all(|(i, &(request, gain))| {
                let got = if request <= c[i] { request } else { 0 };
                got == gain
            })
        })
        .collect();

    fn value(worlds: &[&Vec<u32>], i: usize, bound: u32) -> (u32, f64) {
        if worlds.is_empty() || i == worlds[0].len() {
            return (0, 0.0);
        }
        let mut best = (0, f64::NEG_INFINITY);
        for request in 0..=bound {
            let (hit, miss): (Vec<&Vec<u32>>, Vec<&Vec<u32>>) = worlds.iter().partition(|c| request <= c[i]);
            let n = worlds.len() as f64;
            let mut v = 0.0;
            if !hit.is_empty() {
                v += hit.len() as f64 / n * (f64::from(request) + value(&hit, i + 1, bound - request).1);
            }
            if !miss.is_empty() {
                v += miss.len() as f64 / n * value(&miss, i + 1, bound).1;
            }
            if v > best.1 + 1e-12 {
                best = (request, v);
            }
        }
        best
    }
    let refs: Vec<&Vec<u32>> = worlds.iter().collect();
    value(&refs, world.next_box, world.total_rubies - world.collected)
}

/// Unmemoized game-tree search: does the player to move win?
pub fn particles_minimax(space: &ParticleSpace) -> bool {
    space.legal_masks().into_iter().any(|m| {
        let mut next = space.clone();
        next.placed.push(m);
        !particles_minimax(&next)
    })
}

/// Unmemoized game-tree search over the edge game.
pub fn edge_game_minimax(state: &EdgeGameState) -> bool {
    state.absent_edges().into_iter().any(|(u, v)| match state.move_legal(u, v) {
        Ok((true, count)) => {
            let mut next = state.clone();
            next.add_edge(u, v, count);
            !edge_game_minimax(&next)
        }
        _ => false,
    })
}

/// Fewest empty cells `player` must still claim to join their sides, by
/// relaxing every cell until nothing changes. `None` when no route exists.
pub fn flood_distance(grid: &[Vec<u8>], player: Player) -> Option<u32> {
    let n = grid.len();
    let own = if player == Player::P2 { 2 } else { 1 };
    let step = |r: usize, c: usize| match grid[r][c] {
        0 => Some(1),
        v if v == own => Some(0),
        _ => None,
    };
    let inf = u32::MAX;
    let mut dist = vec![vec![inf; n]; n];
    for i in 0..n {
        let (r, c) = if own == 1 { (i, 0) } else { (0, i) };
        if let Some(w) = step(r, c) {
            dist[r][c] = w;
        }
    }
    loop {
        let mut changed = false;
        for r in 0..n {
            for c in 0..n {
                let Some(w) = step(r, c) else { continue };
                for nr in r.saturating_sub(1)..=(r + 1).min(n - 1) {
                    for nc in c.saturating_sub(1)..=(c + 1).min(n - 1) {
                        if dist[nr][nc] != inf && dist[nr][nc] + w < dist[r][c] {
                            dist[r][c] = dist[nr][nc] + w;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let ends = (0..n).map(|i| if own == 1 { dist[i][n - 1] } else { dist[n - 1][i] });
    ends.min().filter(|&d| d != inf)
}
