//! One-ply greedy policies. Ties go to the first candidate in canonical move
//! order.
//!
//! - SudoKill: the placement leaving the opponent the fewest valid replies.
//! - ExclusivityParticles: one-ply parity. After each candidate the rest of
//!   the game is filled in by always taking the first legal cell; candidates
//!   whose fill-in has an even length (so this player places last) come
//!   first, then the fewest remaining legal placements.
//! - ExclusivityProbes: the probe with the largest worst-case number of
//!   eliminated configurations.
//! - BeatOrBomb: compete iff the card beats the median of the opponent's
//!   remaining hand; the card is the one with the best expected point margin
//!   against a uniformly random reply.
//! - MaxTarget / LargerTarget: the bag with the largest posterior expected
//!   next coin.

use rand::Rng;

use ppx_core::puzzles::bags::BagWorld;
use ppx_core::puzzles::beatorbomb::CardDuelState;
use ppx_core::puzzles::bits_of;
use ppx_core::puzzles::particles::ParticleSpace;
use ppx_core::puzzles::probes::ProbeWorld;
use ppx_core::puzzles::sudokill::SudokillBoard;
use ppx_core::{Move, Player};

use crate::StrategyError;

/// Hypothesis sets larger than this are not enumerated.
pub const PROBE_HYPOTHESIS_CAP: usize = 200_000;

fn argmin_first<T, F: FnMut(&T) -> f64>(items: &[T], mut key: F) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, item) in items.iter().enumerate() {
        let k = key(item);
        if best.is_none_or(|(_, b)| k < b) {
            best = Some((i, k));
        }
    }
    best.map(|(i, _)| i)
}

pub fn sudokill(board: &SudokillBoard) -> Result<Move, StrategyError> {
    let options = board.valid_placements();
    let i = argmin_first(&options, |&(r, c, v)| {
        let mut next = board.clone();
        next.grid[r][c] = v;
        next.last_move = Some((r, c, v));
        next.valid_placements().len() as f64
    })
    .ok_or(StrategyError::NoLegalMoves)?;
    let (row, col, value) = options[i];
    Ok(Move::Place { row, col, value })
}

/// Placements left if both sides keep taking the first legal cell.
fn fill_in_length(space: &ParticleSpace) -> usize {
    let mut s = space.clone();
    let mut n = 0;
    while let Some(&m) = s.legal_masks().first() {
        s.placed.push(m);
        n += 1;
    }
    n
}

pub fn particles(space: &ParticleSpace) -> Result<Move, StrategyError> {
    let options = space.legal_masks();
    let i = argmin_first(&options, |&m| {
        let mut next = space.clone();
        next.placed.push(m);
        let odd = fill_in_length(&next) % 2;
        odd as f64 * 1e6 + next.legal_masks().len() as f64
    })
    .ok_or(StrategyError::NoLegalMoves)?;
    Ok(Move::PlaceParticle { position: bits_of(options[i], space.dimension) })
}

/// Every hidden configuration consistent with the probe log, or `None` when
/// there are more than `cap`.
pub fn probe_hypotheses(world: &ProbeWorld, cap: usize) -> Option<Vec<Vec<u32>>> {
    let cells = 1u32 << world.dimension;
    let no: Vec<u32> = world.log.iter().filter(|(_, yes)| !yes).map(|&(m, _)| m).collect();
    let allowed: Vec<u32> = (0..cells).filter(|m| !no.contains(m)).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn extend(
        world: &ProbeWorld,
        allowed: &[u32],
        from: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        cap: usize,
    ) -> bool {
        if current.len() == world.num_particles {
            if world.found.iter().all(|f| current.contains(f)) {
                if out.len() == cap {
                    return false;
                }
                out.push(current.clone());
            }
            return true;
        }
        for i in from..allowed.len() {
            let m = allowed[i];
            if current.iter().all(|&c| (c ^ m).count_ones() >= world.distance) {
                current.push(m);
                let ok = extend(world, allowed, i + 1, current, out, cap);
                current.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    extend(world, &allowed, 0, &mut current, &mut out, cap).then_some(out)
}

pub fn probes<R: Rng>(world: &ProbeWorld, rng: &mut R) -> Result<Move, StrategyError> {
    let d = world.dimension;
    let probed = |m: u32| world.log.iter().any(|&(q, _)| q == m);
    let unprobed: Vec<u32> = (0..1u32 << d).filter(|&m| !probed(m)).collect();
    let Some(hyps) = probe_hypotheses(world, PROBE_HYPOTHESIS_CAP) else {
        // Too many configurations to reason about: sweep untouched cells.
        let i = rng.gen_range(0..unprobed.len().max(1));
        return unprobed.get(i).map(|&m| Move::Probe { position: bits_of(m, d) }).ok_or(StrategyError::NoLegalMoves);
    };
    let total = hyps.len();
    let counts: Vec<usize> = unprobed.iter().map(|&m| hyps.iter().filter(|h| h.contains(&m)).count()).collect();
    // A cell present in every configuration is a guaranteed hit.
    if let Some(i) = (0..unprobed.len()).find(|&i| total > 0 && counts[i] == total) {
        return Ok(Move::Probe { position: bits_of(unprobed[i], d) });
    }
    let i = argmin_first(&(0..unprobed.len()).collect::<Vec<_>>(), |&i| {
        let worst = counts[i].min(total - counts[i]);
        -(worst as f64) - counts[i] as f64 * 1e-9
    })
    .ok_or(StrategyError::NoLegalMoves)?;
    Ok(Move::Probe { position: bits_of(unprobed[i], d) })
}

fn median(values: &[u8]) -> f64 {
    let mut v: Vec<f64> = values.iter().map(|&x| f64::from(x)).collect();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return 0.0;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Expected point margin of `(card, compete)` against a uniformly random
/// card from `opponent` played with a fair coin for the decision.
pub fn duel_margin(card: u8, compete: bool, opponent: &[u8]) -> f64 {
    if opponent.is_empty() {
        return 0.0;
    }
    let c = f64::from(card);
    let mut acc = 0.0;
    for &o in opponent {
        let of = f64::from(o);
        let vs_compete = match (compete, card.cmp(&o)) {
            (true, std::cmp::Ordering::Greater) => c + of,
            (true, std::cmp::Ordering::Less) => -(c + of),
            (true, std::cmp::Ordering::Equal) => 0.0,
            (false, _) => -of,
        };
        let vs_giveup = if compete { c } else { 0.0 };
        acc += 0.5 * vs_compete + 0.5 * vs_giveup;
    }
    acc / opponent.len() as f64
}

pub fn beatorbomb(state: &CardDuelState, me: Player) -> Result<Move, StrategyError> {
    let mine = &state.hands[me.seat()];
    let theirs = &state.hands[me.other().seat()];
    let bar = median(theirs);
    let mut cards = mine.clone();
    cards.dedup();
    let options: Vec<(u8, bool)> = cards.into_iter().map(|c| (c, f64::from(c) > bar)).collect();
    let i = argmin_first(&options, |&(c, compete)| -duel_margin(c, compete, theirs)).ok_or(StrategyError::NoLegalMoves)?;
    let (card, compete) = options[i];
    Ok(Move::DuelPlay { card, compete })
}

pub fn bags(world: &BagWorld, me: Player) -> Result<Move, StrategyError> {
    if world.picks_left[me.seat()] == 0 {
        return Err(StrategyError::NoLegalMoves);
    }
    let expected = world.expected_next();
    let options: Vec<(usize, f64)> = expected.iter().enumerate().filter_map(|(i, e)| e.map(|v| (i, v))).collect();
    let i = argmin_first(&options, |&(_, v)| -v).ok_or(StrategyError::NoLegalMoves)?;
    Ok(Move::PickBag { index: options[i].0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ppx_core::puzzles::bags::Draw;

    #[test]
    fn max_target_worked_state_picks_bag_zero() {
        // Bag 0 gave a 4, so it is [3, 4] with a 3 left; bag 1 is [1, 2].
        let mut w = BagWorld::new(vec![vec![1, 2], vec![3, 4]], vec![], 2, false);
        w.draws.push(Draw { player: Player::Solo, index: 0, value: 4 });
        w.picks_left = vec![1];
        assert_eq!(w.expected_next(), vec![Some(3.0), Some(1.5)]);
        assert_eq!(bags(&w, Player::Solo).unwrap(), Move::PickBag { index: 0 });
    }

    #[test]
    fn duel_decision_uses_the_median() {
        let s = CardDuelState::new(vec![2, 13], vec![5, 6, 7]);
        let Move::DuelPlay { card, compete } = beatorbomb(&s, Player::P1).unwrap() else { panic!() };
        assert_eq!(card, 13);
        assert!(compete);
        let s = CardDuelState::new(vec![2], vec![5, 6, 7]);
        assert_eq!(beatorbomb(&s, Player::P1).unwrap(), Move::DuelPlay { card: 2, compete: false });
    }

    #[test]
    fn sudokill_takes_a_winning_placement() {
        // After (1, 8) = 4 the opponent has no valid reply on the worked grid.
        let grid = vec![
            vec![6, 8, 4, 5, 1, 3, 2, 7, 9],
            vec![5, 9, 7, 6, 2, 0, 1, 8, 0],
            vec![2, 3, 1, 4, 8, 7, 6, 5, 0],
            vec![9, 1, 2, 7, 6, 4, 8, 0, 3],
            vec![4, 6, 8, 3, 0, 1, 7, 2, 5],
            vec![7, 5, 3, 2, 9, 8, 4, 1, 6],
            vec![8, 4, 5, 1, 3, 2, 9, 6, 7],
            vec![1, 0, 6, 9, 0, 5, 0, 3, 8],
            vec![3, 2, 0, 0, 7, 0, 5, 4, 1],
        ];
        let b = SudokillBoard::from_grid(grid, Some((0, 8, 9))).unwrap();
        let Move::Place { row, col, value } = sudokill(&b).unwrap() else { panic!() };
        let mut next = b.clone();
        next.grid[row][col] = value;
        next.last_move = Some((row, col, value));
        assert!(next.valid_placements().is_empty());
    }

    #[test]
    fn probes_follow_certain_hits() {
        // d=2, k=2: configurations are the two diagonals; a yes at 00 pins 11.
        let mut w = ProbeWorld::new(2, 2, vec![]).unwrap();
        w.num_particles = 2;
        w.log.push((0b00, true));
        w.found.push(0b00);
        let hyps = probe_hypotheses(&w, 100).unwrap();
        assert_eq!(hyps, vec![vec![0b00, 0b11]]);
        let mut rng = rand::rngs::mock::StepRng::new(0, 1);
        assert_eq!(probes(&w, &mut rng).unwrap(), Move::Probe { position: vec![1, 1] });
    }

    #[test]
    fn particles_ties_go_to_canonical_order() {
        let mut s = ParticleSpace::new(3, 2).unwrap();
        s.placed = vec![0b000, 0b011];
        // Both remaining even vertices leave one reply; 101 comes first.
        assert_eq!(particles(&s).unwrap(), Move::PlaceParticle { position: vec![1, 0, 1] });
    }
}
