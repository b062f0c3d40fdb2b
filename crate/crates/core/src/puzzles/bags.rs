//! MaxTarget and LargerTarget: draw random coins from bags whose contents
//! are known but whose order has been shuffled.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{LegalMoves, ObsWriter, Rules, Verdict};
use crate::error::EngineError;
use crate::state::{ChanceStream, Move, Outcome, Player, Revealed};
use crate::template::PuzzleTemplate;

/// Bag counts above this make the posterior enumeration impractical.
pub const MAX_BAGS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BagError {
    #[error("bag {0} is empty")]
    EmptyBag(usize),
    #[error("no picks left")]
    NoPicksLeft,
    #[error("bag index {0} out of range")]
    IndexOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Draw {
    pub player: Player,
    pub index: usize,
    pub value: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BagWorld {
    /// Known bag configurations, each sorted ascending. Public.
    pub contents: Vec<Vec<u32>>,
    /// Visible index -> configuration index. Hidden.
    pub permutation: Vec<usize>,
    /// Coins still inside the bag at each visible index. Hidden.
    pub residual: Vec<Vec<u32>>,
    pub draws: Vec<Draw>,
    pub picks_left: Vec<u32>,
    pub totals: Vec<u32>,
    pub two_player: bool,
}

/// A configuration assignment consistent with the draws, with the
/// probability of the observed draw sequence under it.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub permutation: Vec<usize>,
    pub weight: f64,
}

impl BagWorld {
    pub fn new(contents: Vec<Vec<u32>>, permutation: Vec<usize>, max_guess: u32, two_player: bool) -> Self {
        let mut contents = contents;
        for c in &mut contents {
            c.sort_unstable();
        }
        let residual = permutation.iter().map(|&c| contents[c].clone()).collect();
        let seats = if two_player { 2 } else { 1 };
        BagWorld {
            contents,
            permutation,
            residual,
            draws: Vec::new(),
            picks_left: vec![max_guess; seats],
            totals: vec![0; seats],
            two_player,
        }
    }

    pub fn bag_count(&self) -> usize {
        self.contents.len()
    }

    /// Coins already drawn from each visible index.
    pub fn drawn_from(&self, index: usize) -> Vec<u32> {
        self.draws.iter().filter(|d| d.index == index).map(|d| d.value).collect()
    }

    /// Whether a visible index may still hold coins, judged from public data.
    pub fn publicly_nonempty(&self, index: usize) -> bool {
        let drawn = self.drawn_from(index).len();
        self.contents.get(index).is_some_and(|c| drawn < c.len())
    }

    /// Draws a uniformly random coin from the bag at `index`.
    pub fn bag_draw<R: Rng>(&mut self, player: Player, index: usize, rng: &mut R) -> Result<u32, BagError> {
        if index >= self.bag_count() {
            return Err(BagError::IndexOutOfRange(index));
        }
        if self.picks_left[player.seat()] == 0 {
            return Err(BagError::NoPicksLeft);
        }
        let bag = &mut self.residual[index];
        if bag.is_empty() {
            return Err(BagError::EmptyBag(index));
        }
        let value = bag.remove(rng.gen_range(0..bag.len()));
        self.picks_left[player.seat()] -= 1;
        self.totals[player.seat()] += value;
        self.draws.push(Draw { player, index, value });
        Ok(value)
    }

    /// Every configuration assignment consistent with the public draw log.
    pub fn posterior(&self) -> Vec<Hypothesis> {
        let n = self.bag_count();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if let Some(weight) = self.likelihood(&perm) {
                out.push(Hypothesis { permutation: perm.clone(), weight });
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out
    }

    fn likelihood(&self, perm: &[usize]) -> Option<f64> {
        let mut bags: Vec<Vec<u32>> = perm.iter().map(|&c| self.contents[c].clone()).collect();
        let mut weight = 1.0;
        for d in &self.draws {
            let bag = &mut bags[d.index];
            let hits = bag.iter().filter(|&&v| v == d.value).count();
            if hits == 0 {
                return None;
            }
            weight *= hits as f64 / bag.len() as f64;
            let i = bag.iter().position(|&v| v == d.value).expect("hit counted");
            bag.remove(i);
        }
        Some(weight)
    }

    /// Posterior expected value of the next coin from each visible index;
    /// `None` for bags known to be empty.
    pub fn expected_next(&self) -> Vec<Option<f64>> {
        let posterior = self.posterior();
        let norm: f64 = posterior.iter().map(|h| h.weight).sum();
        (0..self.bag_count())
            .map(|index| {
                if !self.publicly_nonempty(index) {
                    return None;
                }
                let drawn = self.drawn_from(index);
                let mut acc = 0.0;
                for h in &posterior {
                    let mut residual = self.contents[h.permutation[index]].clone();
                    for v in &drawn {
                        let i = residual.iter().position(|x| x == v).expect("consistent hypothesis");
                        residual.remove(i);
                    }
                    let mean = residual.iter().map(|&v| f64::from(v)).sum::<f64>() / residual.len() as f64;
                    acc += h.weight * mean;
                }
                Some(acc / norm)
            })
            .collect()
    }

    pub fn picks_remaining(&self) -> u32 {
        self.picks_left.iter().sum()
    }

    pub fn generate(template: &PuzzleTemplate) -> Result<Self, EngineError> {
        let bag_count = template.param("bag_count")? as usize;
        let per_bag = template.param("coins_per_bag")? as usize;
        let max_guess = template.param("max_guess")?;
        let max_coin = template.param("max_coin")?;
        if bag_count > MAX_BAGS {
            return Err(EngineError::CapExceeded(format!("{bag_count} bags exceeds {MAX_BAGS}")));
        }
        let two_player = template.puzzle.is_two_player();
        let seats = if two_player { 2 } else { 1 };
        if max_guess as usize * seats > bag_count * per_bag {
            return Err(EngineError::InvalidTemplate("more picks than coins".into()));
        }
        let mut rng = template.key().child_str("bags").rng();
        let mut contents: Vec<Vec<u32>> = Vec::with_capacity(bag_count);
        let mut attempts = 0;
        while contents.len() < bag_count {
            let mut bag: Vec<u32> = (0..per_bag).map(|_| rng.gen_range(1..=max_coin)).collect();
            bag.sort_unstable();
            attempts += 1;
            // Prefer distinguishable bags; give up on that after many tries.
            if !contents.contains(&bag) || attempts > 1000 {
                contents.push(bag);
            }
        }
        let mut permutation: Vec<usize> = (0..bag_count).collect();
        permutation.shuffle(&mut rng);
        Ok(BagWorld::new(contents, permutation, max_guess, two_player))
    }
}

/// Lexicographic next permutation; false after the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl Rules for BagWorld {
    fn apply(&mut self, mover: Player, mv: &Move, chance: &mut ChanceStream) -> Result<Verdict, EngineError> {
        let Move::PickBag { index } = *mv else {
            return Err(EngineError::VariantMismatch("bag game".into()));
        };
        let mut rng = chance.next_rng();
        let value = match self.bag_draw(mover, index, &mut rng) {
            Ok(v) => v,
            Err(e) => return Ok(Verdict::Violation(e.to_string())),
        };
        let no_coins = self.residual.iter().all(Vec::is_empty);
        let end = if self.picks_remaining() == 0 || no_coins {
            Some(if self.two_player {
                match self.totals[0].cmp(&self.totals[1]) {
                    std::cmp::Ordering::Greater => Outcome::Win(Player::P1),
                    std::cmp::Ordering::Less => Outcome::Win(Player::P2),
                    std::cmp::Ordering::Equal => Outcome::Tie,
                }
            } else {
                Outcome::SoloScore(f64::from(self.totals[0]))
            })
        } else {
            None
        };
        Ok(Verdict::Legal { revealed: Some(Revealed::Coin { index, value }), end })
    }

    fn legal_moves(&self, mover: Player) -> LegalMoves {
        if self.picks_left[mover.seat()] == 0 {
            return LegalMoves::default();
        }
        LegalMoves::complete(
            (0..self.bag_count())
                .filter(|&i| self.publicly_nonempty(i))
                .map(|index| Move::PickBag { index })
                .collect(),
        )
    }

    fn render(&self, viewer: Player, out: &mut ObsWriter) {
        out.field("bags", &self.contents)
            .field("draws", &self.draws)
            .field("picks_left", &self.picks_left[viewer.seat()])
            .field("your_total", &self.totals[viewer.seat()]);
        if self.two_player {
            out.field("opponent_total", &self.totals[viewer.other().seat()]);
        }
    }

    fn scrub(&mut self, _viewer: Player) {
        self.permutation.clear();
        self.residual.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn paper_world() -> BagWorld {
        // Bag at visible index 0 holds [3, 4].
        BagWorld::new(vec![vec![1, 2], vec![3, 4]], vec![1, 0], 2, false)
    }

    #[test]
    fn worked_draw_pins_the_permutation() {
        let mut w = paper_world();
        assert_eq!(w.posterior().len(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut v = 0;
        while v != 4 {
            w = paper_world();
            v = w.bag_draw(Player::Solo, 0, &mut rng).unwrap();
        }
        assert_eq!(w.residual[0], vec![3]);
        let post = w.posterior();
        assert_eq!(post.len(), 1);
        assert_eq!(post[0].permutation, vec![1, 0]);
        let ev = w.expected_next();
        assert_eq!(ev, vec![Some(3.0), Some(1.5)]);
    }

    #[test]
    fn single_coin_draw_is_forced() {
        let mut w = BagWorld::new(vec![vec![7]], vec![0], 1, false);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(w.bag_draw(Player::Solo, 0, &mut rng), Ok(7));
        assert_eq!(w.bag_draw(Player::Solo, 0, &mut rng), Err(BagError::NoPicksLeft));
    }

    #[test]
    fn empty_bag_is_rejected() {
        let mut w = BagWorld::new(vec![vec![7]], vec![0], 3, false);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        w.bag_draw(Player::Solo, 0, &mut rng).unwrap();
        assert_eq!(w.bag_draw(Player::Solo, 0, &mut rng), Err(BagError::EmptyBag(0)));
        assert_eq!(w.bag_draw(Player::Solo, 5, &mut rng), Err(BagError::IndexOutOfRange(5)));
    }

    #[test]
    fn draws_are_uniform_over_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut counts = [0usize; 4];
        let n = 10_000;
        for _ in 0..n {
            let mut w = BagWorld::new(vec![vec![1, 2, 3, 4]], vec![0], 1, false);
            let v = w.bag_draw(Player::Solo, 0, &mut rng).unwrap();
            counts[v as usize - 1] += 1;
        }
        let e = n as f64 / 4.0;
        let chi2: f64 = counts.iter().map(|&o| (o as f64 - e).powi(2) / e).sum();
        // 3 degrees of freedom, p = 0.001.
        assert!(chi2 < 16.27, "chi2 {chi2}");
    }

    #[test]
    fn next_permutation_enumerates_all() {
        let mut p = vec![0, 1, 2, 3];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 24);
    }
}
