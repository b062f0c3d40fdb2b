//! Worked examples from the puzzle rule cards, driven through the engine.

use ppx_core::engine::{from_payload, legal_moves, observe, raw_scores, step};
use ppx_core::puzzles::bags::BagWorld;
use ppx_core::puzzles::beatorbomb::{resolve_round, CardDuelState, Play};
use ppx_core::puzzles::cardnim::NimState;
use ppx_core::puzzles::cocktails::{maximal_independent_sets, AnswerMode, CocktailGraph, EdgeGameState};
use ppx_core::puzzles::particles::ParticleSpace;
use ppx_core::puzzles::ruby::RubyWorld;
use ppx_core::puzzles::sudokill::SudokillBoard;
use ppx_core::puzzles::tidytower::{optimal_moves, solve, TowerState};
use ppx_core::puzzles::touring::{tour_score, travel_minutes, Site};
use ppx_core::{Difficulty, Move, Outcome, Payload, Player, PuzzleId, PuzzleTemplate, Revealed};

fn template(p: PuzzleId) -> PuzzleTemplate {
    PuzzleTemplate::new(p, Difficulty::Normal, 1)
}

fn paper_sudokill_grid() -> Vec<Vec<u8>> {
    vec![
        vec![6, 8, 4, 5, 1, 3, 2, 7, 9],
        vec![5, 9, 7, 6, 2, 0, 1, 8, 0],
        vec![2, 3, 1, 4, 8, 7, 6, 5, 0],
        vec![9, 1, 2, 7, 6, 4, 8, 0, 3],
        vec![4, 6, 8, 3, 0, 1, 7, 2, 5],
        vec![7, 5, 3, 2, 9, 8, 4, 1, 6],
        vec![8, 4, 5, 1, 3, 2, 9, 6, 7],
        vec![1, 0, 6, 9, 0, 5, 0, 3, 8],
        vec![3, 2, 0, 0, 7, 0, 5, 4, 0],
    ]
}

#[test]
fn sudokill_moves_confined_to_last_row_and_column() {
    let board = SudokillBoard::from_grid(paper_sudokill_grid(), Some((0, 8, 9))).unwrap();
    assert_eq!(board.allowed_cells(), vec![(1, 8), (2, 8), (8, 8)]);
    let s = from_payload(&template(PuzzleId::SudoKill), Payload::SudoKill(board));
    for mv in legal_moves(&s).moves {
        let Move::Place { row, col, .. } = mv else { panic!() };
        assert!([(1, 8), (2, 8), (8, 8)].contains(&(row, col)));
    }
}

#[test]
fn sudokill_duplicate_in_row_loses() {
    let board = SudokillBoard::from_grid(paper_sudokill_grid(), Some((0, 8, 9))).unwrap();
    let s = from_payload(&template(PuzzleId::SudoKill), Payload::SudoKill(board));
    // Row 1 already holds a 9.
    let (next, fb) = step(&s, &Move::Place { row: 1, col: 8, value: 9 }).unwrap();
    assert!(!fb.legality.is_legal());
    assert_eq!(next.outcome, Some(Outcome::Win(Player::P2)));
}

#[test]
fn cardnim_five_stones_first_mover_loses_under_best_play() {
    fn wins(stones: u32, mine: &[u32], theirs: &[u32]) -> bool {
        mine.iter().enumerate().any(|(i, &c)| {
            if c > stones {
                return false;
            }
            if c == stones {
                return true;
            }
            let mut rest = mine.to_vec();
            rest.remove(i);
            !wins(stones - c, theirs, &rest)
        })
    }
    assert!(!wins(5, &[1, 2, 3], &[1, 2, 3]));
    let s = from_payload(&template(PuzzleId::CardNim), Payload::CardNim(NimState::new(5, vec![1, 2, 3], vec![1, 2, 3])));
    assert_eq!(legal_moves(&s).moves.len(), 3);
}

#[test]
fn cocktail_count_two() {
    let family = maximal_independent_sets(&[1, 2, 3, 4], &[(1, 2)], 24).unwrap();
    assert_eq!(family, vec![vec![1, 3, 4], vec![2, 3, 4]]);
    let g = CocktailGraph::new(vec![1, 2, 3, 4], vec![(1, 2)], AnswerMode::CountOnly);
    let t = PuzzleTemplate::new(PuzzleId::CountMaximalCocktails, Difficulty::Easy, 1);
    let s = from_payload(&t, Payload::CountMaximalCocktails(g));
    let (done, fb) = step(&s, &Move::AnswerCount { count: 2 }).unwrap();
    assert!(fb.terminated);
    assert_eq!(raw_scores(&done).unwrap(), vec![1.0]);
}

#[test]
fn cocktail_edges_never_decrease_the_count() {
    let mut g = EdgeGameState::new(vec![1, 2, 3]).unwrap();
    assert_eq!(g.mis_count, 1);
    let (ok, c) = g.move_legal(1, 2).unwrap();
    assert!(ok);
    assert_eq!(c, 2);
    g.add_edge(1, 2, c);
    let (ok, c) = g.move_legal(2, 3).unwrap();
    assert!(ok);
    assert_eq!(c, 2);
}

#[test]
fn particles_third_placement_from_the_worked_line() {
    let t = PuzzleTemplate::new(PuzzleId::ExclusivityParticles, Difficulty::Easy, 1);
    let s = from_payload(&t, Payload::ExclusivityParticles(ParticleSpace::new(3, 2).unwrap()));
    let mut s = s;
    for p in [[0, 0, 0], [0, 1, 1], [1, 0, 1]] {
        let (next, fb) = step(&s, &Move::PlaceParticle { position: p.to_vec() }).unwrap();
        assert!(fb.legality.is_legal());
        s = next;
    }
    // The fourth even-weight vertex stays open.
    assert_eq!(legal_moves(&s).moves, vec![Move::PlaceParticle { position: vec![1, 1, 0] }]);
}

#[test]
fn ruby_requests_collect_eighteen() {
    let t = template(PuzzleId::RubyRisks);
    let mut s = from_payload(&t, Payload::RubyRisks(RubyWorld::new(vec![11, 9, 10])));
    let mut gains = Vec::new();
    for amount in [10, 8, 12] {
        let (next, fb) = step(&s, &Move::Request { amount }).unwrap();
        if let Some(Revealed::RubyGain { gain }) = fb.revealed {
            gains.push(gain);
        }
        s = next;
    }
    assert_eq!(gains, vec![10, 8, 0]);
    assert_eq!(raw_scores(&s).unwrap(), vec![18.0]);
    // Hidden contents never show up, even after the game.
    assert!(!observe(&s, Player::Solo).contains("[11,9,10]"));
}

fn paper_sites() -> Vec<Site> {
    [
        (1, 50, 96, 114, 3, 6, 12),
        (2, 8, 23, 190, 186, 9, 17),
        (3, 88, 69, 218, 3, 9, 12),
        (4, 0, 95, 101, 86, 6, 12),
        (5, 1, 48, 192, 199, 5, 12),
    ]
    .iter()
    .map(|&(id, avenue, street, desired_time, value, begin_hour, end_hour)| Site {
        id,
        avenue,
        street,
        desired_time,
        value,
        begin_hour,
        end_hour,
    })
    .collect()
}

#[test]
fn touring_plan_worth_385() {
    let sites = paper_sites();
    assert_eq!(travel_minutes(&sites[4], &sites[1]), 32);
    assert_eq!(tour_score(&sites, &[5, 2]), 385);
}

#[test]
fn beatorbomb_round_awards() {
    assert_eq!(resolve_round(Play { card: 5, compete: true }, Play { card: 13, compete: false }), (5, 0));
    assert_eq!(resolve_round(Play { card: 5, compete: false }, Play { card: 13, compete: false }), (0, 0));
    let t = template(PuzzleId::BeatOrBomb);
    let s = from_payload(&t, Payload::BeatOrBomb(CardDuelState::new(vec![5], vec![13])));
    let (s, fb) = step(&s, &Move::DuelPlay { card: 5, compete: true }).unwrap();
    assert!(fb.revealed.is_none());
    let (s, fb) = step(&s, &Move::DuelPlay { card: 13, compete: false }).unwrap();
    assert!(fb.terminated);
    assert_eq!(s.outcome, Some(Outcome::Win(Player::P1)));
}

#[test]
fn max_target_draw_reveals_the_bag() {
    let w = BagWorld::new(vec![vec![1, 2], vec![3, 4]], vec![1, 0], 2, false);
    let t = template(PuzzleId::MaxTarget);
    // Find a chance stream whose first draw from index 0 is the 4.
    for seed in 0..64 {
        let mut s = from_payload(&t, Payload::MaxTarget(w.clone()));
        s.chance.key = seed;
        let (next, fb) = step(&s, &Move::PickBag { index: 0 }).unwrap();
        if fb.revealed == Some(Revealed::Coin { index: 0, value: 4 }) {
            let Payload::MaxTarget(after) = &next.payload else { unreachable!() };
            assert_eq!(after.residual[0], vec![3]);
            assert_eq!(after.posterior().len(), 1);
            return;
        }
    }
    panic!("no stream drew the 4");
}

#[test]
fn tidytower_paper_instance_in_eight() {
    let tower = TowerState::parse("RGBYRGBYBGBGBG", 8).unwrap();
    assert!(!tower.is_solved());
    assert_eq!(optimal_moves(&tower.colors).unwrap(), 8);
    let plan = solve(&tower.colors).unwrap();
    assert_eq!(plan.len(), 8);
    let mut t = tower;
    for mv in &plan {
        t = t.apply_move(mv).unwrap();
    }
    assert!(t.is_solved());
}
