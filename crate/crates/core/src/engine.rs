//! The puzzle-agnostic transition layer: instantiate, step, legal moves,
//! observation and forfeits.

use crate::error::EngineError;
use crate::puzzles::{
    bags::BagWorld, beatorbomb::CardDuelState, cardnim::NimState, cocktails::CocktailGraph,
    cocktails::EdgeGameState, particles::ParticleSpace, probes::ProbeWorld, ruby::RubyWorld,
    sudokill::SudokillBoard, superply::SuperplyBoard, tidytower::TowerState, touring::TourState,
    LegalMoves, ObsWriter, Rules, Verdict,
};
use crate::state::{
    ChanceStream, Feedback, GameState, Legality, Move, Outcome, Payload, Phase, Player,
    TerminationStatus, Violation,
};
use crate::template::{PuzzleId, PuzzleTemplate};

macro_rules! with_rules {
    ($payload:expr, $r:ident => $body:expr) => {
        match $payload {
            Payload::SudoKill($r) => $body,
            Payload::TidyTower($r) => $body,
            Payload::CardNim($r) => $body,
            Payload::OptimalTouring($r) => $body,
            Payload::CountMaximalCocktails($r) => $body,
            Payload::MaxMaximalCocktails($r) => $body,
            Payload::ExclusivityParticles($r) => $body,
            Payload::ExclusivityProbes($r) => $body,
            Payload::RubyRisks($r) => $body,
            Payload::BeatOrBomb($r) => $body,
            Payload::MaxTarget($r) | Payload::LargerTarget($r) => $body,
            Payload::Superply($r) => $body,
        }
    };
}

/// Builds S₀ for a template. Deterministic in every template field.
pub fn instantiate(template: &PuzzleTemplate) -> Result<GameState, EngineError> {
    template.validate_shape()?;
    let payload = match template.puzzle {
        PuzzleId::SudoKill => Payload::SudoKill(SudokillBoard::generate(template)?),
        PuzzleId::TidyTower => Payload::TidyTower(TowerState::generate(template)?),
        PuzzleId::CardNim => Payload::CardNim(NimState::generate(template)?),
        PuzzleId::OptimalTouring => Payload::OptimalTouring(TourState::generate(template)?),
        PuzzleId::CountMaximalCocktails => {
            Payload::CountMaximalCocktails(CocktailGraph::generate(template)?)
        }
        PuzzleId::MaxMaximalCocktails => {
            Payload::MaxMaximalCocktails(EdgeGameState::generate(template)?)
        }
        PuzzleId::ExclusivityParticles => {
            Payload::ExclusivityParticles(ParticleSpace::generate(template)?)
        }
        PuzzleId::ExclusivityProbes => Payload::ExclusivityProbes(ProbeWorld::generate(template)?),
        PuzzleId::RubyRisks => Payload::RubyRisks(RubyWorld::generate(template)?),
        PuzzleId::BeatOrBomb => Payload::BeatOrBomb(CardDuelState::generate(template)?),
        PuzzleId::MaxTarget => Payload::MaxTarget(BagWorld::generate(template)?),
        PuzzleId::LargerTarget => Payload::LargerTarget(BagWorld::generate(template)?),
        PuzzleId::Superply => Payload::Superply(SuperplyBoard::generate(template)?),
    };
    Ok(from_payload(template, payload))
}

/// Wraps a hand-built payload (worked examples, tests) into a running state.
pub fn from_payload(template: &PuzzleTemplate, payload: Payload) -> GameState {
    GameState {
        puzzle: template.puzzle,
        difficulty: template.difficulty,
        turn_index: 0,
        active: Player::from_seat(template.puzzle, 0),
        phase: Phase::Running,
        outcome: None,
        violation: None,
        chance: ChanceStream::new(template.key().child_str("chance")),
        payload,
    }
}

/// Whether a move variant belongs to a puzzle.
pub fn move_fits(puzzle: PuzzleId, mv: &Move) -> bool {
    matches!(
        (puzzle, mv),
        (PuzzleId::SudoKill, Move::Place { .. })
            | (PuzzleId::TidyTower, Move::Rotate { .. } | Move::RotateHold { .. })
            | (PuzzleId::CardNim, Move::PlayCard { .. })
            | (PuzzleId::OptimalTouring, Move::Visit { .. } | Move::FinishTour)
            | (PuzzleId::CountMaximalCocktails, Move::AnswerCount { .. } | Move::AnswerFamily { .. })
            | (PuzzleId::MaxMaximalCocktails, Move::AddEdge { .. })
            | (PuzzleId::ExclusivityParticles, Move::PlaceParticle { .. })
            | (PuzzleId::ExclusivityProbes, Move::Probe { .. })
            | (PuzzleId::RubyRisks, Move::Request { .. })
            | (PuzzleId::BeatOrBomb, Move::DuelPlay { .. })
            | (PuzzleId::MaxTarget | PuzzleId::LargerTarget, Move::PickBag { .. })
            | (PuzzleId::Superply, Move::Claim { .. })
    )
}

fn finish(state: &mut GameState, outcome: Outcome) {
    state.phase = Phase::Finished;
    state.outcome = Some(outcome);
}

fn failure_outcome(state: &GameState, offender: Player) -> Outcome {
    if state.puzzle.is_two_player() {
        Outcome::Win(offender.other())
    } else {
        Outcome::SoloScore(with_rules!(&state.payload, r => r.failure_score()))
    }
}

/// Applies one move for the active player. The input state is untouched.
pub fn step(state: &GameState, mv: &Move) -> Result<(GameState, Feedback), EngineError> {
    if !state.is_running() {
        return Err(EngineError::SteppedFinishedGame);
    }
    if !move_fits(state.puzzle, mv) {
        return Err(EngineError::VariantMismatch(state.puzzle.name().to_string()));
    }
    let mover = state.active;
    let mut next = state.clone();
    let mut chance = next.chance;
    let verdict = with_rules!(&mut next.payload, r => r.apply(mover, mv, &mut chance))?;
    next.chance = chance;
    next.turn_index += 1;

    let (legality, revealed) = match verdict {
        Verdict::Legal { revealed, end } => {
            match end {
                Some(outcome) => finish(&mut next, outcome),
                None => next.active = mover.other(),
            }
            (Legality::Legal, revealed)
        }
        Verdict::Skip { reason, end } => {
            match end {
                Some(outcome) => finish(&mut next, outcome),
                None => next.active = mover.other(),
            }
            (Legality::Illegal(reason), None)
        }
        Verdict::Violation(reason) => {
            // The payload may have been partly mutated; keep the pre-move one.
            next.payload = state.payload.clone();
            next.violation = Some(Violation { player: mover, status: TerminationStatus::RuleViolation });
            finish(&mut next, failure_outcome(state, mover));
            (Legality::Illegal(reason), None)
        }
        Verdict::Malformed(reason) => {
            next.payload = state.payload.clone();
            next.violation = Some(Violation { player: mover, status: TerminationStatus::NotFollowInstruction });
            finish(&mut next, failure_outcome(state, mover));
            (Legality::Malformed(reason), None)
        }
    };

    // A two-player game where the player to move has nothing legal: they lose.
    if next.is_running() && next.puzzle.is_two_player() {
        let moves = legal_moves(&next);
        if moves.is_empty() && !moves.truncated {
            let stuck = next.active;
            finish(&mut next, Outcome::Win(stuck.other()));
        }
    }

    let feedback = Feedback {
        legality,
        terminated: !next.is_running(),
        outcome: next.outcome,
        revealed,
    };
    Ok((next, feedback))
}

/// Ends the match because `offender` failed outside the rules (timeout,
/// crash, unusable output, or a rule violation detected by the harness).
pub fn forfeit(state: &GameState, offender: Player, status: TerminationStatus) -> Result<(GameState, Feedback), EngineError> {
    if !state.is_running() {
        return Err(EngineError::SteppedFinishedGame);
    }
    let mut next = state.clone();
    next.violation = Some(Violation { player: offender, status });
    finish(&mut next, failure_outcome(state, offender));
    let feedback = Feedback {
        legality: Legality::Illegal(status.name().to_string()),
        terminated: true,
        outcome: next.outcome,
        revealed: None,
    };
    Ok((next, feedback))
}

/// Moves for the active player, in canonical order; empty once finished.
pub fn legal_moves(state: &GameState) -> LegalMoves {
    if !state.is_running() {
        return LegalMoves::default();
    }
    with_rules!(&state.payload, r => r.legal_moves(state.active))
}

/// The state as `viewer` may know it: hidden fields cleared.
pub fn public_view(state: &GameState, viewer: Player) -> GameState {
    let mut view = state.clone();
    with_rules!(&mut view.payload, r => r.scrub(viewer));
    view.chance = ChanceStream { key: 0, counter: 0 };
    view
}

/// Canonical observation text for `viewer`, rendered from the public view.
pub fn observe(state: &GameState, viewer: Player) -> String {
    let view = public_view(state, viewer);
    let mut out = ObsWriter::default();
    out.field("puzzle", view.puzzle.name())
        .field("difficulty", &view.difficulty.to_string())
        .field("turn", &view.turn_index)
        .field("you", viewer.label())
        .field("to_move", view.active.label())
        .field("finished", &!view.is_running());
    with_rules!(&view.payload, r => r.render(viewer, &mut out));
    out.finish()
}

/// Raw score per seat of a finished state: win 1, loss 0, tie 0.5 for duels.
pub fn raw_scores(state: &GameState) -> Result<Vec<f64>, EngineError> {
    let outcome = state.outcome.ok_or(EngineError::UnterminatedTrajectory)?;
    Ok(match outcome {
        Outcome::SoloScore(s) => vec![s],
        Outcome::Tie => vec![0.5, 0.5],
        Outcome::Win(Player::P1) => vec![1.0, 0.0],
        Outcome::Win(Player::P2) => vec![0.0, 1.0],
        Outcome::Win(Player::Solo) => vec![1.0],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::Difficulty;

    fn template(p: PuzzleId) -> PuzzleTemplate {
        PuzzleTemplate::new(p, Difficulty::Easy, 3)
    }

    #[test]
    fn instantiation_is_deterministic() {
        for p in PuzzleId::ALL {
            for d in Difficulty::ALL {
                let t = PuzzleTemplate::new(p, d, 17);
                let a = instantiate(&t).unwrap();
                let b = instantiate(&t).unwrap();
                assert_eq!(a, b, "{p} {d}");
                assert_eq!(a.turn_index, 0);
                assert!(a.is_running());
            }
        }
    }

    #[test]
    fn cardnim_last_stone_wins() {
        let t = template(PuzzleId::CardNim);
        let s = from_payload(&t, Payload::CardNim(NimState::new(1, vec![1, 2], vec![1, 2])));
        let (next, fb) = step(&s, &Move::PlayCard { card: 1 }).unwrap();
        assert!(fb.legality.is_legal() && fb.terminated);
        assert_eq!(fb.outcome, Some(Outcome::Win(Player::P1)));
        assert_eq!(raw_scores(&next).unwrap(), vec![1.0, 0.0]);
        assert_eq!(step(&next, &Move::PlayCard { card: 2 }), Err(EngineError::SteppedFinishedGame));
    }

    #[test]
    fn wrong_variant_is_an_error() {
        let s = instantiate(&template(PuzzleId::CardNim)).unwrap();
        assert!(matches!(step(&s, &Move::FinishTour), Err(EngineError::VariantMismatch(_))));
    }

    #[test]
    fn duel_violation_hands_the_win_over() {
        let t = template(PuzzleId::CardNim);
        let s = from_payload(&t, Payload::CardNim(NimState::new(5, vec![1, 2, 3], vec![1, 2, 3])));
        let (next, fb) = step(&s, &Move::PlayCard { card: 7 }).unwrap();
        assert!(!fb.legality.is_legal());
        assert_eq!(next.outcome, Some(Outcome::Win(Player::P2)));
        assert_eq!(
            next.statuses(),
            vec![TerminationStatus::RuleViolation, TerminationStatus::Legal]
        );
    }

    #[test]
    fn stuck_player_loses() {
        let t = template(PuzzleId::CardNim);
        let s = from_payload(&t, Payload::CardNim(NimState::new(3, vec![2], vec![2, 3])));
        // P1 plays 2 leaving 1 stone; P2 holds only larger cards.
        let (next, fb) = step(&s, &Move::PlayCard { card: 2 }).unwrap();
        assert!(fb.terminated);
        assert_eq!(next.outcome, Some(Outcome::Win(Player::P1)));
        assert_eq!(next.statuses(), vec![TerminationStatus::Legal, TerminationStatus::Legal]);
    }

    #[test]
    fn ruby_overrequest_is_legal_and_gains_nothing() {
        let t = template(PuzzleId::RubyRisks);
        let s = from_payload(&t, Payload::RubyRisks(RubyWorld::new(vec![10, 5])));
        let (_, fb) = step(&s, &Move::Request { amount: 12 }).unwrap();
        assert!(fb.legality.is_legal());
        assert_eq!(fb.revealed, Some(crate::state::Revealed::RubyGain { gain: 0 }));
    }

    #[test]
    fn hidden_fields_do_not_change_observations() {
        let t = template(PuzzleId::RubyRisks);
        let a = from_payload(&t, Payload::RubyRisks(RubyWorld::new(vec![10, 5, 0])));
        let b = from_payload(&t, Payload::RubyRisks(RubyWorld::new(vec![0, 5, 10])));
        assert_eq!(observe(&a, Player::Solo), observe(&b, Player::Solo));
        let text = observe(&a, Player::Solo);
        assert!(text.starts_with("puzzle: \"RubyRisks\"\n"));
        assert!(!text.contains("[10,5,0]"));
    }

    #[test]
    fn beatorbomb_commitment_hidden_from_second_player() {
        let s = instantiate(&template(PuzzleId::BeatOrBomb)).unwrap();
        let card = match &s.payload {
            Payload::BeatOrBomb(d) => d.hands[0][0],
            _ => unreachable!(),
        };
        let (next, _) = step(&s, &Move::DuelPlay { card, compete: true }).unwrap();
        let mut twin = next.clone();
        if let Payload::BeatOrBomb(d) = &mut twin.payload {
            d.pending = Some(crate::puzzles::beatorbomb::Play { card: 13, compete: false });
        }
        assert_eq!(observe(&next, Player::P2), observe(&twin, Player::P2));
    }

    #[test]
    fn legal_moves_step_legally_on_random_walks() {
        use rand::Rng;
        let mut rng = crate::rng::SeedKey::root(99).rng();
        for p in PuzzleId::ALL {
            for seed in 0..4 {
                let mut s = instantiate(&PuzzleTemplate::new(p, Difficulty::Easy, seed)).unwrap();
                let mut guard = 0;
                while s.is_running() && guard < 500 {
                    guard += 1;
                    let moves = legal_moves(&s);
                    if moves.is_empty() {
                        break;
                    }
                    let mv = moves.moves[rng.gen_range(0..moves.moves.len())].clone();
                    let (next, fb) = step(&s, &mv).unwrap();
                    assert!(fb.legality.is_legal(), "{p}: {mv:?} -> {fb:?}");
                    assert_eq!(next.turn_index, s.turn_index + 1);
                    assert_eq!(fb.terminated, fb.outcome.is_some());
                    s = next;
                }
            }
        }
    }
}
