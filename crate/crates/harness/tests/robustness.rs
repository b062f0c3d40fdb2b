use std::time::{Duration, Instant};

use ppx_core::{Difficulty, Player, PuzzleId, PuzzleTemplate, TerminationStatus};
use ppx_harness::protocol::{run_instruction_protocol, Participant, RunOptions};
use ppx_harness::{run_match, AgentHandle, AgentSpec, Limits};
use ppx_strategies::{PolicyKind, Tunables};

const FIXTURE: &str = env!("CARGO_BIN_EXE_ppx-fixture-agent");

fn fixture(mode: &str) -> AgentSpec {
    AgentSpec::Program(vec![FIXTURE.into(), mode.into()])
}

fn limits() -> Limits {
    Limits { move_time: Duration::from_millis(500), cpu_seconds: Some(60) }
}

/// Seat 1 is the fixture, seat 2 a random built-in.
fn duel(puzzle: PuzzleId, mode: &str, seed: u64) -> ppx_core::MatchRecord {
    let t = PuzzleTemplate::new(puzzle, Difficulty::Easy, seed);
    let mut agents = vec![
        AgentHandle::new("fixture", &fixture(mode), &t, Player::P1, Tunables::default()).unwrap(),
        AgentHandle::new("random", &AgentSpec::Builtin(Some(PolicyKind::Random)), &t, Player::P2, Tunables::default()).unwrap(),
    ];
    run_match(&t, &mut agents, &limits()).unwrap()
}

#[test]
fn well_behaved_fixture_finishes_legally() {
    let r = duel(PuzzleId::CardNim, "first-legal", 1);
    assert_eq!(r.statuses, vec![TerminationStatus::Legal; 2]);
    assert!(r.trajectory.len() > 1);
}

#[test]
fn garbage_five_times_is_not_following_instructions() {
    let r = duel(PuzzleId::CardNim, "garbage", 1);
    assert_eq!(r.statuses, vec![TerminationStatus::NotFollowInstruction, TerminationStatus::Legal]);
    assert_eq!(r.raw_scores, vec![0.0, 1.0]);
}

#[test]
fn four_garbage_replies_are_forgiven() {
    let r = duel(PuzzleId::CardNim, "garbage:4", 1);
    assert_eq!(r.statuses, vec![TerminationStatus::Legal; 2]);
}

#[test]
fn hanging_agent_times_out() {
    let start = Instant::now();
    let r = duel(PuzzleId::SudoKill, "hang", 1);
    assert_eq!(r.statuses, vec![TerminationStatus::Timeout, TerminationStatus::Legal]);
    assert_eq!(r.raw_scores, vec![0.0, 1.0]);
    assert!(start.elapsed() < Duration::from_secs(5));
}

#[test]
fn crashing_agent_is_a_runtime_error() {
    let r = duel(PuzzleId::Superply, "crash", 1);
    assert_eq!(r.statuses, vec![TerminationStatus::RuntimeError, TerminationStatus::Legal]);
    assert_eq!(r.raw_scores, vec![0.0, 1.0]);
    assert!(!r.trajectory.is_empty());
}

#[test]
fn unlaunchable_agents_are_syntax_errors() {
    for spec in [AgentSpec::Program(vec!["/definitely/not/here".into()]), fixture("silent")] {
        let t = PuzzleTemplate::new(PuzzleId::TidyTower, Difficulty::Easy, 1);
        let mut agents = vec![AgentHandle::new("bad", &spec, &t, Player::Solo, Tunables::default()).unwrap()];
        let r = run_match(&t, &mut agents, &limits()).unwrap();
        assert_eq!(r.statuses, vec![TerminationStatus::SyntaxError]);
        assert!(r.trajectory.len() == 1);
    }
}

#[test]
fn solo_failures_score_the_failure_value() {
    let t = PuzzleTemplate::new(PuzzleId::ExclusivityProbes, Difficulty::Easy, 1);
    let mut agents = vec![AgentHandle::new("bad", &fixture("garbage"), &t, Player::Solo, Tunables::default()).unwrap()];
    let r = run_match(&t, &mut agents, &limits()).unwrap();
    assert_eq!(r.statuses, vec![TerminationStatus::NotFollowInstruction]);
    assert!(r.raw_scores[0] > 0.0, "probe failures score the probe cap");
}

#[test]
fn tournament_with_misbehaving_agents_completes() {
    let people = [
        Participant::new("garbage", fixture("garbage")),
        Participant::new("hang", fixture("hang")),
        Participant::new("crash", fixture("crash")),
        Participant::new("table", AgentSpec::Builtin(None)),
    ];
    let opts = RunOptions { limits: limits(), ..RunOptions::default() };
    let recs = run_instruction_protocol(PuzzleId::CardNim, Difficulty::Easy, &people, &opts).unwrap();
    assert_eq!(recs.len(), 60);
    let expected = [
        ("garbage", TerminationStatus::NotFollowInstruction),
        ("hang", TerminationStatus::Timeout),
        ("crash", TerminationStatus::RuntimeError),
    ];
    for (name, status) in expected {
        let against_table: Vec<_> = recs.iter().filter(|r| r.agents.contains(&name.into()) && r.agents.contains(&"table".into())).collect();
        assert_eq!(against_table.len(), 10);
        for r in against_table {
            let me = r.agents.iter().position(|a| a == name).unwrap();
            // CardNim can end before a broken agent is ever asked twice.
            if r.statuses[me] != TerminationStatus::Legal {
                assert_eq!(r.statuses[me], status, "{name}");
                assert_eq!(r.raw_scores[1 - me], 1.0);
            }
        }
        let failed = recs.iter().filter(|r| r.agents.iter().zip(&r.statuses).any(|(a, s)| a == name && *s == status)).count();
        assert!(failed > 0, "{name} never failed");
    }
}
