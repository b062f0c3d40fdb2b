//! One-line text form of moves, used by agents speaking the harness
//! protocol and by replay tooling.
//!
//! ```text
//! SudoKill              place <row> <col> <value>      (0-indexed cells)
//! TidyTower             rotate <pos> [turns] | hold <pos> <hold> [turns]
//! CardNim               play <card>
//! OptimalTouring        visit <site> | finish
//! CountMaximalCocktails count <n> | family <json list of lists>
//! MaxMaximalCocktails   edge <u> <v>
//! ExclusivityParticles  particle <bits>
//! ExclusivityProbes     probe <bits>
//! RubyRisks             request <n>
//! BeatOrBomb            play <card> compete|giveup     (A, 2..10, J, Q, K)
//! MaxTarget/LargerTarget pick <index>
//! Superply              claim <row> <col>              (1-indexed cells)
//! ```

use crate::error::EngineError;
use crate::puzzles::beatorbomb::card_label;
use crate::state::Move;
use crate::template::PuzzleId;

fn syntax(input: &str, reason: impl Into<String>) -> EngineError {
    EngineError::MoveSyntax { input: input.to_string(), reason: reason.into() }
}

fn num<T: std::str::FromStr>(input: &str, tok: Option<&&str>, what: &str) -> Result<T, EngineError> {
    let tok = tok.ok_or_else(|| syntax(input, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(input, format!("{what} {tok:?} is not a number")))
}

fn bits(input: &str, tok: Option<&&str>) -> Result<Vec<u8>, EngineError> {
    let tok = tok.ok_or_else(|| syntax(input, "missing position"))?;
    tok.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(syntax(input, format!("position {tok:?} is not a bit string"))),
        })
        .collect()
}

fn card_value(input: &str, tok: Option<&&str>) -> Result<u8, EngineError> {
    let tok = tok.ok_or_else(|| syntax(input, "missing card"))?;
    match tok.to_ascii_uppercase().as_str() {
        "A" => Ok(1),
        "J" => Ok(11),
        "Q" => Ok(12),
        "K" => Ok(13),
        other => other
            .parse::<u8>()
            .ok()
            .filter(|v| (1..=13).contains(v))
            .ok_or_else(|| syntax(input, format!("unknown card {tok:?}"))),
    }
}

fn finish_tokens(input: &str, toks: &[&str], used: usize) -> Result<(), EngineError> {
    if toks.len() > used {
        return Err(syntax(input, format!("unexpected trailing text {:?}", toks[used..].join(" "))));
    }
    Ok(())
}

/// Parses exactly one move line for `puzzle`.
pub fn parse_move(puzzle: PuzzleId, input: &str) -> Result<Move, EngineError> {
    let line = input.trim();
    let mut split = line.splitn(2, char::is_whitespace);
    let verb = split.next().unwrap_or("").to_ascii_lowercase();
    let rest = split.next().unwrap_or("").trim();
    if puzzle == PuzzleId::CountMaximalCocktails && verb == "family" {
        let sets: Vec<Vec<u32>> =
            serde_json::from_str(rest).map_err(|e| syntax(input, format!("bad family list: {e}")))?;
        return Ok(Move::AnswerFamily { sets });
    }
    let cleaned = rest.replace([',', '(', ')', '[', ']'], " ");
    let toks: Vec<&str> = cleaned.split_whitespace().collect();
    let t = |i: usize| toks.get(i);
    let (mv, used) = match (puzzle, verb.as_str()) {
        (PuzzleId::SudoKill, "place") => (
            Move::Place { row: num(input, t(0), "row")?, col: num(input, t(1), "column")?, value: num(input, t(2), "value")? },
            3,
        ),
        (PuzzleId::TidyTower, "rotate") => {
            let turns = if toks.len() > 1 { num(input, t(1), "turns")? } else { 1 };
            (Move::Rotate { position: num(input, t(0), "position")?, turns }, if toks.len() > 1 { 2 } else { 1 })
        }
        (PuzzleId::TidyTower, "hold") => {
            let turns = if toks.len() > 2 { num(input, t(2), "turns")? } else { 1 };
            (
                Move::RotateHold { position: num(input, t(0), "position")?, hold: num(input, t(1), "hold")?, turns },
                if toks.len() > 2 { 3 } else { 2 },
            )
        }
        (PuzzleId::CardNim, "play") => (Move::PlayCard { card: num(input, t(0), "card")? }, 1),
        (PuzzleId::OptimalTouring, "visit") => (Move::Visit { site: num(input, t(0), "site")? }, 1),
        (PuzzleId::OptimalTouring, "finish") => (Move::FinishTour, 0),
        (PuzzleId::CountMaximalCocktails, "count") => (Move::AnswerCount { count: num(input, t(0), "count")? }, 1),
        (PuzzleId::MaxMaximalCocktails, "edge") => (Move::AddEdge { u: num(input, t(0), "node")?, v: num(input, t(1), "node")? }, 2),
        (PuzzleId::ExclusivityParticles, "particle") => (Move::PlaceParticle { position: bits(input, t(0))? }, 1),
        (PuzzleId::ExclusivityProbes, "probe") => (Move::Probe { position: bits(input, t(0))? }, 1),
        (PuzzleId::RubyRisks, "request") => (Move::Request { amount: num(input, t(0), "amount")? }, 1),
        (PuzzleId::BeatOrBomb, "play") => {
            let card = card_value(input, t(0))?;
            let compete = match t(1).map(|s| s.to_ascii_lowercase()).as_deref() {
                Some("compete") => true,
                Some("giveup") | Some("give_up") | Some("give-up") => false,
                _ => return Err(syntax(input, "expected compete or giveup")),
            };
            (Move::DuelPlay { card, compete }, 2)
        }
        (PuzzleId::MaxTarget | PuzzleId::LargerTarget, "pick") => (Move::PickBag { index: num(input, t(0), "bag index")? }, 1),
        (PuzzleId::Superply, "claim") => (Move::Claim { row: num(input, t(0), "row")?, col: num(input, t(1), "column")? }, 2),
        _ => return Err(syntax(input, format!("unknown move verb {verb:?} for {puzzle}"))),
    };
    finish_tokens(input, &toks, used)?;
    Ok(mv)
}

/// Scans free text from the last line upward for the first parseable move.
pub fn extract_move(puzzle: PuzzleId, text: &str) -> Result<Move, EngineError> {
    let mut last_err = None;
    for line in text.lines().rev() {
        let line = line.trim().trim_matches(|c| c == '`' || c == '*' || c == '.');
        if line.is_empty() {
            continue;
        }
        match parse_move(puzzle, line) {
            Ok(mv) => return Ok(mv),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| syntax(text, "no move found")))
}

/// Canonical text for a move; `parse_move` reads it back unchanged.
pub fn format_move(mv: &Move) -> String {
    let bit_text = |p: &[u8]| p.iter().map(|b| b.to_string()).collect::<String>();
    match mv {
        Move::Place { row, col, value } => format!("place {row} {col} {value}"),
        Move::Rotate { position, turns } => format!("rotate {position} {turns}"),
        Move::RotateHold { position, hold, turns } => format!("hold {position} {hold} {turns}"),
        Move::PlayCard { card } => format!("play {card}"),
        Move::Visit { site } => format!("visit {site}"),
        Move::FinishTour => "finish".into(),
        Move::AnswerCount { count } => format!("count {count}"),
        Move::AnswerFamily { sets } => {
            format!("family {}", serde_json::to_string(sets).expect("family serializes"))
        }
        Move::AddEdge { u, v } => format!("edge {u} {v}"),
        Move::PlaceParticle { position } => format!("particle {}", bit_text(position)),
        Move::Probe { position } => format!("probe {}", bit_text(position)),
        Move::Request { amount } => format!("request {amount}"),
        Move::DuelPlay { card, compete } => {
            format!("play {} {}", card_label(*card), if *compete { "compete" } else { "giveup" })
        }
        Move::PickBag { index } => format!("pick {index}"),
        Move::Claim { row, col } => format!("claim {row} {col}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{instantiate, legal_moves, step};
    use crate::template::{Difficulty, PuzzleTemplate};

    #[test]
    fn legal_moves_round_trip_through_text() {
        for p in PuzzleId::ALL {
            for d in Difficulty::ALL {
                let mut s = instantiate(&PuzzleTemplate::new(p, d, 5)).unwrap();
                for _ in 0..3 {
                    let moves = legal_moves(&s);
                    for mv in &moves.moves {
                        assert_eq!(&parse_move(p, &format_move(mv)).unwrap(), mv, "{p}");
                    }
                    let Some(first) = moves.moves.first() else { break };
                    s = step(&s, first).unwrap().0;
                    if !s.is_running() {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn lenient_forms() {
        assert_eq!(parse_move(PuzzleId::SudoKill, "place (1, 8, 4)").unwrap(), Move::Place { row: 1, col: 8, value: 4 });
        assert_eq!(parse_move(PuzzleId::TidyTower, "rotate 3").unwrap(), Move::Rotate { position: 3, turns: 1 });
        assert_eq!(parse_move(PuzzleId::BeatOrBomb, "PLAY k giveup").unwrap(), Move::DuelPlay { card: 13, compete: false });
        assert_eq!(
            parse_move(PuzzleId::CountMaximalCocktails, "family [[1,3,4],[2,3,4]]").unwrap(),
            Move::AnswerFamily { sets: vec![vec![1, 3, 4], vec![2, 3, 4]] }
        );
        assert_eq!(
            extract_move(PuzzleId::RubyRisks, "I think 7 is safe.\n`request 7`\n").unwrap(),
            Move::Request { amount: 7 }
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_move(PuzzleId::CardNim, "play two").is_err());
        assert!(parse_move(PuzzleId::CardNim, "visit 2").is_err());
        assert!(parse_move(PuzzleId::ExclusivityParticles, "particle 012").is_err());
        assert!(parse_move(PuzzleId::Superply, "claim 1 2 3").is_err());
        assert!(extract_move(PuzzleId::Superply, "hello\nworld").is_err());
    }
}
