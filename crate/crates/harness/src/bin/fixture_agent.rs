//! Scripted agent for exercising the harness. Speaks the wire protocol and
//! misbehaves on request:
//!
//!   first-legal   always plays the first listed legal move
//!   garbage[:N]   sends N unparseable replies per move (default: forever)
//!   hang          handshakes, then never answers a move request
//!   crash         plays one move, then exits on the next request
//!   silent        exits without handshaking

use std::io::{BufRead, Write};

use anyhow::{bail, Context, Result};
use serde_json::json;

fn send(out: &mut impl Write, value: serde_json::Value) -> Result<()> {
    writeln!(out, "{value}")?;
    out.flush()?;
    Ok(())
}

fn main() -> Result<()> {
    let mode = std::env::args().nth(1).unwrap_or_else(|| "first-legal".into());
    let garbage_per_move: Option<usize> = match mode.split_once(':') {
        Some(("garbage", n)) => Some(n.parse().context("garbage:N needs a number")?),
        None if mode == "garbage" => Some(usize::MAX),
        None if ["first-legal", "hang", "crash", "silent"].contains(&mode.as_str()) => None,
        _ => bail!("unknown mode {mode:?}"),
    };
    if mode == "silent" {
        return Ok(());
    }

    let stdin = std::io::stdin();
    let mut out = std::io::stdout().lock();
    let mut moves_played = 0usize;
    let mut garbage_sent = 0usize;
    let mut pending: Option<String> = None;

    for line in stdin.lock().lines() {
        let msg: serde_json::Value = serde_json::from_str(&line?)?;
        match msg["type"].as_str() {
            Some("init") => send(&mut out, json!({"type": "ready", "payload": {}}))?,
            Some("observation") => {
                garbage_sent = 0;
                pending = msg["payload"]["legal"].get(0).and_then(|m| m.as_str()).map(String::from);
                match mode.as_str() {
                    "hang" => loop {
                        std::thread::sleep(std::time::Duration::from_secs(3600));
                    },
                    "crash" if moves_played >= 1 => std::process::exit(101),
                    _ => {}
                }
            }
            Some("retry") => {}
            Some("end") => break,
            _ => continue,
        }
        if !matches!(msg["type"].as_str(), Some("observation" | "retry")) {
            continue;
        }
        if garbage_per_move.is_some_and(|n| garbage_sent < n) {
            garbage_sent += 1;
            writeln!(out, "I think the best move here is to think carefully.")?;
            out.flush()?;
            continue;
        }
        let mv = pending.clone().unwrap_or_else(|| "pass".into());
        send(&mut out, json!({"type": "move", "payload": {"move": mv}}))?;
        moves_played += 1;
    }
    Ok(())
}
