use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ppx_core::record::{to_jsonl, Action};
use ppx_core::{format_move, instantiate, observe, Difficulty, EngineError, Legality, MatchRecord, Player, PuzzleId, PuzzleTemplate, ReplayError};
use ppx_harness::report::{load_replay, load_replays};
use ppx_harness::{run_match, run_tournament, write_tournament, AgentHandle, AgentSpec, HarnessError, Limits, Report, TournamentConfig};
use ppx_strategies::Tunables;

#[derive(Parser)]
#[command(name = "ppx", version, about = "Seeded text puzzles, baseline agents and tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Easy,
    Normal,
}

impl From<Level> for Difficulty {
    fn from(l: Level) -> Self {
        match l {
            Level::Easy => Difficulty::Easy,
            Level::Normal => Difficulty::Normal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReplayFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the initial observation of a seeded instance.
    Gen {
        puzzle: String,
        #[arg(long, value_enum, default_value = "normal")]
        difficulty: Level,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Dump the full initial state as JSON instead.
        #[arg(long)]
        json: bool,
    },
    /// Play one match. Agents are `baseline`, a policy name or `cmd:<program>`.
    Play {
        puzzle: String,
        #[arg(long, default_value = "baseline")]
        p1: String,
        #[arg(long, default_value = "random")]
        p2: String,
        #[arg(long, value_enum, default_value = "normal")]
        difficulty: Level,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Seconds an external program may take per reply.
        #[arg(long, default_value_t = 30.0)]
        time_limit: f64,
        /// Write the replay here.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Run a tournament described by a TOML file.
    Tournament {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "ppx-out")]
        out: PathBuf,
    },
    /// Verify the replays in a directory and print score tables.
    Score {
        dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        elo_seed: u64,
        #[arg(long, default_value_t = 1000)]
        resamples: usize,
        /// Print the score table as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Verify one replay and print it.
    ExportReplay {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ReplayFormat,
    },
}

/// Bad input from the user, as opposed to a failure while running.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_puzzle(s: &str) -> Result<PuzzleId> {
    s.parse::<PuzzleId>().map_err(|e| usage(e.to_string()))
}

fn parse_agent(s: &str) -> Result<AgentSpec> {
    s.parse::<AgentSpec>().map_err(|e| usage(format!("agent {s:?}: {e}")))
}

fn gen(puzzle: &str, difficulty: Difficulty, seed: u64, json: bool) -> Result<()> {
    let template = PuzzleTemplate::new(parse_puzzle(puzzle)?, difficulty, seed);
    let state = instantiate(&template)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&state)?);
    } else {
        let viewer = if template.puzzle.is_two_player() { Player::P1 } else { Player::Solo };
        print!("{}", observe(&state, viewer));
    }
    Ok(())
}

fn print_trajectory(record: &MatchRecord) {
    let t = &record.template;
    println!("{} {} seed {}  {}", t.puzzle, t.difficulty, t.seed, record.agents.join(" vs "));
    for (i, turn) in record.trajectory.iter().enumerate() {
        let (who, what) = match &turn.action {
            Action::Move { player, mv } => (player.label(), format_move(mv)),
            Action::Forfeit { player, status } => (player.label(), format!("forfeit ({})", status.name())),
        };
        let verdict = match &turn.feedback.legality {
            Legality::Legal => String::new(),
            Legality::Illegal(r) => format!("  [illegal: {r}]"),
            Legality::Malformed(r) => format!("  [malformed: {r}]"),
        };
        println!("{i:>4}  {who:<4} {what}{verdict}");
    }
    let statuses: Vec<&str> = record.statuses.iter().map(|s| s.name()).collect();
    println!("scores {:?}  statuses [{}]", record.raw_scores, statuses.join(", "));
}

fn play(puzzle: &str, p1: &str, p2: &str, difficulty: Difficulty, seed: u64, time_limit: f64, replay: Option<&Path>) -> Result<()> {
    let puzzle = parse_puzzle(puzzle)?;
    if !(time_limit > 0.0 && time_limit.is_finite()) {
        return Err(usage(format!("time limit {time_limit} must be positive")));
    }
    let template = PuzzleTemplate::new(puzzle, difficulty, seed);
    let specs: Vec<(&str, AgentSpec)> = if puzzle.is_two_player() {
        vec![("p1", parse_agent(p1)?), ("p2", parse_agent(p2)?)]
    } else {
        vec![("p1", parse_agent(p1)?)]
    };
    let mut agents = Vec::new();
    for (seat, (label, spec)) in specs.iter().enumerate() {
        let name = format!("{label}:{spec}");
        let handle = AgentHandle::new(&name, spec, &template, Player::from_seat(puzzle, seat), Tunables::default())
            .map_err(|e| usage(e.to_string()))?;
        agents.push(handle);
    }
    let limits = Limits { move_time: Duration::from_secs_f64(time_limit), ..Limits::default() };
    let record = run_match(&template, &mut agents, &limits)?;
    print_trajectory(&record);
    if let Some(path) = replay {
        std::fs::write(path, to_jsonl(&record)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn tournament(config: &Path, out: &Path) -> Result<()> {
    let resolved = TournamentConfig::load(config)?.resolve()?;
    let t = run_tournament(&resolved)?;
    write_tournament(&t, out)?;
    print!("{}", t.report.to_pretty());
    eprintln!("{} matches, results in {}", t.records.len(), out.display());
    Ok(())
}

fn score(dir: &Path, elo_seed: u64, resamples: usize, csv: bool) -> Result<()> {
    let replays = if dir.join("replays").is_dir() { dir.join("replays") } else { dir.to_path_buf() };
    if !replays.is_dir() {
        return Err(usage(format!("{} is not a directory", dir.display())));
    }
    let records = load_replays(&replays)?;
    if records.is_empty() {
        bail!("no replays in {}", replays.display());
    }
    let report = Report::from_records(&records, None, elo_seed, resamples)?;
    if csv {
        print!("{}", report.scores.to_csv()?);
    } else {
        print!("{}", report.to_pretty());
    }
    Ok(())
}

fn export_replay(file: &Path, format: ReplayFormat) -> Result<()> {
    let record = load_replay(file)?;
    match format {
        ReplayFormat::Text => print_trajectory(&record),
        ReplayFormat::Json => println!("{}", serde_json::to_string_pretty(&record)?),
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if let Some(h) = cause.downcast_ref::<HarnessError>() {
            match h {
                HarnessError::Config(_) | HarnessError::StochasticPuzzleRejected(_) => return 2,
                HarnessError::Replay(_) => return 3,
                _ => {}
            }
        }
        if cause.is::<ReplayError>() {
            return 3;
        }
        if let Some(EngineError::InvalidTemplate(_) | EngineError::UnknownPuzzle(_)) = cause.downcast_ref::<EngineError>() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { puzzle, difficulty, seed, json } => gen(&puzzle, difficulty.into(), seed, json),
        Command::Play { puzzle, p1, p2, difficulty, seed, time_limit, replay } => {
            play(&puzzle, &p1, &p2, difficulty.into(), seed, time_limit, replay.as_deref())
        }
        Command::Tournament { config, out } => tournament(&config, &out),
        Command::Score { dir, elo_seed, resamples, csv } => score(&dir, elo_seed, resamples, csv),
        Command::ExportReplay { file, format } => export_replay(&file, format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
