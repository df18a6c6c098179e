//! `parity-si`: generate the worst-case family, solve games, check the
//! family's predicted run and produce benchmark tables.
//!
//! Exit codes: 0 success, 1 verification, benchmark or I/O failure,
//! 2 usage error, 3 invalid input game.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use parity_si::format::{parse, serialize};
use parity_si::{
    expected_iterations, generate, run, validate, zielonka_solve, GameGraph, LocallyOptimizing,
    NodeId, ParityGame, Strategy,
};

const FAILURE: u8 = 1;
const INVALID_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "parity-si",
    version,
    about = "Strategy improvement for parity games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the lower-bound game of size N in PGSolver format.
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve a game by strategy iteration and print both winning regions.
    Solve {
        path: PathBuf,
        /// Dump every visited player-0 strategy to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Cross-check the winners against the recursive solver.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the solver on the lower-bound game and compare with the prediction.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Also compare the full strategy sequence (needs n >= 2).
        #[arg(long)]
        trace: bool,
    },
    /// Time the lower-bound games for a range of sizes and write a CSV table.
    Bench {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_min: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        #[arg(long)]
        csv: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate { n, out } => cmd_generate(n as usize, &out),
        Command::Solve {
            path,
            trace,
            oracle,
        } => cmd_solve(&path, trace.as_deref(), oracle),
        Command::Verify { n, trace } => cmd_verify(n as usize, trace),
        Command::Bench { n_min, n_max, csv } => {
            if n_min > n_max {
                eprintln!("error: --n-min ({n_min}) exceeds --n-max ({n_max})");
                return ExitCode::from(2);
            }
            cmd_bench(n_min as usize, n_max as usize, &csv)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(FAILURE)
        }
    }
}

fn cmd_generate(n: usize, out: &Path) -> Result<ExitCode> {
    let game = generate(n)?.into_game();
    fs::write(out, serialize(&game)).with_context(|| format!("writing {}", out.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(path: &Path, trace_out: Option<&Path>, oracle: bool) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let game = match parse(&text) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("invalid game: {e}");
            return Ok(ExitCode::from(INVALID_INPUT));
        }
    };
    let report = validate(&game);
    if !report.is_solvable() {
        if !report.duplicate_priorities.is_empty() {
            let dups: Vec<String> = report
                .duplicate_priorities
                .iter()
                .map(|p| p.to_string())
                .collect();
            eprintln!("invalid game: duplicate priorities {}", dups.join(", "));
        }
        if !report.dead_ends.is_empty() {
            eprintln!(
                "invalid game: nodes without successors {}",
                id_list(&report.dead_ends)
            );
        }
        return Ok(ExitCode::from(INVALID_INPUT));
    }

    let result = run(&game, &LocallyOptimizing, trace_out.is_some())?;
    if let (Some(out), Some(trace)) = (trace_out, &result.trace) {
        let mut dump = String::new();
        for (i, (sigma, _)) in trace.iter().enumerate() {
            dump.push_str(&strategy_line(&game, i, sigma));
        }
        fs::write(out, dump).with_context(|| format!("writing {}", out.display()))?;
    }
    println!("iterations: {}", result.iteration_count);
    println!("W0: {}", id_list(&result.w0));
    println!("W1: {}", id_list(&result.w1));

    if oracle {
        let z = zielonka_solve(&game);
        if (&z.w0, &z.w1) != (&result.w0, &result.w1) {
            println!("oracle: MISMATCH");
            println!("oracle W0: {}", id_list(&z.w0));
            println!("oracle W1: {}", id_list(&z.w1));
            return Ok(ExitCode::from(FAILURE));
        }
        println!("oracle: agrees");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(n: usize, trace: bool) -> Result<ExitCode> {
    if trace && n < 2 {
        eprintln!("warning: the trace check needs n >= 2; checking the iteration count only");
    }
    let report = generate(n)?.verify(trace)?;
    print!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILURE)
    })
}

fn cmd_bench(n_min: usize, n_max: usize, csv_path: &Path) -> Result<ExitCode> {
    let mut out = csv::Writer::from_path(csv_path)
        .with_context(|| format!("creating {}", csv_path.display()))?;
    out.write_record([
        "n",
        "nodes",
        "edges",
        "iterations",
        "predicted",
        "wall_time_ms",
    ])?;
    let mut code = ExitCode::SUCCESS;
    for n in n_min..=n_max {
        let game = generate(n)?.into_game();
        let start = Instant::now();
        let result = run(&game, &LocallyOptimizing, false)?;
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let predicted = expected_iterations(n);
        if result.iteration_count as u128 != predicted {
            eprintln!(
                "n={n}: {} iterations, predicted {predicted}; aborting",
                result.iteration_count
            );
            code = ExitCode::from(FAILURE);
            break;
        }
        out.write_record([
            n.to_string(),
            game.node_count().to_string(),
            game.edge_count().to_string(),
            result.iteration_count.to_string(),
            predicted.to_string(),
            format!("{wall_ms:.3}"),
        ])?;
        out.flush()?;
    }
    out.flush()?;
    Ok(code)
}

fn id_list<'a>(ids: impl IntoIterator<Item = &'a NodeId>) -> String {
    let ids: Vec<String> = ids.into_iter().map(|v| v.to_string()).collect();
    ids.join(" ")
}

/// Step index, then one tab-separated `v→w` per player-0 node, using node
/// labels where the game has them.
fn strategy_line(game: &ParityGame, step: usize, sigma: &Strategy) -> String {
    let mut line = step.to_string();
    for (v, w) in sigma.iter() {
        write!(line, "\t{}→{}", game.display_name(v), game.display_name(w)).unwrap();
    }
    line.push('\n');
    line
}
