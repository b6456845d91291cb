use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use foliation_core::report::{
    render_json, render_text, run_text, Command, RunOptions, DEFAULT_MAX_DEPTH,
};

#[derive(Parser)]
#[command(
    name = "foliation",
    version,
    about = "Exact toric analysis of logarithmic foliations on the projective plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Full pipeline: polygon, non-degeneracy, saddle-node audit, curve family and verdict.
    Analyze(Args),
    /// Homogeneous polygon, chart polygons and case.
    Polygon(Args),
    /// Pre-reduction tree at a corner.
    BlowupTree(Args),
    /// Mixed area against the exact root count for a Laurent pair.
    Bkk(Args),
    /// Verdict section only.
    Dichotomy(Args),
}

#[derive(clap::Args)]
struct Args {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    /// Chart whose origin `blowup-tree` expands (0, 1 or 2).
    #[arg(long, default_value_t = 0)]
    chart: usize,
    /// Input file, or `-` for standard input.
    input: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn read_input(path: &Path) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let (command, args) = match Cli::parse().command {
        Sub::Analyze(a) => (Command::Analyze, a),
        Sub::Polygon(a) => (Command::Polygon, a),
        Sub::BlowupTree(a) => (Command::BlowupTree, a),
        Sub::Bkk(a) => (Command::Bkk, a),
        Sub::Dichotomy(a) => (Command::Dichotomy, a),
    };
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    let options = RunOptions {
        max_depth: args.max_depth,
        chart: args.chart,
    };
    match run_text(&text, command, options) {
        Ok(report) => {
            match args.format {
                Format::Json => println!("{}", render_json(&report)),
                Format::Text => print!("{}", render_text(&report)),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
