//! `gentle-topo`: surface models and derived invariants of graded gentle
//! algebras from the command line.

mod commands;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use commands::{Failure, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "gentle-topo", version, about = "Surface models and derived invariants of graded gentle algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Longest arc cycle considered when searching for curves (default: number of vertices).
    #[arg(long, global = true, env = "GENTLE_TOPO_MAX_CYCLE_LEN", value_parser = clap::value_parser!(u64).range(1..))]
    pub max_cycle_len: Option<u64>,

    /// Seed for the order in which candidate curves are tried.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// File with one input path per line; the command runs on each of them.
    #[arg(long, global = true)]
    pub batch: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the input is a gentle algebra and report properness and smoothness.
    Validate { input: Option<PathBuf> },
    /// Genus, boundary data, sigma, atilde, Arf and the winding vector.
    Invariants { input: Option<PathBuf> },
    /// Decide whether two algebras are derived equivalent.
    Equiv { left: PathBuf, right: PathBuf },
    /// Whether the perfect derived category has a silting object.
    Silting { input: Option<PathBuf> },
    /// Whether eA is pre-silting and partial silting, for e the sum of the kept vertices.
    Presilting {
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
        input: Option<PathBuf>,
    },
    /// The reduced algebra A_e for e the sum of the dropped vertices.
    Reduce {
        #[arg(long, value_delimiter = ',', required = true)]
        drop: Vec<String>,
        input: Option<PathBuf>,
    },
    /// Print the canonical algebra with the given grading sums.
    An {
        #[arg(long, value_parser = parse_form, allow_hyphen_values = true)]
        pairs: gentle_topo::AnForm,
    },
    /// Apply the two-handle rewrite to an algebra of canonical shape.
    Move { input: Option<PathBuf> },
    /// Koszul dual of a canonical two-handle algebra.
    Koszul { input: Option<PathBuf> },
    /// Marked point and polygon graphs in DOT format.
    EmitDot { input: Option<PathBuf> },
}

fn parse_form(s: &str) -> Result<gentle_topo::AnForm, String> {
    s.parse().map_err(|e: gentle_topo::Error| e.to_string())
}

impl Command {
    fn input(&self) -> Option<&PathBuf> {
        match self {
            Command::Validate { input }
            | Command::Invariants { input }
            | Command::Silting { input }
            | Command::Presilting { input, .. }
            | Command::Reduce { input, .. }
            | Command::Move { input }
            | Command::Koszul { input }
            | Command::EmitDot { input } => input.as_ref(),
            Command::Equiv { .. } | Command::An { .. } => None,
        }
    }

    fn reads_one_input(&self) -> bool {
        !matches!(self, Command::Equiv { .. } | Command::An { .. })
    }
}

fn read_source(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn render(report: &Result<Report, Failure>, format: Format) -> String {
    match (report, format) {
        (Ok(r), Format::Text) => r.text.clone(),
        (Ok(r), Format::Json) => format!("{}\n", r.json),
        (Err(f), Format::Text) => format!("error: {}: {}\n", f.kind(), f.message()),
        (Err(f), Format::Json) => format!("{}\n", f.to_json()),
    }
}

fn run_batch(cli: &Cli, list: &PathBuf) -> ExitCode {
    if !cli.command.reads_one_input() || cli.command.input().is_some() {
        eprintln!("error: --batch needs a single-input command without an input path");
        return ExitCode::from(2);
    }
    let listing = match std::fs::read_to_string(list) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", list.display());
            return ExitCode::from(1);
        }
    };
    let paths: Vec<PathBuf> =
        listing.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(PathBuf::from).collect();
    let results: Vec<Result<Report, Failure>> = paths
        .par_iter()
        .map(|p| read_source(Some(p)).and_then(|src| commands::execute(&cli.command, &src, cli)))
        .collect();
    let failed = results.iter().any(Result::is_err);
    let out = match cli.format {
        Format::Text => paths
            .iter()
            .zip(&results)
            .map(|(p, r)| format!("== {} ==\n{}", p.display(), render(r, Format::Text)))
            .collect::<String>(),
        Format::Json => {
            let items: Vec<Value> = paths
                .iter()
                .zip(&results)
                .map(|(p, r)| match r {
                    Ok(rep) => json!({"input": p.display().to_string(), "result": rep.json}),
                    Err(f) => json!({"input": p.display().to_string(), "error": f.to_json()}),
                })
                .collect();
            format!("{}\n", Value::Array(items))
        }
    };
    emit(&out);
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn emit(s: &str) {
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = stdout.write_all(s.as_bytes()).and_then(|_| stdout.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(list) = &cli.batch {
        return run_batch(&cli, list);
    }
    let result = if cli.command.reads_one_input() {
        read_source(cli.command.input()).and_then(|src| commands::execute(&cli.command, &src, &cli))
    } else {
        commands::execute(&cli.command, "", &cli)
    };
    match (&result, cli.format) {
        (Err(_), Format::Text) => eprint!("{}", render(&result, cli.format)),
        _ => emit(&render(&result, cli.format)),
    }
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(_) => ExitCode::from(1),
    }
}
