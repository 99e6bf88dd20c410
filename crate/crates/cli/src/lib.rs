//! Command line front end and HTTP puzzle service.

pub mod server;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use planarity_core::obfuscate::{obfuscate, ObfuscateOptions};
use planarity_core::puzzle::{decode_puzzle, encode_puzzle, run_pipeline, verify_solution};
use planarity_core::untangle::untangle;
use planarity_core::{bounds_report, Family, Puzzle, PuzzleError, SolutionAttempt, UntangleError, UntangleMethod};

#[derive(Debug, Parser)]
#[command(name = "planarity", version, about = "Generate, analyze and untangle planarity puzzles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a puzzle from a graph family.
    Gen {
        /// cycle, complete, bipartite, matching, starforest, gs or triangulation
        #[arg(long)]
        family: String,
        /// Comma separated family parameters, e.g. `3,4` for bipartite.
        #[arg(long)]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-draw a puzzle's graph with the greedy obfuscator.
    Obfuscate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        no_local_search: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the number of crossings of a puzzle's start drawing.
    Count {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print the number of disjoint edge pairs of a puzzle's graph.
    Epsilon {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print shift and obfuscation bounds as JSON.
    Bounds {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Untangle a puzzle's start drawing and write the result as a solution.
    Untangle {
        #[arg(long = "in")]
        input: PathBuf,
        /// auto, mis-shrink, apex or reference
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution against a puzzle.
    Verify {
        #[arg(long)]
        puzzle: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Serve every puzzle in a directory over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long)]
        dir: PathBuf,
    },
}

/// A failed command with its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const USAGE: u8 = 1;
    pub const INVALID_INPUT: u8 = 2;
    pub const INVARIANT: u8 = 3;

    pub fn invalid(message: impl fmt::Display) -> Self {
        Failure { code: Self::INVALID_INPUT, message: message.to_string() }
    }

    pub fn invariant(message: impl fmt::Display) -> Self {
        Failure { code: Self::INVARIANT, message: message.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<PuzzleError> for Failure {
    fn from(e: PuzzleError) -> Self {
        match e {
            PuzzleError::InvariantViolation(_) => Failure::invariant(e),
            _ => Failure::invalid(e),
        }
    }
}

impl From<UntangleError> for Failure {
    fn from(e: UntangleError) -> Self {
        match e {
            UntangleError::InvariantViolation(_) => Failure::invariant(e),
            _ => Failure::invalid(e),
        }
    }
}

pub fn read_puzzle(path: &Path) -> Result<Puzzle, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    decode_puzzle(&bytes).map_err(|e| Failure { message: format!("{}: {e}", path.display()), ..e.into() })
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::invalid(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(bytes).map_err(Failure::invalid),
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("plain data serializes");
    out.push(b'\n');
    out
}

/// Runs one parsed command, writing results to stdout or the named files.
pub fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen { family, params, seed, out } => {
            let family = Family::parse(&family, &params).map_err(Failure::invalid)?;
            let puzzle = run_pipeline(family, seed)?;
            emit(out.as_deref(), &encode_puzzle(&puzzle))
        }
        Command::Obfuscate { input, restarts, seed, no_local_search, out } => {
            let puzzle = read_puzzle(&input)?;
            let options = ObfuscateOptions { restarts, seed, local_search: !no_local_search, ..Default::default() };
            let drawing = obfuscate(puzzle.graph(), &options).map_err(Failure::invalid)?;
            let fresh = Puzzle::from_drawing(puzzle.id.clone(), drawing, seed)?;
            emit(out.as_deref(), &encode_puzzle(&fresh))
        }
        Command::Count { input } => {
            let puzzle = read_puzzle(&input)?;
            let count = puzzle.drawing.count_crossings().map_err(Failure::invalid)?.count;
            emit(None, format!("{count}\n").as_bytes())
        }
        Command::Epsilon { input } => {
            let puzzle = read_puzzle(&input)?;
            emit(None, format!("{}\n", puzzle.graph().epsilon()).as_bytes())
        }
        Command::Bounds { input } => {
            let puzzle = read_puzzle(&input)?;
            emit(None, &json_line(&bounds_report(puzzle.graph())))
        }
        Command::Untangle { input, method, out } => {
            let puzzle = read_puzzle(&input)?;
            let method: UntangleMethod = method.parse().map_err(Failure::invalid)?;
            let result = untangle(&puzzle.drawing, method)?;
            eprintln!(
                "method {} moved {} vertices{}",
                result.method,
                result.shifts,
                if result.optimal { " (optimal)" } else { "" }
            );
            let solution = SolutionAttempt::from_drawing(puzzle.id.clone(), &result.final_drawing);
            emit(out.as_deref(), &json_line(&solution))
        }
        Command::Verify { puzzle, solution } => {
            let p = read_puzzle(&puzzle)?;
            let bytes = fs::read(&solution).map_err(|e| Failure::invalid(format!("{}: {e}", solution.display())))?;
            let attempt: SolutionAttempt = serde_json::from_slice(&bytes)
                .map_err(|e| Failure::invalid(format!("{}: {e}", solution.display())))?;
            emit(None, &json_line(&verify_solution(&p, &attempt)?))
        }
        Command::Serve { port, host, dir } => {
            let store = server::load_store(&dir)?;
            let runtime = tokio::runtime::Runtime::new().map_err(Failure::invalid)?;
            runtime.block_on(server::serve(store, &host, port))
        }
    }
}

/// Parses `args` and runs the command, mapping failures to exit codes.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Failure::USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code)
        }
    }
}
