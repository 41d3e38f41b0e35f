//! Command-line front end: instance files, report documents and the
//! corpus runner.

mod corpus;
mod document;
mod instance_file;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use corpus::{corpus_files, run_corpus, Cell, CorpusRow, CorpusSummary, CORPUS_CHECKS};
pub use document::{exit_code, run, ReportDocument, RunOptions, ORACLE_TOLERANCE, TOOL_NAME};
pub use instance_file::{InstanceFile, DEFAULT_NUMERIC_POINTS, DEFAULT_SEED};

use crate::algebra::ParseError;
use crate::finsler::FinslerError;
use crate::kropina::KropinaError;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing required key '{0}'")]
    MissingKey(&'static str),
    #[error("--input is required for this command")]
    MissingInput,
    #[error("line {line}: duplicate key '{key}'")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value for '{key}': {message}")]
    InvalidValue {
        line: usize,
        key: String,
        message: String,
    },
    #[error("line {line}, column {column}: in {key}: {}", source.kind)]
    Expression {
        key: String,
        line: usize,
        column: usize,
        source: ParseError,
    },
    #[error("invalid {key}: {source}")]
    Invalid { key: String, source: KropinaError },
    #[error(transparent)]
    Check(#[from] KropinaError),
}

impl From<FinslerError> for CliError {
    fn from(e: FinslerError) -> Self {
        CliError::Check(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Direct dually-flat residual check
    CheckDuallyFlat,
    /// Characterization of dual flatness, with the direct check alongside
    CheckTheorem1,
    /// Direct projective-flatness residual check
    CheckProjectivelyFlat,
    /// Characterization of projective flatness, with Berwald/Minkowski facts
    CheckProp31,
    /// Euler, inverse-matrix, fundamental-tensor and contraction identities
    VerifyIdentities,
    /// Finite-difference oracle at seeded sample points
    Crosscheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckDuallyFlat => "check-dually-flat",
            Command::CheckTheorem1 => "check-theorem1",
            Command::CheckProjectivelyFlat => "check-projectively-flat",
            Command::CheckProp31 => "check-prop31",
            Command::VerifyIdentities => "verify-identities",
            Command::Crosscheck => "crosscheck",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, clap::Args)]
pub struct CommonArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for sample points (overrides the instance file)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of sample points (overrides the instance file)
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// Include wall-clock timing (makes output nondeterministic)
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum CliCommand {
    #[command(flatten)]
    Check(Command),
    /// Run every check on each *.inst file in a directory
    Corpus { dir: PathBuf },
}

#[derive(Debug, Parser)]
#[command(
    name = "kropina",
    version,
    about = "Exact checks for Kropina changes of m-th root metrics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    /// Instance file
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn emit(common: &CommonArgs, text: String, json: String) -> Result<(), CliError> {
    let body = match common.format {
        Format::Text => text,
        Format::Json => json,
    };
    match &common.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let opts = RunOptions {
        seed: cli.common.seed,
        points: cli.common.points,
    };
    let started = Instant::now();
    match &cli.command {
        CliCommand::Corpus { dir } => {
            let summary = run_corpus(dir, opts)?;
            emit(&cli.common, summary.to_string(), to_json(&summary))?;
            Ok(summary.exit_code)
        }
        CliCommand::Check(cmd) => {
            let path = cli.input.as_ref().ok_or(CliError::MissingInput)?;
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            let file = InstanceFile::parse(&text)?;
            let mut doc = run(*cmd, &file, opts)?;
            if cli.common.timing {
                doc.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            }
            emit(&cli.common, doc.to_string(), to_json(&doc))?;
            Ok(doc.exit_code)
        }
    }
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
