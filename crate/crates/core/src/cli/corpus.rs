//! Batch run over a directory of instance files.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{run, CliError, Command, InstanceFile, RunOptions};

/// Checks reported per corpus row, in column order.
pub const CORPUS_CHECKS: [Command; 4] = [
    Command::CheckDuallyFlat,
    Command::CheckTheorem1,
    Command::CheckProjectivelyFlat,
    Command::CheckProp31,
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cell {
    Status { status: crate::report::Status },
    Error { message: String },
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Status { status } => write!(f, "{status}"),
            Cell::Error { .. } => f.write_str("error"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusRow {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub cells: Vec<Cell>,
}

impl CorpusRow {
    pub fn has_error(&self) -> bool {
        self.error.is_some() || self.cells.iter().any(|c| matches!(c, Cell::Error { .. }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub columns: Vec<String>,
    pub rows: Vec<CorpusRow>,
    pub exit_code: i32,
}

impl fmt::Display for CorpusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .map(|r| r.file.len())
            .chain(std::iter::once(4))
            .max()
            .unwrap_or(4);
        let mut header = format!("{:<width$}", "file");
        for c in &self.columns {
            header.push_str(&format!("  {c:<24}"));
        }
        writeln!(f, "{}", header.trim_end())?;
        for row in &self.rows {
            if let Some(e) = &row.error {
                writeln!(f, "{:<width$}  error: {e}", row.file)?;
                continue;
            }
            let mut line = format!("{:<width$}", row.file);
            for c in &row.cells {
                line.push_str(&format!("  {:<24}", c.to_string()));
            }
            writeln!(f, "{}", line.trim_end())?;
            for (col, c) in self.columns.iter().zip(&row.cells) {
                if let Cell::Error { message } = c {
                    writeln!(f, "{:<width$}    {col}: {message}", "")?;
                }
            }
        }
        let errors = self.rows.iter().filter(|r| r.has_error()).count();
        writeln!(f, "{} instances, {errors} with errors", self.rows.len())
    }
}

fn run_file(path: &Path, opts: RunOptions) -> CorpusRow {
    let file = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let parsed = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
        .and_then(|text| InstanceFile::parse(&text))
        .and_then(|inst| inst.build().map(|_| inst));
    let inst = match parsed {
        Ok(i) => i,
        Err(e) => {
            return CorpusRow {
                file,
                error: Some(e.to_string()),
                cells: Vec::new(),
            }
        }
    };
    let cells = CORPUS_CHECKS
        .iter()
        .map(|&cmd| match run(cmd, &inst, opts) {
            Ok(doc) => Cell::Status { status: doc.status },
            Err(e) => Cell::Error {
                message: e.to_string(),
            },
        })
        .collect();
    CorpusRow {
        file,
        error: None,
        cells,
    }
}

/// Instance files (`*.inst`) in `dir`, sorted by file name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.extension().is_some_and(|e| e == "inst") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Runs every check on every instance file. Rows come out in file-name
/// order regardless of scheduling.
pub fn run_corpus(dir: &Path, opts: RunOptions) -> Result<CorpusSummary, CliError> {
    let files = corpus_files(dir)?;
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .clamp(1, 8);
    let chunk = files.len().div_ceil(workers).max(1);
    let rows: Vec<CorpusRow> = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|p| run_file(p, opts)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("corpus worker panicked"))
            .collect()
    });
    let exit_code = if rows.iter().any(CorpusRow::has_error) {
        2
    } else {
        0
    };
    Ok(CorpusSummary {
        columns: CORPUS_CHECKS.iter().map(|c| c.name().to_string()).collect(),
        rows,
        exit_code,
    })
}
