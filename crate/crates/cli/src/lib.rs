//! Command-line front end for `deltashell`: argument parsing, sweep
//! orchestration and CSV output.
//!
//! Exit status is 0 on success, 2 for parameter or domain errors and 3 when
//! an accuracy target or oracle check fails.

pub mod args;
pub mod commands;
pub mod table;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use args::{Command, RunSpec};
use table::CsvTable;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] deltashell::Error),
    #[error("{0}")]
    Param(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(deltashell::Error::Accuracy { .. }) | CliError::VerifyFailed => 3,
            _ => 2,
        }
    }
}

fn emit(table: &CsvTable, out: Option<&Path>) -> Result<(), CliError> {
    let io_err = |path: &str| {
        let path = path.to_string();
        move |source| CliError::Io { path, source }
    };
    match out {
        Some(path) => {
            let name = path.display().to_string();
            let file = File::create(path).map_err(io_err(&name))?;
            let mut w = BufWriter::new(file);
            table.write_to(&mut w).map_err(io_err(&name))?;
            w.flush().map_err(io_err(&name))
        }
        None => table.write_to(io::stdout().lock()).map_err(io_err("stdout")),
    }
}

/// Executes one parsed command, writing CSV to `--out` or stdout.
pub fn run(spec: &RunSpec) -> Result<(), CliError> {
    match &spec.command {
        Command::Greens(a) => emit(&commands::greens(a)?, a.out.as_deref()),
        Command::Scatter(a) => emit(&commands::scatter(a)?, a.out.as_deref()),
        Command::Bound(a) => emit(&commands::bound(a)?, a.out.as_deref()),
        Command::Zeros(a) => emit(&commands::zeros(a)?, a.out.as_deref()),
        Command::Nrlimit(a) => emit(&commands::nrlimit(a)?, a.out.as_deref()),
        Command::Verify(a) => {
            let reports = verify::run_groups(a.group, a.perturb_v0, a.seed)?;
            for r in &reports {
                println!("{r}");
            }
            if reports.iter().all(|r| r.passed()) {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
    }
}
