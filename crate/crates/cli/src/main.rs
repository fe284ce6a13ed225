mod args;
mod commands;
mod sweep;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;

/// Why a run did not finish cleanly; each maps to one exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Resource(String),
    /// A checked claim failed on some instance. The report is still written.
    Violation(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Resource(_) => 2,
            Failure::Violation(_) => 3,
        }
    }
}

impl From<baldom::Error> for Failure {
    fn from(e: baldom::Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) => format!("error: {m}"),
                Failure::Resource(m) => format!("resource limit: {m}"),
                Failure::Violation(m) => format!("check failed: {m}"),
            };
            let _ = writeln!(std::io::stderr(), "{msg}");
            ExitCode::from(f.code())
        }
    }
}
