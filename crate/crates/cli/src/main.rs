mod args;
mod commands;
mod config;
mod render;
mod suite;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification,
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl From<antisym_core::Error> for Failure {
    fn from(e: antisym_core::Error) -> Self {
        match e {
            antisym_core::Error::InvalidInput(msg) => Failure::Usage(msg),
            antisym_core::Error::Internal(msg) => Failure::Internal(msg),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Internal(msg) => eprintln!("internal error: {msg}"),
                Failure::Verification => eprintln!("verification failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
