mod cli;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use cli::Cli;

/// How a command ended when it did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or malformed input, or bad parameters. Exit code 2.
    Input(anyhow::Error),
    /// A checked statement did not hold. Exit code 1.
    Violation(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
