//! Command-line workbench for multiple-conclusion rules over finite
//! Heyting algebras.

mod commands;
mod config;
mod corpus;
mod errors;
mod formats;
mod output;
mod suites;

use std::process::ExitCode;

use clap::Parser;

use crate::commands::{Command, Outcome};
use crate::config::{Config, GlobalOpts};

#[derive(Debug, Parser)]
#[command(
    name = "mrules",
    version,
    about = "Workbench for admissible and multiple-conclusion rules of intermediate logics",
    after_help = "Exit codes: 0 the question was answered affirmatively, 1 negatively, \
                  2 usage or input error, 3 a budget or cap ran out first."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match Config::resolve(&cli.global).and_then(|cfg| commands::run(cli.command, cfg)) {
        Ok(Outcome::Affirmative) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_line_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
