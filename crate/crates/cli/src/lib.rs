//! Command-line front end: argument and config handling, the five
//! subcommands, and CSV/JSON/SVG emission.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod svg;

use args::{Cli, Command};
use config::FileConfig;
use error::Result;

pub fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Similarity(a) => commands::similarity::run(a, config),
        Command::Project(a) => commands::project::run(a, config),
        Command::Logprob(a) => commands::logprob::run(a, config),
        Command::Study(a) => commands::study::run(a, config),
        Command::Validate(a) => commands::validate::run(a, config),
    }
}
