//! `gk`: command-line front end for Galerkin-Koornwinder DDE reduction.
//!
//! Exit codes: 0 success, 1 i/o or fixture failure, 2 invalid configuration,
//! 3 integration blow-up.

mod args;
mod commands;
mod error;
mod output;

use clap::Parser;

use crate::args::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Coeffs(a) => commands::cmd_coeffs(a),
        Command::Assemble(a) => commands::cmd_assemble(a),
        Command::Simulate(a) => commands::cmd_simulate(a),
        Command::Field(a) => commands::cmd_field(a),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
