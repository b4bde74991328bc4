//! Command-line front end for the `mmwave-core` channel toolkit.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad arguments, 3 malformed input
//! file, 4 invalid values or configuration, 5 empty input.

pub mod args;
pub mod commands;
pub mod error;
pub mod io;

use std::io::Write;

use args::{Cli, Command};
pub use error::{exit, CliError, Result};

/// Run a parsed command line against the given output streams.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let g = &cli.globals;
    match &cli.command {
        Command::Fit(a) => commands::cmd_fit(a, g, out, err),
        Command::PdpStats(a) => commands::cmd_pdp_stats(a, g, out, err),
        Command::SynthesizeOmni(a) => commands::cmd_synthesize_omni(a, g, out, err),
        Command::Simulate(a) => commands::cmd_simulate(a, g, out, err),
        Command::Report(a) => commands::cmd_report(a, g, out, err),
        Command::Catalog(a) => commands::cmd_catalog(a, g, out, err),
    }
}
