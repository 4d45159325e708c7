// SPDX-License-Identifier: Apache-2.0

//! Command-line driver for the `hardcore` library.
//!
//! Exit codes: 0 success, 2 bad input or failed check, 3 agreement target
//! missed, 4 scale guard.

pub mod args;
mod cmd;
mod files;

use std::ffi::OsString;

use clap::Parser;
use hardcore::Result;

pub use args::Cli;
use args::Command;

/// Runs one parsed command and returns the text it prints.
pub fn run(cli: &Cli) -> Result<String> {
    let out = &cli.out;
    match &cli.command {
        Command::GenHard(a) => cmd::hard::gen_hard(a, out, cli.check),
        Command::Enumerate(a) => cmd::hard::enumerate(a, out, cli.check),
        Command::Approximate(a) => cmd::approx::approximate(a, out, cli.check),
        Command::DemoTightness(a) => cmd::approx::demo(a, out, cli.check),
        Command::SizeSweep(a) => cmd::approx::size_sweep(a, out, cli.check),
        Command::VerifyKwise(a) => cmd::kwise::verify(a, out, cli.check),
        Command::Anticoncentration(a) => cmd::kwise::anticoncentration(a, out, cli.check),
    }
}

/// Parses `args`, runs the command, prints its output, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: thread pool already initialized: {e}");
        }
    }
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.class().exit_code()
        }
    }
}
