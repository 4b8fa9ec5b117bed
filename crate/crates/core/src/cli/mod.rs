//! The `ypr` command line.
//!
//! Every command renders into an [`Output`] instead of printing, so the
//! binary is a thin wrapper and tests can check exact bytes.

mod args;
mod commands;
mod config;

use std::ffi::OsString;

use clap::Parser;

pub use args::{parse_model, parse_window, parse_words, Cli, Command};
pub use commands::{exact_values, Method};
pub use config::RunConfig;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, ..Default::default() }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Output { stdout: String::new(), stderr: format!("error: {msg}\n"), code: 2 }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => commands::dispatch(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Output { stdout: String::new(), stderr: text, code: 2 }
            } else {
                Output::ok(text)
            }
        }
    }
}
