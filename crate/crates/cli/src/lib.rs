//! The `tmf3` command-line tool: an expression language over the rings of
//! level-one and level-three modular forms, and one subcommand per
//! computation in `tmf3_core`.

pub mod commands;
pub mod eval;
pub mod expr;

use std::ffi::OsString;

use clap::Parser;
use serde::Serialize;
use thiserror::Error;
use tmf3_core::report::{all_pass, Check};

pub use commands::Cli;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] expr::ParseError),
    #[error(transparent)]
    Eval(#[from] eval::EvalError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Eval(_) | CliError::Domain(_) => 1,
        }
    }
}

/// What a subcommand produced, before rendering.
#[derive(Debug, Clone, Serialize)]
pub struct Output {
    pub command: &'static str,
    pub inputs: serde_json::Map<String, serde_json::Value>,
    pub result: serde_json::Value,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub text: String,
    /// Print every check in text mode, not only the failing ones.
    #[serde(skip)]
    pub show_checks: bool,
}

impl Output {
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("serializable");
            s.push('\n');
            return s;
        }
        let mut s = self.text.clone();
        if !s.is_empty() && !s.ends_with('\n') {
            s.push('\n');
        }
        for c in self.checks.iter().filter(|c| self.show_checks || !c.pass) {
            let tag = if c.pass { "ok  " } else { "FAIL" };
            if c.pass || c.detail.is_empty() {
                s.push_str(&format!("{tag} {}\n", c.name));
            } else {
                s.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
            }
        }
        s
    }

    pub fn exit_code(&self) -> i32 {
        if all_pass(&self.checks) {
            0
        } else {
            3
        }
    }
}

/// Result of one invocation: what goes to stdout and stderr, and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let json = cli.json;
    match commands::dispatch(cli) {
        Ok((out, stderr)) => Outcome { stdout: out.render(json), stderr, code: out.exit_code() },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}
