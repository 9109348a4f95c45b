//! Named pass/fail results shared by the verification routines and the CLI.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    /// A check comparing two displayed values for equality.
    pub fn eq<T: PartialEq + std::fmt::Display>(name: impl Into<String>, got: &T, want: &T) -> Self {
        let pass = got == want;
        let detail = if pass { format!("{got}") } else { format!("got {got}, expected {want}") };
        Check::new(name, pass, detail)
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
