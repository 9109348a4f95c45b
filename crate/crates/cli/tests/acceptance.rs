//! One line per acceptance criterion. Criteria 1-9 run in process; 10 runs
//! the built binary.

use std::process::{Command, ExitCode};
use std::time::Instant;

use tmf3_core::verify;

fn line(id: u8, title: &str, pass: bool, seconds: f64, note: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} {tag}  {title} ({seconds:.1}s){note}");
}

fn main() -> ExitCode {
    let mut ok = true;
    for &(id, ..) in verify::CRITERIA.iter() {
        let r = verify::run(id).expect("known criterion");
        let mut note = String::new();
        for c in r.failures() {
            note.push_str(&format!("\n    failed: {}: {}", c.name, c.detail));
        }
        if !r.within_budget() {
            note.push_str(&format!("\n    over the {}s budget", r.budget_seconds.unwrap_or_default()));
        }
        line(id, r.title, r.pass(), r.seconds, &note);
        ok &= r.pass();
    }

    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_tmf3")).args(["verify", "--all"]).output();
    let secs = start.elapsed().as_secs_f64();
    let (pass, note) = match out {
        Ok(o) => {
            let stdout = String::from_utf8_lossy(&o.stdout);
            let summary = stdout.lines().last().unwrap_or_default().to_string();
            let pass = o.status.code() == Some(0) && summary.ends_with(" 0 failures") && secs < 600.0;
            (pass, format!(": {summary}"))
        }
        Err(e) => (false, format!(": could not run the binary: {e}")),
    };
    line(10, "tmf3 verify --all exits 0 within ten minutes", pass, secs, &note);
    ok &= pass;

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
