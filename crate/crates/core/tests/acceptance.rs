//! One line per acceptance criterion. Set `ACCEPTANCE_ONLY=<suite>` to run a single suite.

use std::path::Path;
use std::process::ExitCode;

use wold::verify::{run_suite, suite_passed, Suite, VerifyOptions};

fn main() -> ExitCode {
    let suite = match std::env::var("ACCEPTANCE_ONLY") {
        Ok(s) => s.parse().expect("ACCEPTANCE_ONLY names a suite"),
        Err(_) => Suite::All,
    };
    let opts = VerifyOptions::new(Path::new(env!("CARGO_TARGET_TMPDIR")));
    println!("acceptance: suite {suite}, {} worker(s)", opts.workers);
    let checks = run_suite(suite, &opts, |c| println!("{}", c.report()));
    println!("summary:");
    for c in &checks {
        println!("  {}", c.headline());
    }
    if suite_passed(&checks) {
        println!("acceptance: all gated criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: gated failures");
        ExitCode::FAILURE
    }
}
