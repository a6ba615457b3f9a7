//! Runs the seeded invariant suites and prints a one-line summary per check.
//!
//! Usage: `cargo run --example verify_suite -- [suite] [seed]`

use chanorder::verify::{run, VerifyConfig};

fn main() -> chanorder::Result<()> {
    let mut args = std::env::args().skip(1);
    let suite = args.next().unwrap_or_else(|| "all".into());
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let report = run(&suite, &VerifyConfig::new(seed))?;
    for s in &report.suites {
        for c in &s.checks {
            println!(
                "{} {}/{}: {} cases, {} failures",
                if c.passed { "ok  " } else { "FAIL" },
                s.suite,
                c.name,
                c.cases,
                c.failures
            );
        }
    }
    std::process::exit(if report.passed { 0 } else { 1 });
}
