//! Run the full verification ledger for a job file and print each check.
//!
//! Run with `cargo run --release --example verify_job [path/to/job.json]`.
//! Defaults to the Bergman job with the weight (z - 2)(z - 1/2).

use std::path::PathBuf;

use wro::cli::{parse_job, verify};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/jobs/bergman_case2.json")
    });
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
    let ledger = verify(&parse_job(&doc)?)?;
    for c in &ledger.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        println!("{mark} {:<34} measured {}  expected {}", c.name, c.measured, c.expected);
        if !c.detail.is_empty() {
            println!("     {}", c.detail);
        }
    }
    println!("all passed: {}", ledger.passed);
    Ok(())
}
