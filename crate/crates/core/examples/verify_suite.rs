//! Runs the built-in invariant suite, as `bogoamp verify` does.
//!
//! `cargo run --release --example verify_suite`

use bogoamp::verify::{run_suite, VerifyOptions};

fn main() {
    let results = run_suite(&VerifyOptions::default());
    for r in &results {
        println!("{} {} {}: {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
    if results.iter().any(|r| !r.passed) {
        std::process::exit(1);
    }
}
