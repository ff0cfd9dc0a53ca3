//! Cross-checks the closed-form rate regions against the brute-force
//! CIC+SIC decoding oracle on face-anchored rate samples, and confirms the
//! excluded decoding-order pair is never feasible.
//!
//! Run with: `cargo run --example verify_oracle [samples] [seed]`

use canoma::sim::run_verify;

fn main() {
    let mut args = std::env::args().skip(1);
    let samples: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5000);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let report = run_verify(samples, seed);
    println!("{report}");
    std::process::exit(if report.passed() { 0 } else { 3 });
}
