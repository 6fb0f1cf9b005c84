//! Runs a small exhaustive and a small sampled sweep and prints both reports.
//!
//! cargo run --release --example theorem_sweep

use bct::sweep::{theorem_exhaustive, theorem_sampled, SweepConfig, Theorem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SweepConfig { seed: 11, ..SweepConfig::default() };
    let exhaustive = theorem_exhaustive(Theorem::Four, None, 4, 1, &cfg)?;
    print!("{}", exhaustive.to_json());
    let sampled = theorem_sampled(Theorem::Three, Some(5), 6, 1, 200, &cfg)?;
    print!("{}", sampled.to_json());
    assert!(exhaustive.passed() && sampled.passed());
    Ok(())
}
