//! Looks for counterexamples among seeded random graphs above the degree floor.
//!
//! cargo run --release --example conjecture_search -- 2000

use bct::sweep::{conjecture_search, Conjecture, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(1000);
    let cfg = SweepConfig { seed: 5, ..SweepConfig::default() };
    for (c, k) in [(Conjecture::One, 1), (Conjecture::One, 2), (Conjecture::Two, 1)] {
        let report = conjecture_search(c, 6, k, samples, &cfg)?;
        println!("{} k={k}: {:?} counterexample={:?}", report.target, report.statuses, report.counterexample);
    }
    Ok(())
}
