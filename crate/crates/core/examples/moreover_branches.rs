//! Searches both branches of the strengthened conclusion: a spanning system,
//! or cycles carrying exactly two S-vertices each.
//!
//! cargo run --example moreover_branches

use bct::constructions::gen_random;
use bct::solve_theorem3_moreover;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for seed in 0..5 {
        let (g, s) = gen_random(6, 4, 800, Some(7), seed)?;
        let out = solve_theorem3_moreover(&g, &s, 2, 10_000_000)?;
        println!(
            "seed {seed}: {:?}, covers all: {}, exactly two: {}",
            out.status,
            out.covers_all.is_some(),
            out.exactly_two.is_some()
        );
    }
    Ok(())
}
