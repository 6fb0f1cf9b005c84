//! Finds a minimal system: disjoint feasible cycles of least total length.
//!
//! cargo run --example minimal_system -- 42

use bct::constructions::gen_random;
use bct::find_minimal_system;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(7);
    let (g, s) = gen_random(6, 5, 750, None, seed)?;
    for k in 1..=3 {
        let out = find_minimal_system(&g, &s, k, 10_000_000)?;
        match (out.key(&s), &out.system) {
            (Some(key), Some(sys)) => println!("k={k}: {key:?} {:?}", sys.labels()),
            _ => println!("k={k}: {:?}", out.status),
        }
    }
    Ok(())
}
