//! Compares the pruned search with the brute-force oracle on seeded random graphs.
//!
//! cargo run --example oracle_agreement -- 500

use bct::constructions::gen_random;
use bct::oracle::naive_oracle;
use bct::{solve, Mode, SolveRequest};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let draws: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(200);
    let mut compared = 0;
    for seed in 0..draws {
        let n = 3 + (seed % 4) as usize;
        let (g, s) = gen_random(n, n / 2 + 1, 600, None, seed)?;
        for mode in [Mode::Feasible, Mode::Cyclable, Mode::TwoFactor] {
            for k in 1..=2 {
                let req = SolveRequest::new(mode, k);
                let fast = solve(&g, &s, &req)?.status;
                let slow = naive_oracle(&g, &s, &req)?.status;
                assert_eq!(fast, slow, "seed {seed} {} k={k}", mode.name());
                compared += 1;
            }
        }
    }
    println!("{compared} answers agree over {draws} graphs");
    Ok(())
}
