//! Draws one planted instance for every lemma id and evaluates it.
//!
//! cargo run --example lemma_instances -- 3

use bct::lemmas::{evaluate, sample_instance, LemmaId};
use bct::rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(1);
    let mut r = rng::rng(seed);
    for id in LemmaId::ALL {
        let Some(inst) = sample_instance(id, &mut r) else {
            println!("{id}: no instance drawn");
            continue;
        };
        let out = evaluate(&inst)?;
        let detail = match (&out.witness, &out.reason) {
            (Some(w), _) => w.to_json().to_string(),
            (None, Some(r)) => r.clone(),
            (None, None) => String::new(),
        };
        println!("{id:<7} n={} {} {detail}", inst.graph.n(), out.status.name());
    }
    Ok(())
}
