//! Degree-sum and matching quantities on a small graph.
//!
//! cargo run --example matching_and_sigma

use bct::{delta, max_s_matching, sigma11, BipartiteGraph, SVertexSet, VertexSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = BipartiteGraph::new(4, [(0, 0), (0, 1), (1, 0), (2, 2), (2, 3), (3, 3)])?;
    let s = SVertexSet::new(4, [0, 1, 2])?;
    println!("sigma_1,1 = {}", sigma11(&g, &s));
    println!("delta over S = {:?}", delta(&g, &s));
    let m = max_s_matching(&g, &s, &VertexSet::EMPTY);
    println!("S-matching of size {}: {:?}", m.len(), m.edges);
    Ok(())
}
