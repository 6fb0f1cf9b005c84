//! Builds each extremal family, checks its sigma against the closed form and
//! confirms the solver finds no system of the forbidden size.
//!
//! cargo run --example extremal_constructions

use bct::constructions::{
    example1_sigma, example2_k, example2_min_n, example2_sigma, example3_sigma, example4_sigma, gen_example1,
    gen_example2, gen_example3, gen_example4,
};
use bct::{sigma11, solve, BipartiteGraph, Mode, SVertexSet, SigmaValue, SolveRequest};

fn report(name: &str, (g, s): &(BipartiteGraph, SVertexSet), closed: usize, req: SolveRequest) -> Result<(), Box<dyn std::error::Error>> {
    let computed = sigma11(g, s);
    assert_eq!(computed, SigmaValue::Finite(closed));
    let out = solve(g, s, &req)?;
    println!("{name}: n={} |S|={} sigma={computed} {} k={} -> {:?}", g.n(), s.len(), req.mode.name(), req.k, out.status);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    report("example 1, k=2", &gen_example1(2)?, example1_sigma(2), SolveRequest::new(Mode::Cyclable, 2))?;
    let n = example2_min_n(3);
    report("example 2, p=3", &gen_example2(3, n)?, example2_sigma(3, n), SolveRequest::new(Mode::Feasible, example2_k(3)))?;
    report("example 3, n=5", &gen_example3(5, 3)?, example3_sigma(5), SolveRequest::new(Mode::Cyclable, 1))?;
    report("example 4, n=6 k=2", &gen_example4(6, 2, 4)?, example4_sigma(6, 2, 4), SolveRequest::new(Mode::Feasible, 2))?;
    Ok(())
}
