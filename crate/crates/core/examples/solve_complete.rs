//! Asks the solver for cycle systems in K4,4 with every X-vertex in S.
//!
//! cargo run --example solve_complete

use bct::{solve, BipartiteGraph, Mode, SVertexSet, SolveRequest};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = BipartiteGraph::complete(4)?;
    let s = SVertexSet::whole_x(4);
    let requests = [
        SolveRequest::new(Mode::Feasible, 2),
        SolveRequest::new(Mode::Feasible, 3),
        SolveRequest::new(Mode::Cyclable, 1),
        SolveRequest::new(Mode::TwoFactor, 2),
        SolveRequest::partition(vec![4]),
        SolveRequest::partition(vec![2, 2]),
    ];
    for req in requests {
        let out = solve(&g, &s, &req)?;
        print!("{:<10} k={} parts={:?}: {:?} after {} nodes", req.mode.name(), req.k, req.parts, out.status, out.nodes_expanded);
        match &out.witness {
            Some(sys) => println!(" {:?}", sys.labels()),
            None => println!(),
        }
    }
    Ok(())
}
