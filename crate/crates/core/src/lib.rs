//! Exact search and verification toolkit for systems of disjoint cycles in
//! balanced bipartite graphs `G[X, Y]` carrying a marked set `S ⊆ X`.
//!
//! A cycle is *feasible* when it contains at least two vertices of `S`. The
//! crate decides whether `k` disjoint feasible cycles exist (optionally
//! covering `S`, covering every vertex, or with prescribed S-counts), finds
//! minimal systems, generates extremal constructions, and runs seeded or
//! exhaustive sweeps that check degree-sum results against the solver.

pub mod cli;
pub mod constructions;
pub mod cycle;
pub mod format;
pub mod graph;
pub mod lemmas;
pub mod oracle;
pub mod rng;
pub mod solver;
pub mod sweep;

pub use cycle::{is_feasible, is_good_path, system_key, AltCycle, AltPath, CycleSystem, SystemKey};
pub use graph::{
    delta, edge_count_between, max_s_matching, sigma11, BipartiteGraph, Matching, SVertexSet, Side,
    SigmaValue, Vertex, VertexSet,
};
pub use solver::{
    find_minimal_system, solve, solve_theorem3_moreover, solve_with_workers, Mode, SolveOutcome,
    SolveRequest, SolveStatus,
};
