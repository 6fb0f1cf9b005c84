//! Brute-force reference: list every cycle, then every set of `k` pairwise
//! disjoint feasible ones, and test the requested property directly. Shares
//! nothing with the backtracking solver beyond the graph type.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::cycle::{AltCycle, CycleSystem, SystemKey};
use crate::graph::{BipartiteGraph, SVertexSet, Vertex, VertexSet};
use crate::solver::{Mode, SolveError, SolveOutcome, SolveRequest, SolveStatus};

/// Largest half-order the oracle accepts.
pub const ORACLE_MAX_N: usize = 6;

/// Every cycle of the graph, each once, in canonical form, sorted by length
/// and then vertex sequence.
#[derive(Debug, Clone)]
pub struct CycleCatalog {
    cycles: Vec<AltCycle>,
}

impl CycleCatalog {
    pub fn new(g: &BipartiteGraph) -> Result<Self, SolveError> {
        if g.n() > ORACLE_MAX_N {
            return Err(SolveError::TooLarge { n: g.n(), max: ORACLE_MAX_N });
        }
        Ok(Self::build(g))
    }

    /// No size guard; callers keep the graph small.
    pub(crate) fn build(g: &BipartiteGraph) -> Self {
        let n = g.n();
        let mut out = Vec::new();
        let mut path = Vec::new();
        // Vertex ids 0..n are X, n..2n are Y. Each cycle is rooted at its
        // smallest id (always an X vertex) and recorded in the orientation
        // whose second vertex is smaller than its last.
        let adj = |u: usize, v: usize| -> bool {
            match (u < n, v < n) {
                (true, false) => g.has_edge(u, v - n),
                (false, true) => g.has_edge(v, u - n),
                _ => false,
            }
        };
        fn walk(
            n: usize,
            root: usize,
            path: &mut Vec<usize>,
            on: &mut [bool],
            adj: &dyn Fn(usize, usize) -> bool,
            out: &mut Vec<Vec<usize>>,
        ) {
            let last = *path.last().unwrap();
            if path.len() >= 4 && path.len() % 2 == 0 && adj(last, root) && path[1] < last {
                out.push(path.clone());
            }
            for v in (root + 1)..(2 * n) {
                if !on[v] && adj(last, v) {
                    on[v] = true;
                    path.push(v);
                    walk(n, root, path, on, adj, out);
                    path.pop();
                    on[v] = false;
                }
            }
        }
        let mut raw = Vec::new();
        for root in 0..n {
            let mut on = vec![false; 2 * n];
            on[root] = true;
            path.clear();
            path.push(root);
            walk(n, root, &mut path, &mut on, &adj, &mut raw);
        }
        for ids in raw {
            let vs: Vec<Vertex> =
                ids.iter().map(|&i| if i < n { Vertex::x(i) } else { Vertex::y(i - n) }).collect();
            out.push(AltCycle::from_trusted(vs));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.vertices().cmp(b.vertices())));
        CycleCatalog { cycles: out }
    }

    pub fn cycles(&self) -> &[AltCycle] {
        &self.cycles
    }

    pub fn feasible<'a>(&'a self, s: &'a SVertexSet) -> impl Iterator<Item = &'a AltCycle> + 'a {
        self.cycles.iter().filter(move |c| c.s_count(s) >= 2)
    }

    /// Feasible cycles grouped by vertex set; one representative per set.
    pub fn feasible_supports(&self, s: &SVertexSet) -> Vec<Support> {
        let mut out: Vec<Support> = Vec::new();
        let mut seen = HashSet::new();
        for (i, c) in self.cycles.iter().enumerate() {
            let s_count = c.s_count(s);
            if s_count < 2 {
                continue;
            }
            let set = c.vertex_set();
            if seen.insert(set) {
                out.push(Support { set, len: c.len(), s_count, cycle: i });
            }
        }
        out
    }

    /// Calls `f` with every set of `k` pairwise disjoint supports, given as
    /// indices into `supports` in increasing order.
    pub fn for_each_system<F>(supports: &[Support], k: usize, mut f: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        fn rec<F: FnMut(&[usize]) -> ControlFlow<()>>(
            supports: &[Support],
            k: usize,
            start: usize,
            used: VertexSet,
            chosen: &mut Vec<usize>,
            f: &mut F,
        ) -> ControlFlow<()> {
            if chosen.len() == k {
                return f(chosen);
            }
            for i in start..supports.len() {
                if supports[i].set.intersects(&used) {
                    continue;
                }
                chosen.push(i);
                rec(supports, k, i + 1, used.union(supports[i].set), chosen, f)?;
                chosen.pop();
            }
            ControlFlow::Continue(())
        }
        let _ = rec(supports, k, 0, VertexSet::EMPTY, &mut Vec::new(), &mut f);
    }

    pub fn system(&self, supports: &[Support], chosen: &[usize]) -> CycleSystem {
        CycleSystem::from_trusted(chosen.iter().map(|&i| self.cycles[supports[i].cycle].clone()).collect())
    }

    /// Smallest `(Σ|C_i|, Σ|S_{C_i}|)` over all systems of `k` disjoint
    /// feasible cycles.
    pub fn min_key(&self, s: &SVertexSet, k: usize) -> Option<SystemKey> {
        if k == 0 {
            return Some(SystemKey::default());
        }
        let supports = self.feasible_supports(s);
        let mut best: Option<SystemKey> = None;
        Self::for_each_system(&supports, k, |chosen| {
            let key = SystemKey {
                total_length: chosen.iter().map(|&i| supports[i].len).sum(),
                total_s_count: chosen.iter().map(|&i| supports[i].s_count).sum(),
            };
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
            ControlFlow::Continue(())
        });
        best
    }

    /// Whether `k` disjoint feasible cycles exist.
    pub fn has_system(&self, s: &SVertexSet, k: usize) -> bool {
        self.min_key(s, k).is_some()
    }
}

/// Vertex set of at least one feasible cycle.
#[derive(Debug, Clone, Copy)]
pub struct Support {
    pub set: VertexSet,
    pub len: usize,
    pub s_count: usize,
    pub cycle: usize,
}

fn satisfies(g: &BipartiteGraph, s: &SVertexSet, req: &SolveRequest, sup: &[Support], chosen: &[usize]) -> bool {
    let union = chosen.iter().fold(VertexSet::EMPTY, |acc, &i| acc.union(sup[i].set));
    match req.mode {
        Mode::Feasible => true,
        Mode::Cyclable => s.mask() & !union.x == 0,
        Mode::TwoFactor => union == VertexSet::all(g.n()),
        Mode::Partition => {
            let mut got: Vec<usize> = chosen.iter().map(|&i| sup[i].s_count).collect();
            let mut want = req.parts.clone();
            got.sort_unstable();
            want.sort_unstable();
            s.mask() & !union.x == 0 && got == want
        }
    }
}

/// Brute-force answer to `req` for `n <= 6`. The budget is ignored.
pub fn naive_oracle(g: &BipartiteGraph, s: &SVertexSet, req: &SolveRequest) -> Result<SolveOutcome, SolveError> {
    req.validate(s)?;
    let catalog = CycleCatalog::new(g)?;
    Ok(naive_with_catalog(&catalog, g, s, req))
}

pub fn naive_with_catalog(catalog: &CycleCatalog, g: &BipartiteGraph, s: &SVertexSet, req: &SolveRequest) -> SolveOutcome {
    let supports = catalog.feasible_supports(s);
    let mut witness = None;
    let mut checked = 0u64;
    CycleCatalog::for_each_system(&supports, req.k, |chosen| {
        checked += 1;
        if satisfies(g, s, req, &supports, chosen) {
            witness = Some(catalog.system(&supports, chosen));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    SolveOutcome {
        status: if witness.is_some() { SolveStatus::Found } else { SolveStatus::None },
        witness,
        nodes_expanded: checked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_counts_of_complete_graphs() {
        // K_{n,n} has Σ_{m≥2} (n!/(n−m)!)² / (2m) cycles.
        let count = |n: u64| -> u64 {
            (2..=n)
                .map(|m| {
                    let falling: u64 = ((n - m + 1)..=n).product();
                    falling * falling / (2 * m)
                })
                .sum()
        };
        for n in 2..=4 {
            let g = BipartiteGraph::complete(n).unwrap();
            assert_eq!(CycleCatalog::new(&g).unwrap().cycles().len() as u64, count(n as u64));
        }
    }

    #[test]
    fn oracle_basics() {
        let e = BipartiteGraph::empty(3).unwrap();
        let s = SVertexSet::whole_x(3);
        let out = naive_oracle(&e, &s, &SolveRequest::new(Mode::Feasible, 1)).unwrap();
        assert_eq!(out.status, SolveStatus::None);
        let k22 = BipartiteGraph::complete(2).unwrap();
        let out = naive_oracle(&k22, &SVertexSet::whole_x(2), &SolveRequest::new(Mode::Feasible, 1)).unwrap();
        assert_eq!(out.status, SolveStatus::Found);
        let big = BipartiteGraph::complete(7).unwrap();
        assert!(matches!(
            naive_oracle(&big, &SVertexSet::whole_x(7), &SolveRequest::new(Mode::Feasible, 1)),
            Err(SolveError::TooLarge { .. })
        ));
    }

    #[test]
    fn catalog_cycles_are_canonical() {
        let g = BipartiteGraph::complete(3).unwrap();
        for c in CycleCatalog::new(&g).unwrap().cycles() {
            assert!(c.is_canonical(), "{c}");
            c.validate(&g).unwrap();
        }
    }
}
