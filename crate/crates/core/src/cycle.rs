//! Oriented alternating paths and cycles, feasibility, disjoint cycle systems
//! and their minimality keys.

use std::fmt;

use thiserror::Error;

use crate::graph::{max_s_matching, BipartiteGraph, SVertexSet, Side, Vertex, VertexSet};

/// Minimum number of S-vertices on a feasible cycle of a bipartite graph.
pub const FEASIBLE_MIN_BIPARTITE: usize = 2;
/// The non-bipartite threshold. Every routine in this crate is bipartite, so
/// this is carried for reference only.
pub const FEASIBLE_MIN_GENERAL: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("a cycle needs an even number of at least 4 vertices, got {0}")]
    BadLength(usize),
    #[error("vertex {0} is out of range")]
    OutOfRange(Vertex),
    #[error("vertex {0} appears twice")]
    Repeated(Vertex),
    #[error("{0} and {1} are on the same side")]
    NotAlternating(Vertex, Vertex),
    #[error("{0}{1} is not an edge")]
    MissingEdge(Vertex, Vertex),
    #[error("vertex {0} is not on this path or cycle")]
    NotOnWalk(Vertex),
    #[error("stepping {steps} from {from} leaves the path")]
    OffPath { from: Vertex, steps: isize },
    #[error("an empty path has no vertices")]
    EmptyPath,
    #[error("cycles overlap at {0}")]
    Overlap(Vertex),
    #[error("cycle {0} has fewer than two S-vertices")]
    Infeasible(usize),
}

fn validate_walk(g: &BipartiteGraph, vs: &[Vertex], closed: bool) -> Result<(), CycleError> {
    let mut seen = VertexSet::EMPTY;
    for &v in vs {
        if v.index >= g.n() {
            return Err(CycleError::OutOfRange(v));
        }
        if seen.contains(v) {
            return Err(CycleError::Repeated(v));
        }
        seen.insert(v);
    }
    let pairs = vs.windows(2).map(|w| (w[0], w[1]));
    let wrap = (closed && vs.len() > 1).then(|| (vs[vs.len() - 1], vs[0]));
    for (a, b) in pairs.chain(wrap) {
        if a.side == b.side {
            return Err(CycleError::NotAlternating(a, b));
        }
        if !g.adjacent(a, b) {
            return Err(CycleError::MissingEdge(a, b));
        }
    }
    Ok(())
}

/// Position of `v` in `vs`.
fn position(vs: &[Vertex], v: Vertex) -> Result<usize, CycleError> {
    vs.iter().position(|&u| u == v).ok_or(CycleError::NotOnWalk(v))
}

/// A cycle `v_1 v_2 ⋯ v_m v_1` with a fixed orientation: `v_{i+1}` is the
/// successor of `v_i` and `v_1` the successor of `v_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AltCycle {
    vertices: Vec<Vertex>,
}

impl AltCycle {
    pub fn new(g: &BipartiteGraph, vertices: Vec<Vertex>) -> Result<Self, CycleError> {
        if vertices.len() < 4 || vertices.len() % 2 != 0 {
            return Err(CycleError::BadLength(vertices.len()));
        }
        validate_walk(g, &vertices, true)?;
        Ok(AltCycle { vertices })
    }

    /// Caller guarantees the sequence is a cycle of the host graph.
    pub(crate) fn from_trusted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.len() >= 4 && vertices.len() % 2 == 0);
        AltCycle { vertices }
    }

    /// Re-checks this cycle against `g`.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<(), CycleError> {
        validate_walk(g, &self.vertices, true)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// `|C|`, the number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_vertices(self.vertices.iter().copied())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// `|S_C|`.
    pub fn s_count(&self, s: &SVertexSet) -> usize {
        self.vertices.iter().filter(|&&v| s.contains_vertex(v)).count()
    }

    /// `S_C` in orientation order starting from the stored first vertex.
    pub fn s_vertices(&self, s: &SVertexSet) -> Vec<Vertex> {
        self.vertices.iter().copied().filter(|&v| s.contains_vertex(v)).collect()
    }

    /// Walks `steps` along the orientation (negative steps walk backwards):
    /// `step(v, 1) = v⁺`, `step(v, -2) = v²⁻`.
    pub fn step(&self, v: Vertex, steps: isize) -> Result<Vertex, CycleError> {
        let i = position(&self.vertices, v)? as isize;
        let m = self.vertices.len() as isize;
        Ok(self.vertices[(i + steps).rem_euclid(m) as usize])
    }

    pub fn successor(&self, v: Vertex) -> Result<Vertex, CycleError> {
        self.step(v, 1)
    }

    pub fn predecessor(&self, v: Vertex) -> Result<Vertex, CycleError> {
        self.step(v, -1)
    }

    /// `C[u, v]`: the vertices from `u` to `v` along the orientation.
    pub fn segment(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>, CycleError> {
        let i = position(&self.vertices, u)?;
        let j = position(&self.vertices, v)?;
        let m = self.vertices.len();
        let len = (j + m - i) % m + 1;
        Ok((0..len).map(|t| self.vertices[(i + t) % m]).collect())
    }

    pub fn reversed(&self) -> AltCycle {
        let mut vs = self.vertices.clone();
        vs.reverse();
        AltCycle { vertices: vs }
    }

    /// Rotation that starts at `v`, keeping the orientation.
    pub fn rotated_to(&self, v: Vertex) -> Result<AltCycle, CycleError> {
        let i = position(&self.vertices, v)?;
        let mut vs = self.vertices.clone();
        vs.rotate_left(i);
        Ok(AltCycle { vertices: vs })
    }

    /// Representative of the rotation/reflection class: starts at the
    /// smallest vertex, followed by the smaller of its two neighbours.
    pub fn canonical_form(&self) -> AltCycle {
        let vs = &self.vertices;
        let m = vs.len();
        let (i, _) = vs.iter().enumerate().min_by_key(|(_, &v)| v).expect("nonempty cycle");
        let next = vs[(i + 1) % m];
        let prev = vs[(i + m - 1) % m];
        let out: Vec<Vertex> = if next < prev {
            (0..m).map(|t| vs[(i + t) % m]).collect()
        } else {
            (0..m).map(|t| vs[(i + m - t) % m]).collect()
        };
        AltCycle { vertices: out }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_form()
    }

    /// Labels like `["x1", "y2", ...]` from the canonical starting point.
    pub fn labels(&self) -> Vec<String> {
        self.canonical_form().vertices.iter().map(|v| v.to_string()).collect()
    }
}

impl fmt::Display for AltCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            write!(f, "{v}")?;
        }
        write!(f, "{}", self.vertices[0])
    }
}

/// A path `v_1 v_2 ⋯ v_m`, oriented from `v_1` to `v_m`. A single vertex is a
/// path of order 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AltPath {
    vertices: Vec<Vertex>,
}

impl AltPath {
    pub fn new(g: &BipartiteGraph, vertices: Vec<Vertex>) -> Result<Self, CycleError> {
        if vertices.is_empty() {
            return Err(CycleError::EmptyPath);
        }
        validate_walk(g, &vertices, false)?;
        Ok(AltPath { vertices })
    }

    pub(crate) fn from_trusted(vertices: Vec<Vertex>) -> Self {
        AltPath { vertices }
    }

    pub fn validate(&self, g: &BipartiteGraph) -> Result<(), CycleError> {
        validate_walk(g, &self.vertices, false)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// `|P|`, the order of the path.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_vertices(self.vertices.iter().copied())
    }

    pub fn s_count(&self, s: &SVertexSet) -> usize {
        self.vertices.iter().filter(|&&v| s.contains_vertex(v)).count()
    }

    /// `S_P` in path order.
    pub fn s_vertices(&self, s: &SVertexSet) -> Vec<Vertex> {
        self.vertices.iter().copied().filter(|&v| s.contains_vertex(v)).collect()
    }

    pub fn step(&self, v: Vertex, steps: isize) -> Result<Vertex, CycleError> {
        let i = position(&self.vertices, v)? as isize + steps;
        if i < 0 || i >= self.vertices.len() as isize {
            return Err(CycleError::OffPath { from: v, steps });
        }
        Ok(self.vertices[i as usize])
    }

    pub fn successor(&self, v: Vertex) -> Result<Vertex, CycleError> {
        self.step(v, 1)
    }

    pub fn predecessor(&self, v: Vertex) -> Result<Vertex, CycleError> {
        self.step(v, -1)
    }

    /// `P[u, v]` for `u` at or before `v`.
    pub fn segment(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>, CycleError> {
        let i = position(&self.vertices, u)?;
        let j = position(&self.vertices, v)?;
        if j < i {
            return Err(CycleError::NotOnWalk(v));
        }
        Ok(self.vertices[i..=j].to_vec())
    }

    pub fn reversed(&self) -> AltPath {
        let mut vs = self.vertices.clone();
        vs.reverse();
        AltPath { vertices: vs }
    }
}

impl fmt::Display for AltPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// `|V(C) ∩ S| ≥ 2`. Fails if `c` is not a cycle of `g`.
pub fn is_feasible(g: &BipartiteGraph, s: &SVertexSet, c: &AltCycle) -> Result<bool, CycleError> {
    c.validate(g)?;
    Ok(c.s_count(s) >= FEASIBLE_MIN_BIPARTITE)
}

/// `(Σ|C_i|, Σ|S_{C_i}|)`, compared lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SystemKey {
    pub total_length: usize,
    pub total_s_count: usize,
}

/// Pairwise vertex-disjoint feasible cycles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleSystem {
    cycles: Vec<AltCycle>,
}

impl CycleSystem {
    pub fn new(g: &BipartiteGraph, s: &SVertexSet, cycles: Vec<AltCycle>) -> Result<Self, CycleError> {
        let sys = CycleSystem { cycles };
        sys.validate(g, s)?;
        Ok(sys)
    }

    pub(crate) fn from_trusted(cycles: Vec<AltCycle>) -> Self {
        CycleSystem { cycles }
    }

    pub fn empty() -> Self {
        CycleSystem::default()
    }

    pub fn validate(&self, g: &BipartiteGraph, s: &SVertexSet) -> Result<(), CycleError> {
        let mut used = VertexSet::EMPTY;
        for (i, c) in self.cycles.iter().enumerate() {
            c.validate(g)?;
            if c.s_count(s) < FEASIBLE_MIN_BIPARTITE {
                return Err(CycleError::Infeasible(i));
            }
            for &v in c.vertices() {
                if used.contains(v) {
                    return Err(CycleError::Overlap(v));
                }
                used.insert(v);
            }
        }
        Ok(())
    }

    pub fn cycles(&self) -> &[AltCycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.cycles.iter().fold(VertexSet::EMPTY, |acc, c| acc.union(c.vertex_set()))
    }

    /// Canonical cycles sorted, for tie-breaking and equality up to relabelling
    /// of the cycles.
    pub fn canonical_encoding(&self) -> Vec<Vec<Vertex>> {
        let mut enc: Vec<Vec<Vertex>> =
            self.cycles.iter().map(|c| c.canonical_form().vertices).collect();
        enc.sort();
        enc
    }

    pub fn canonical(&self) -> CycleSystem {
        CycleSystem {
            cycles: self.canonical_encoding().into_iter().map(|vertices| AltCycle { vertices }).collect(),
        }
    }

    pub fn labels(&self) -> Vec<Vec<String>> {
        self.cycles.iter().map(AltCycle::labels).collect()
    }
}

pub fn system_key(sys: &CycleSystem, s: &SVertexSet) -> SystemKey {
    SystemKey {
        total_length: sys.cycles.iter().map(AltCycle::len).sum(),
        total_s_count: sys.cycles.iter().map(|c| c.s_count(s)).sum(),
    }
}

/// `|S_P| ≥ 2`, `|P|` even, and `G − P` has an S-matching saturating `S_{G−P}`.
pub fn is_good_path(g: &BipartiteGraph, s: &SVertexSet, p: &AltPath) -> bool {
    if p.len() % 2 != 0 || p.s_count(s) < 2 {
        return false;
    }
    let removed = p.vertex_set();
    let outside = (s.mask() & !removed.x).count_ones() as usize;
    max_s_matching(g, s, &removed).len() == outside
}

/// Vertices on `side` of a vertex sequence.
pub fn side_vertices(vs: &[Vertex], side: Side) -> impl Iterator<Item = Vertex> + '_ {
    vs.iter().copied().filter(move |v| v.side == side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex as V;

    fn square() -> (BipartiteGraph, AltCycle) {
        let g = BipartiteGraph::complete(2).unwrap();
        let c = AltCycle::new(&g, vec![V::x(0), V::y(0), V::x(1), V::y(1)]).unwrap();
        (g, c)
    }

    #[test]
    fn feasibility() {
        let (g, c) = square();
        assert!(is_feasible(&g, &SVertexSet::whole_x(2), &c).unwrap());
        assert!(!is_feasible(&g, &SVertexSet::new(2, [0]).unwrap(), &c).unwrap());
        let k33 = BipartiteGraph::complete(3).unwrap();
        let ham = AltCycle::new(
            &k33,
            vec![V::x(0), V::y(0), V::x(1), V::y(1), V::x(2), V::y(2)],
        )
        .unwrap();
        assert!(is_feasible(&k33, &SVertexSet::new(3, [0, 2]).unwrap(), &ham).unwrap());
        let sparse = BipartiteGraph::new(2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        assert!(is_feasible(&sparse, &SVertexSet::whole_x(2), &c).is_err());
    }

    #[test]
    fn construction_rejects_bad_walks() {
        let g = BipartiteGraph::complete(3).unwrap();
        assert_eq!(
            AltCycle::new(&g, vec![V::x(0), V::y(0), V::x(1)]),
            Err(CycleError::BadLength(3))
        );
        assert!(matches!(
            AltCycle::new(&g, vec![V::x(0), V::x(1), V::y(0), V::y(1)]),
            Err(CycleError::NotAlternating(..))
        ));
        assert!(matches!(
            AltCycle::new(&g, vec![V::x(0), V::y(0), V::x(0), V::y(1)]),
            Err(CycleError::Repeated(_))
        ));
        assert!(AltPath::new(&g, vec![]).is_err());
        assert!(AltPath::new(&g, vec![V::x(2)]).is_ok());
    }

    #[test]
    fn canonical_form_examples() {
        let (g, c) = square();
        let rotated = AltCycle::new(&g, vec![V::y(1), V::x(0), V::y(0), V::x(1)]).unwrap();
        assert_eq!(c.canonical_form(), rotated.canonical_form());
        assert_eq!(c.canonical_form(), c.reversed().canonical_form());
        let canon = c.canonical_form();
        assert_eq!(canon.canonical_form(), canon);
        assert_eq!(canon.vertices()[0], V::x(0));
        assert_eq!(canon.labels(), vec!["x1", "y1", "x2", "y2"]);
    }

    #[test]
    fn successor_and_predecessor() {
        let (_, c) = square();
        assert_eq!(c.successor(V::x(0)).unwrap(), V::y(0));
        assert_eq!(c.predecessor(V::x(0)).unwrap(), V::y(1));
        assert_eq!(c.step(V::y(1), -2).unwrap(), V::y(0));
        let g = BipartiteGraph::complete(1).unwrap();
        let p = AltPath::new(&g, vec![V::x(0), V::y(0)]).unwrap();
        assert_eq!(p.successor(V::x(0)).unwrap(), V::y(0));
        assert!(matches!(p.predecessor(V::x(0)), Err(CycleError::OffPath { .. })));
        assert!(c.step(V::x(5), 1).is_err());
    }

    #[test]
    fn segments() {
        let (_, c) = square();
        assert_eq!(c.segment(V::x(1), V::y(0)).unwrap(), vec![V::x(1), V::y(1), V::x(0), V::y(0)]);
        assert_eq!(c.segment(V::x(0), V::x(0)).unwrap(), vec![V::x(0)]);
    }

    #[test]
    fn system_keys() {
        let g = BipartiteGraph::complete(4).unwrap();
        let s = SVertexSet::whole_x(4);
        let a = AltCycle::new(&g, vec![V::x(0), V::y(0), V::x(1), V::y(1)]).unwrap();
        let b = AltCycle::new(&g, vec![V::x(2), V::y(2), V::x(3), V::y(3)]).unwrap();
        let sys = CycleSystem::new(&g, &s, vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(system_key(&sys, &s), SystemKey { total_length: 8, total_s_count: 4 });
        let six = AltCycle::new(
            &g,
            vec![V::x(0), V::y(0), V::x(1), V::y(1), V::x(2), V::y(2)],
        )
        .unwrap();
        let one = CycleSystem::new(&g, &s, vec![six.clone()]).unwrap();
        assert_eq!(system_key(&one, &s), SystemKey { total_length: 6, total_s_count: 3 });
        assert_eq!(system_key(&CycleSystem::empty(), &s), SystemKey::default());
        assert!(matches!(
            CycleSystem::new(&g, &s, vec![a, six]),
            Err(CycleError::Overlap(_))
        ));
        assert!(SystemKey { total_length: 6, total_s_count: 9 } < SystemKey { total_length: 8, total_s_count: 2 });
    }

    #[test]
    fn good_paths() {
        let g = BipartiteGraph::complete(4).unwrap();
        let s = SVertexSet::new(4, [0, 1, 2]).unwrap();
        let odd = AltPath::new(&g, vec![V::x(0), V::y(0), V::x(1)]).unwrap();
        assert!(!is_good_path(&g, &s, &odd));
        let p = AltPath::new(&g, vec![V::x(0), V::y(0), V::x(1), V::y(1)]).unwrap();
        assert!(is_good_path(&g, &s, &p));
        let cover = AltPath::new(
            &g,
            vec![V::x(0), V::y(0), V::x(1), V::y(1), V::x(2), V::y(2)],
        )
        .unwrap();
        assert!(is_good_path(&g, &s, &cover));
        // x2 is isolated once y0, y1 leave with the path.
        let h = BipartiteGraph::new(4, [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1)]).unwrap();
        let q = AltPath::new(&h, vec![V::x(0), V::y(0), V::x(1), V::y(1)]).unwrap();
        assert!(!is_good_path(&h, &s, &q));
    }
}
