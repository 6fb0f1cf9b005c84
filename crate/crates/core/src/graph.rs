//! Balanced bipartite graphs `G[X, Y]` with bitset adjacency, the marked set
//! `S ⊆ X`, degree queries, the partial degree sum `σ₁,₁(S)` and S-matchings.

use std::fmt;

use thiserror::Error;

/// Largest supported half-order. Rows are stored as `u64` masks.
pub const MAX_HALF_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("half-order {0} is out of range (1..={MAX_HALF_ORDER})")]
    HalfOrder(usize),
    #[error("edge ({x}, {y}) is out of range for half-order {n}")]
    EdgeOutOfRange { x: usize, y: usize, n: usize },
    #[error("vertex {side}{index} is out of range for half-order {n}")]
    VertexOutOfRange { side: Side, index: usize, n: usize },
    #[error("vertex sets overlap")]
    Overlap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "x",
            Side::Y => "y",
        })
    }
}

/// A vertex as `(side, index)`. The derived order puts every X vertex before
/// every Y vertex, which is the global id order `x_i ↦ i`, `y_j ↦ n + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub const fn x(index: usize) -> Self {
        Vertex { side: Side::X, index }
    }

    pub const fn y(index: usize) -> Self {
        Vertex { side: Side::Y, index }
    }

    pub fn global_id(self, n: usize) -> usize {
        match self.side {
            Side::X => self.index,
            Side::Y => n + self.index,
        }
    }

    pub fn bit(self) -> u64 {
        1u64 << self.index
    }
}

/// 1-based label, e.g. `x3`.
impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side, self.index + 1)
    }
}

/// A set of vertices of a bipartite graph, one mask per side.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    pub x: u64,
    pub y: u64,
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { x: 0, y: 0 };

    pub fn all(n: usize) -> Self {
        VertexSet { x: low_bits(n), y: low_bits(n) }
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in vertices {
            set.insert(v);
        }
        set
    }

    pub fn insert(&mut self, v: Vertex) {
        match v.side {
            Side::X => self.x |= v.bit(),
            Side::Y => self.y |= v.bit(),
        }
    }

    pub fn remove(&mut self, v: Vertex) {
        match v.side {
            Side::X => self.x &= !v.bit(),
            Side::Y => self.y &= !v.bit(),
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match v.side {
            Side::X => self.x & v.bit() != 0,
            Side::Y => self.y & v.bit() != 0,
        }
    }

    pub fn len(&self) -> usize {
        (self.x.count_ones() + self.y.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet { x: self.x | other.x, y: self.y | other.y }
    }

    pub fn minus(self, other: VertexSet) -> VertexSet {
        VertexSet { x: self.x & !other.x, y: self.y & !other.y }
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.x & other.x != 0 || self.y & other.y != 0
    }

    /// Vertices in global id order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        bits(self.x).map(Vertex::x).chain(bits(self.y).map(Vertex::y))
    }
}

pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Indices of set bits, ascending.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Balanced bipartite graph `G[X, Y]` with `|X| = |Y| = n`.
///
/// `rows[i]` holds the Y-neighbourhood of `x_i`, `cols[j]` the X-neighbourhood
/// of `y_j`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl BipartiteGraph {
    /// Builds the graph with exactly the given `(x, y)` edges; duplicates collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (x, y) in edges {
            if x >= n || y >= n {
                return Err(GraphError::EdgeOutOfRange { x, y, n });
            }
            g.rows[x] |= 1 << y;
            g.cols[y] |= 1 << x;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_HALF_ORDER {
            return Err(GraphError::HalfOrder(n));
        }
        Ok(BipartiteGraph { n, rows: vec![0; n], cols: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Self::from_rows(n, &vec![low_bits(n); n])
    }

    /// Builds from row masks; bits at positions `>= n` are rejected.
    pub fn from_rows(n: usize, rows: &[u64]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        if rows.len() != n {
            return Err(GraphError::HalfOrder(rows.len()));
        }
        for (x, &row) in rows.iter().enumerate() {
            if row & !low_bits(n) != 0 {
                let y = (row & !low_bits(n)).trailing_zeros() as usize;
                return Err(GraphError::EdgeOutOfRange { x, y, n });
            }
            g.rows[x] = row;
            for y in bits(row) {
                g.cols[y] |= 1 << x;
            }
        }
        Ok(g)
    }

    /// Decodes the `index`-th graph of the `2^(n*n)` enumeration: bit `i*n + j`
    /// of `index` is the edge `x_i y_j`. Requires `n*n <= 64`.
    pub fn from_index(n: usize, index: u64) -> Result<Self, GraphError> {
        if n * n > 64 {
            return Err(GraphError::HalfOrder(n));
        }
        let rows: Vec<u64> = (0..n).map(|i| (index >> (i * n)) & low_bits(n)).collect();
        Self::from_rows(n, &rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.n && y < self.n && self.rows[x] & (1 << y) != 0
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        match (u.side, v.side) {
            (Side::X, Side::Y) => self.has_edge(u.index, v.index),
            (Side::Y, Side::X) => self.has_edge(v.index, u.index),
            _ => false,
        }
    }

    /// Y-neighbourhood mask of `x_i`.
    pub fn x_row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// X-neighbourhood mask of `y_j`.
    pub fn y_col(&self, j: usize) -> u64 {
        self.cols[j]
    }

    /// Neighbourhood mask of `v` on the opposite side.
    pub fn neighbors(&self, v: Vertex) -> u64 {
        match v.side {
            Side::X => self.rows[v.index],
            Side::Y => self.cols[v.index],
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v.index < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { side: v.side, index: v.index, n: self.n })
        }
    }

    pub fn degree(&self, side: Side, index: usize) -> Result<usize, GraphError> {
        let v = Vertex { side, index };
        self.check_vertex(v)?;
        Ok(self.neighbors(v).count_ones() as usize)
    }

    /// `d_W(v)`: neighbours of `v` inside `w`.
    pub fn degree_into(&self, v: Vertex, w: &VertexSet) -> usize {
        let mask = match v.side {
            Side::X => w.y,
            Side::Y => w.x,
        };
        (self.neighbors(v) & mask).count_ones() as usize
    }

    /// Edges `(x, y)` in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(x, &r)| bits(r).map(move |y| (x, y)))
    }

    pub fn with_edge(&self, x: usize, y: usize) -> Self {
        let mut g = self.clone();
        g.rows[x] |= 1 << y;
        g.cols[y] |= 1 << x;
        g
    }

    pub fn without_edge(&self, x: usize, y: usize) -> Self {
        let mut g = self.clone();
        g.rows[x] &= !(1 << y);
        g.cols[y] &= !(1 << x);
        g
    }

    /// Keeps only edges with both ends in `keep`. Vertex indices are unchanged.
    pub fn restricted(&self, keep: &VertexSet) -> Self {
        let mut g = self.clone();
        for x in 0..self.n {
            g.rows[x] = if keep.x & (1 << x) != 0 { self.rows[x] & keep.y } else { 0 };
        }
        for y in 0..self.n {
            g.cols[y] = if keep.y & (1 << y) != 0 { self.cols[y] & keep.x } else { 0 };
        }
        g
    }

    /// Row masks packed into one integer, inverse of [`BipartiteGraph::from_index`].
    pub fn index(&self) -> Option<u64> {
        if self.n * self.n > 64 {
            return None;
        }
        Some(self.rows.iter().enumerate().fold(0u64, |acc, (i, &r)| acc | (r << (i * self.n))))
    }
}

/// The marked set `S ⊆ X`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SVertexSet {
    mask: u64,
}

impl SVertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self, GraphError> {
        let mut mask = 0u64;
        for i in members {
            if i >= n {
                return Err(GraphError::VertexOutOfRange { side: Side::X, index: i, n });
            }
            mask |= 1 << i;
        }
        Ok(SVertexSet { mask })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        if mask & !low_bits(n) != 0 {
            let i = (mask & !low_bits(n)).trailing_zeros() as usize;
            return Err(GraphError::VertexOutOfRange { side: Side::X, index: i, n });
        }
        Ok(SVertexSet { mask })
    }

    pub fn whole_x(n: usize) -> Self {
        SVertexSet { mask: low_bits(n) }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.mask & (1 << i) != 0
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v.side == Side::X && self.contains(v.index)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> {
        bits(self.mask)
    }

    /// `|S ∩ set|`.
    pub fn count_in(&self, set: &VertexSet) -> usize {
        (self.mask & set.x).count_ones() as usize
    }
}

/// `σ₁,₁(S)`: a finite degree sum, or infinite when `G[S, Y]` is complete.
/// The derived order places every finite value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaValue {
    Finite(usize),
    Infinite,
}

impl SigmaValue {
    pub fn at_least(self, bound: usize) -> bool {
        self >= SigmaValue::Finite(bound)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            SigmaValue::Finite(v) => Some(v),
            SigmaValue::Infinite => None,
        }
    }
}

impl fmt::Display for SigmaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaValue::Finite(v) => write!(f, "{v}"),
            SigmaValue::Infinite => f.write_str("inf"),
        }
    }
}

/// `min{d(x) + d(y) : x ∈ S, y ∈ Y, xy ∉ E}`, infinite when no such pair exists
/// (including `S = ∅`).
pub fn sigma11(g: &BipartiteGraph, s: &SVertexSet) -> SigmaValue {
    let n = g.n();
    let all_y = low_bits(n);
    let mut best: Option<usize> = None;
    for x in s.members().filter(|&x| x < n) {
        let dx = g.x_row(x).count_ones() as usize;
        for y in bits(!g.x_row(x) & all_y) {
            let sum = dx + g.y_col(y).count_ones() as usize;
            best = Some(best.map_or(sum, |b| b.min(sum)));
        }
    }
    best.map_or(SigmaValue::Infinite, SigmaValue::Finite)
}

/// `δ(S)`, or `None` for an empty set.
pub fn delta(g: &BipartiteGraph, s: &SVertexSet) -> Option<usize> {
    s.members().map(|x| g.x_row(x).count_ones() as usize).min()
}

/// A matching given as `(x, y)` index pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        let mut set = VertexSet::EMPTY;
        for &(x, y) in &self.edges {
            set.x |= 1 << x;
            set.y |= 1 << y;
        }
        set
    }

    /// True when the pairs are edges of `g` with pairwise distinct endpoints.
    pub fn is_valid_in(&self, g: &BipartiteGraph) -> bool {
        let mut xs = 0u64;
        let mut ys = 0u64;
        for &(x, y) in &self.edges {
            if !g.has_edge(x, y) || xs & (1 << x) != 0 || ys & (1 << y) != 0 {
                return false;
            }
            xs |= 1 << x;
            ys |= 1 << y;
        }
        true
    }
}

/// Maximum matching between the X vertices in `xs` and the Y vertices in `ys`.
/// Returns `partner[y] = x` for matched Y vertices.
///
/// X vertices are processed in ascending order and each tries its Y
/// neighbours in ascending order, so the matched X set is the
/// lexicographically smallest one.
pub(crate) fn kuhn(g: &BipartiteGraph, xs: u64, ys: u64) -> [u8; MAX_HALF_ORDER] {
    const FREE: u8 = u8::MAX;
    let mut partner = [FREE; MAX_HALF_ORDER];

    fn augment(
        g: &BipartiteGraph,
        x: usize,
        ys: u64,
        seen: &mut u64,
        partner: &mut [u8; MAX_HALF_ORDER],
    ) -> bool {
        // A free neighbour is taken before any existing pair is disturbed.
        if let Some(y) = bits(g.x_row(x) & ys & !*seen).find(|&y| partner[y] == FREE) {
            *seen |= 1 << y;
            partner[y] = x as u8;
            return true;
        }
        for y in bits(g.x_row(x) & ys & !*seen) {
            *seen |= 1 << y;
            if partner[y] == FREE || augment(g, partner[y] as usize, ys, seen, partner) {
                partner[y] = x as u8;
                return true;
            }
        }
        false
    }

    for x in bits(xs) {
        let mut seen = 0u64;
        augment(g, x, ys, &mut seen, &mut partner);
    }
    partner
}

pub(crate) fn matching_size(g: &BipartiteGraph, xs: u64, ys: u64) -> usize {
    kuhn(g, xs, ys).iter().filter(|&&p| p != u8::MAX).count()
}

/// Maximum S-matching of `G − forbidden`: every matched X vertex lies in `S`.
pub fn max_s_matching(g: &BipartiteGraph, s: &SVertexSet, forbidden: &VertexSet) -> Matching {
    let all = low_bits(g.n());
    let xs = s.mask() & all & !forbidden.x;
    let ys = all & !forbidden.y;
    let partner = kuhn(g, xs, ys);
    let mut edges: Vec<(usize, usize)> = partner
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != u8::MAX)
        .map(|(y, &x)| (x as usize, y))
        .collect();
    edges.sort_unstable();
    Matching { edges }
}

/// `e(U, W)`, the number of edges with one end in `U` and the other in `W`.
pub fn edge_count_between(
    g: &BipartiteGraph,
    u: &VertexSet,
    w: &VertexSet,
) -> Result<usize, GraphError> {
    if u.intersects(w) {
        return Err(GraphError::Overlap);
    }
    Ok(edges_between(g, u, w))
}

/// `Σ_{v ∈ U} d_W(v)`; no disjointness requirement.
pub fn edges_between(g: &BipartiteGraph, u: &VertexSet, w: &VertexSet) -> usize {
    u.iter().map(|v| g.degree_into(v, w)).sum()
}
