//! Empirical checks of the structural lemmas behind the degree-sum results.
//!
//! Every [`LemmaInstance`] bundles a graph, a marked set and the objects a
//! lemma talks about. [`evaluate`] first verifies every hypothesis by direct
//! computation (minimality by exhaustive search), then either realises the
//! promised configuration by exhaustive search or checks the stated bound.
//! A [`LemmaStatus::Refuted`] outcome would contradict a proved statement and
//! therefore points at a bug.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::constructions::gen_random_with;
use crate::cycle::{system_key, AltCycle, AltPath, CycleSystem};
use crate::graph::{
    edges_between, max_s_matching, sigma11, BipartiteGraph, Matching, SVertexSet, Side, Vertex, VertexSet,
};
use crate::oracle::{CycleCatalog, Support, ORACLE_MAX_N};
use crate::solver::{solve, Mode, SolveRequest, SolveStatus};

/// Largest half-order for lemmas whose hypotheses include minimality.
pub const LEMMA_MAX_N: usize = ORACLE_MAX_N;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    L1_1,
    L1_2,
    L1_3,
    L1_4,
    L2_1,
    L2_2,
    L2_3,
    L2_4,
    L3,
    L4_1,
    L4_2,
    L5,
    L6,
    L3_1,
    L3_2_1,
    L3_2_2,
}

impl LemmaId {
    pub const ALL: [LemmaId; 16] = [
        LemmaId::L1_1,
        LemmaId::L1_2,
        LemmaId::L1_3,
        LemmaId::L1_4,
        LemmaId::L2_1,
        LemmaId::L2_2,
        LemmaId::L2_3,
        LemmaId::L2_4,
        LemmaId::L3,
        LemmaId::L4_1,
        LemmaId::L4_2,
        LemmaId::L5,
        LemmaId::L6,
        LemmaId::L3_1,
        LemmaId::L3_2_1,
        LemmaId::L3_2_2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::L1_1 => "L1.1",
            LemmaId::L1_2 => "L1.2",
            LemmaId::L1_3 => "L1.3",
            LemmaId::L1_4 => "L1.4",
            LemmaId::L2_1 => "L2.1",
            LemmaId::L2_2 => "L2.2",
            LemmaId::L2_3 => "L2.3",
            LemmaId::L2_4 => "L2.4",
            LemmaId::L3 => "L3",
            LemmaId::L4_1 => "L4.1",
            LemmaId::L4_2 => "L4.2",
            LemmaId::L5 => "L5",
            LemmaId::L6 => "L6",
            LemmaId::L3_1 => "L3_1",
            LemmaId::L3_2_1 => "L3_2_1",
            LemmaId::L3_2_2 => "L3_2_2",
        }
    }

    /// Whether the hypotheses include a minimality condition, which caps the
    /// instance size at [`LEMMA_MAX_N`].
    pub fn needs_minimality(self) -> bool {
        matches!(
            self,
            LemmaId::L1_1
                | LemmaId::L1_2
                | LemmaId::L1_3
                | LemmaId::L1_4
                | LemmaId::L6
                | LemmaId::L3_1
                | LemmaId::L3_2_1
                | LemmaId::L3_2_2
        )
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = LemmaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| LemmaError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LemmaError {
    #[error("unknown lemma id `{0}`")]
    UnknownId(String),
    #[error("n = {n} exceeds {LEMMA_MAX_N}; minimality cannot be checked exhaustively")]
    TooLarge { n: usize },
    #[error("objects do not fit lemma {0}")]
    WrongObjects(LemmaId),
}

/// The subgraph `H` of the quadrilateral lemma.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HShape {
    /// One X vertex and one Y vertex, adjacent or not.
    Pair { x: usize, y: usize },
    /// Two disjoint edges, as `(x, y)` index pairs.
    TwoEdges([(usize, usize); 2]),
    Path(AltPath),
}

impl HShape {
    pub fn vertex_set(&self) -> VertexSet {
        match self {
            HShape::Pair { x, y } => VertexSet::from_vertices([Vertex::x(*x), Vertex::y(*y)]),
            HShape::TwoEdges(es) => {
                VertexSet::from_vertices(es.iter().flat_map(|&(x, y)| [Vertex::x(x), Vertex::y(y)]))
            }
            HShape::Path(p) => p.vertex_set(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaObjects {
    /// A cycle `C` and vertices `x ∈ S`, `y ∈ Y` off it.
    CycleAndPair { cycle: AltCycle, x: usize, y: usize },
    /// A quadrilateral `C` and a subgraph `H` of `G − C`.
    QuadAndH { cycle: AltCycle, h: HShape },
    /// A cycle `C` and a path `P` of `G − C`.
    CycleAndPath { cycle: AltCycle, path: AltPath },
    Path { path: AltPath },
    System { system: CycleSystem },
    /// A system and a path `Q = y₁ y₂ y₃` with `y₂ ∈ S` outside it.
    SystemAndQ { system: CycleSystem, q: [Vertex; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaInstance {
    pub id: LemmaId,
    pub graph: BipartiteGraph,
    pub s: SVertexSet,
    pub objects: LemmaObjects,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LemmaStatus {
    Witness,
    HypothesisFails,
    Refuted,
}

impl LemmaStatus {
    pub fn name(self) -> &'static str {
        match self {
            LemmaStatus::Witness => "WITNESS",
            LemmaStatus::HypothesisFails => "HYPOTHESIS_FAILS",
            LemmaStatus::Refuted => "REFUTED",
        }
    }
}

/// Which alternative of a disjunctive conclusion held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    TwoQuadrilaterals,
    Endvertex,
    MoreCycles,
    Matching,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaWitness {
    /// Quantities a bound was checked against.
    Measured(BTreeMap<&'static str, usize>),
    CycleAndEdge { cycle: AltCycle, edge: (usize, usize) },
    CycleAndPath { cycle: AltCycle, path: AltPath },
    Cycles(Vec<AltCycle>),
    Endvertex(Vertex),
    Hamiltonian(AltCycle),
    SystemAndMatching { system: CycleSystem, matching: Matching },
    /// For the disjunctive augmentation statement: every alternative that
    /// holds, the first one listed being reported as `branch`.
    Disjunction { branch: Branch, more_cycles: Option<CycleSystem>, matching: Option<(CycleSystem, Matching)> },
}

fn cycle_json(c: &AltCycle) -> Value {
    json!(c.labels())
}

fn path_json(p: &AltPath) -> Value {
    json!(p.vertices().iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn system_json(sys: &CycleSystem) -> Value {
    json!(sys.labels())
}

fn matching_json(m: &Matching) -> Value {
    json!(m.edges.iter().map(|&(x, y)| [Vertex::x(x).to_string(), Vertex::y(y).to_string()]).collect::<Vec<_>>())
}

fn edge_json(x: usize, y: usize) -> Value {
    json!([Vertex::x(x).to_string(), Vertex::y(y).to_string()])
}

impl LemmaWitness {
    pub fn to_json(&self) -> Value {
        match self {
            LemmaWitness::Measured(m) => json!({ "measured": m }),
            LemmaWitness::CycleAndEdge { cycle, edge } => {
                json!({ "cycle": cycle_json(cycle), "edge": edge_json(edge.0, edge.1) })
            }
            LemmaWitness::CycleAndPath { cycle, path } => json!({ "cycle": cycle_json(cycle), "path": path_json(path) }),
            LemmaWitness::Cycles(cs) => json!({ "cycles": cs.iter().map(cycle_json).collect::<Vec<_>>() }),
            LemmaWitness::Endvertex(z) => json!({ "endvertex": z.to_string() }),
            LemmaWitness::Hamiltonian(c) => json!({ "hamiltonian": cycle_json(c) }),
            LemmaWitness::SystemAndMatching { system, matching } => {
                json!({ "system": system_json(system), "matching": matching_json(matching) })
            }
            LemmaWitness::Disjunction { branch, more_cycles, matching } => json!({
                "branch": branch,
                "more_cycles": more_cycles.as_ref().map(system_json),
                "system": matching.as_ref().map(|(sys, _)| system_json(sys)),
                "matching": matching.as_ref().map(|(_, m)| matching_json(m)),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub status: LemmaStatus,
    pub witness: Option<LemmaWitness>,
    /// Which hypothesis or conclusion failed.
    pub reason: Option<String>,
}

impl LemmaOutcome {
    fn witness(w: LemmaWitness) -> Self {
        LemmaOutcome { status: LemmaStatus::Witness, witness: Some(w), reason: None }
    }

    fn fails(reason: impl Into<String>) -> Self {
        LemmaOutcome { status: LemmaStatus::HypothesisFails, witness: None, reason: Some(reason.into()) }
    }

    fn refuted(reason: impl Into<String>) -> Self {
        LemmaOutcome { status: LemmaStatus::Refuted, witness: None, reason: Some(reason.into()) }
    }
}

impl LemmaInstance {
    /// Full serialisation, enough to rebuild the instance.
    pub fn to_json(&self) -> Value {
        let n = self.graph.n();
        let mut obj = serde_json::Map::new();
        obj.insert("lemma".into(), json!(self.id.name()));
        obj.insert("n".into(), json!(n));
        obj.insert("s".into(), json!(self.s.members().map(|i| i + 1).collect::<Vec<_>>()));
        obj.insert("edges".into(), json!(self.graph.edges().map(|(x, y)| [x + 1, y + 1]).collect::<Vec<_>>()));
        match &self.objects {
            LemmaObjects::CycleAndPair { cycle, x, y } => {
                obj.insert("cycle".into(), cycle_json(cycle));
                obj.insert("x".into(), json!(Vertex::x(*x).to_string()));
                obj.insert("y".into(), json!(Vertex::y(*y).to_string()));
            }
            LemmaObjects::QuadAndH { cycle, h } => {
                obj.insert("cycle".into(), cycle_json(cycle));
                let hv = match h {
                    HShape::Pair { x, y } => json!({ "pair": [Vertex::x(*x).to_string(), Vertex::y(*y).to_string()] }),
                    HShape::TwoEdges(es) => json!({ "edges": es.iter().map(|&(x, y)| edge_json(x, y)).collect::<Vec<_>>() }),
                    HShape::Path(p) => json!({ "path": path_json(p) }),
                };
                obj.insert("h".into(), hv);
            }
            LemmaObjects::CycleAndPath { cycle, path } => {
                obj.insert("cycle".into(), cycle_json(cycle));
                obj.insert("path".into(), path_json(path));
            }
            LemmaObjects::Path { path } => {
                obj.insert("path".into(), path_json(path));
            }
            LemmaObjects::System { system } => {
                obj.insert("system".into(), system_json(system));
            }
            LemmaObjects::SystemAndQ { system, q } => {
                obj.insert("system".into(), system_json(system));
                obj.insert("q".into(), json!(q.iter().map(ToString::to_string).collect::<Vec<_>>()));
            }
        }
        Value::Object(obj)
    }
}

/// True when every hypothesis of the instance's lemma holds.
pub fn check_hypothesis(inst: &LemmaInstance) -> Result<bool, LemmaError> {
    Ok(evaluate(inst)?.status != LemmaStatus::HypothesisFails)
}

/// Checks the hypotheses, then realises or checks the conclusion.
pub fn evaluate(inst: &LemmaInstance) -> Result<LemmaOutcome, LemmaError> {
    let n = inst.graph.n();
    if inst.id.needs_minimality() && n > LEMMA_MAX_N {
        return Err(LemmaError::TooLarge { n });
    }
    let g = &inst.graph;
    let s = &inst.s;
    let wrong = || LemmaError::WrongObjects(inst.id);
    match (inst.id, &inst.objects) {
        (LemmaId::L1_1 | LemmaId::L1_2 | LemmaId::L1_3 | LemmaId::L1_4, LemmaObjects::CycleAndPair { cycle, x, y }) => {
            Ok(lemma1(inst.id, g, s, cycle, *x, *y))
        }
        (LemmaId::L2_1 | LemmaId::L2_2 | LemmaId::L2_3 | LemmaId::L2_4, LemmaObjects::QuadAndH { cycle, h }) => {
            Ok(lemma2(inst.id, g, cycle, h))
        }
        (LemmaId::L3, LemmaObjects::CycleAndPath { cycle, path }) => Ok(lemma3(g, s, cycle, path)),
        (LemmaId::L4_1, LemmaObjects::CycleAndPath { cycle, path }) => Ok(lemma4_cycle(g, cycle, path)),
        (LemmaId::L4_2, LemmaObjects::Path { path }) => Ok(lemma4_path(g, path)),
        (LemmaId::L5, LemmaObjects::Path { path }) => Ok(lemma5(g, s, path)),
        (LemmaId::L6, LemmaObjects::System { system }) => Ok(lemma6(g, s, system)),
        (LemmaId::L3_1, LemmaObjects::System { system }) => Ok(lemma3_1(g, s, system)),
        (LemmaId::L3_2_1, LemmaObjects::System { system }) => Ok(lemma3_2_1(g, s, system)),
        (LemmaId::L3_2_2, LemmaObjects::SystemAndQ { system, q }) => Ok(lemma3_2_2(g, s, system, q)),
        _ => Err(wrong()),
    }
}

fn measured<const N: usize>(pairs: [(&'static str, usize); N]) -> LemmaWitness {
    LemmaWitness::Measured(pairs.into_iter().collect())
}

/// Length of a shortest feasible cycle, if any.
fn shortest_feasible(catalog: &CycleCatalog, s: &SVertexSet) -> Option<usize> {
    catalog.feasible(s).map(AltCycle::len).min()
}

fn is_min_length_system(catalog: &CycleCatalog, s: &SVertexSet, sys: &CycleSystem) -> bool {
    let total: usize = sys.cycles().iter().map(AltCycle::len).sum();
    catalog.min_key(s, sys.len()).is_some_and(|k| k.total_length == total)
}

fn disjoint_from(set: &VertexSet, vs: &VertexSet) -> bool {
    !set.intersects(vs)
}

fn lemma1(id: LemmaId, g: &BipartiteGraph, s: &SVertexSet, c: &AltCycle, x: usize, y: usize) -> LemmaOutcome {
    if c.validate(g).is_err() {
        return LemmaOutcome::fails("C is not a cycle of G");
    }
    if c.len() < 6 {
        return LemmaOutcome::fails("|C| < 6");
    }
    let n = g.n();
    if x >= n || y >= n || !s.contains(x) {
        return LemmaOutcome::fails("x must lie in S and y in Y");
    }
    let vc = c.vertex_set();
    let (vx, vy) = (Vertex::x(x), Vertex::y(y));
    if vc.contains(vx) || vc.contains(vy) {
        return LemmaOutcome::fails("x or y lies on C");
    }
    if c.s_count(s) < 2 {
        return LemmaOutcome::fails("C is not feasible");
    }
    let catalog = CycleCatalog::build(g);
    if shortest_feasible(&catalog, s) != Some(c.len()) {
        return LemmaOutcome::fails("C is not a minimal system");
    }
    let m = c.len() / 2;
    let dx = g.degree_into(vx, &vc);
    let dy = g.degree_into(vy, &vc);
    let xy = g.has_edge(x, y);
    let e = dx + dy;
    match id {
        LemmaId::L1_1 => {
            if dx <= 2 && dy <= 4 && (!xy || e <= 4) {
                LemmaOutcome::witness(measured([("d_C(x)", dx), ("d_C(y)", dy), ("e", e), ("xy", xy as usize)]))
            } else {
                LemmaOutcome::refuted(format!("d_C(x) = {dx}, d_C(y) = {dy}, xy = {xy}"))
            }
        }
        LemmaId::L1_2 => {
            if dy > m - 1 {
                return LemmaOutcome::refuted(format!("d_C(y) = {dy} > {}", m - 1));
            }
            if dy == m - 1 {
                let missing: Vec<Vertex> = c
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|v| v.side == Side::X && !g.adjacent(*v, vy))
                    .collect();
                let xj = missing[0];
                let s_c = c.s_vertices(s);
                let mut ok = s.contains_vertex(xj) && s_c.len() == 2 && c.len() <= 8;
                if ok && c.len() == 8 {
                    let other = c.step(xj, 4).expect("on cycle");
                    ok = s_c.contains(&xj) && s_c.contains(&other);
                }
                if !ok {
                    return LemmaOutcome::refuted(format!("tight case fails at {xj}"));
                }
            }
            LemmaOutcome::witness(measured([("d_C(y)", dy), ("bound", m - 1)]))
        }
        LemmaId::L1_3 => {
            if e < m + 1 {
                return LemmaOutcome::fails(format!("e({{x,y}},C) = {e} < {}", m + 1));
            }
            if xy {
                return LemmaOutcome::refuted("xy is an edge");
            }
            match extract_l1_3(g, s, c, x, y) {
                Some((cycle, yi)) => LemmaOutcome::witness(LemmaWitness::CycleAndEdge { cycle, edge: (x, yi) }),
                None => LemmaOutcome::refuted("no cycle of equal length and S-count beside an edge at x"),
            }
        }
        LemmaId::L1_4 => {
            if !xy {
                return LemmaOutcome::fails("xy is not an edge");
            }
            if e <= m {
                LemmaOutcome::witness(measured([("e", e), ("bound", m)]))
            } else {
                LemmaOutcome::refuted(format!("e({{x,y}},C) = {e} > {m}"))
            }
        }
        _ => unreachable!("lemma1 called for {id}"),
    }
}

/// A cycle `C'` with `|C'| = |C|`, `|S_C'| = |S_C|` inside `G[V(C) ∪ {x, y}]`
/// and an edge `x y_i` off it. Returns `C'` and `i`.
pub fn extract_l1_3(g: &BipartiteGraph, s: &SVertexSet, c: &AltCycle, x: usize, y: usize) -> Option<(AltCycle, usize)> {
    let mut keep = c.vertex_set();
    keep.insert(Vertex::x(x));
    keep.insert(Vertex::y(y));
    let catalog = CycleCatalog::build(&g.restricted(&keep));
    let want_s = c.s_count(s);
    for cand in catalog.cycles() {
        if cand.len() != c.len() || cand.s_count(s) != want_s || cand.contains(Vertex::x(x)) {
            continue;
        }
        let used = cand.vertex_set();
        let free_y = crate::graph::bits(g.x_row(x) & keep.y & !used.y).next();
        if let Some(yi) = free_y {
            return Some((cand.clone(), yi));
        }
    }
    None
}

fn lemma2(id: LemmaId, g: &BipartiteGraph, c: &AltCycle, h: &HShape) -> LemmaOutcome {
    if c.validate(g).is_err() || c.len() != 4 {
        return LemmaOutcome::fails("C is not a quadrilateral of G");
    }
    let n = g.n();
    let vc = c.vertex_set();
    let hv = h.vertex_set();
    let shape_ok = match (id, h) {
        (LemmaId::L2_1, HShape::Pair { x, y }) => *x < n && *y < n,
        (LemmaId::L2_2, HShape::TwoEdges(es)) => {
            es.iter().all(|&(x, y)| x < n && y < n && g.has_edge(x, y)) && es[0].0 != es[1].0 && es[0].1 != es[1].1
        }
        (LemmaId::L2_3, HShape::Path(p)) => p.validate(g).is_ok() && p.len() == 4,
        (LemmaId::L2_4, HShape::Path(p)) => p.validate(g).is_ok() && p.len() >= 6,
        _ => false,
    };
    if !shape_ok {
        return LemmaOutcome::fails("H does not have the required shape");
    }
    if !disjoint_from(&vc, &hv) {
        return LemmaOutcome::fails("H meets C");
    }
    let e = edges_between(g, &hv, &vc);
    if e < hv.len() + 1 {
        return LemmaOutcome::fails(format!("e(H,C) = {e} < |H| + 1"));
    }
    if id == LemmaId::L2_3 && e < 6 {
        return LemmaOutcome::fails(format!("e(H,C) = {e} < 6"));
    }
    let keep = vc.union(hv);
    let sub = g.restricted(&keep);
    let catalog = CycleCatalog::build(&sub);
    let quads = || catalog.cycles().iter().filter(|q| q.len() == 4);
    match id {
        LemmaId::L2_1 => {
            for q in quads() {
                let rest = keep.minus(q.vertex_set());
                if let Some((x, y)) = single_edge(&sub, &rest) {
                    return LemmaOutcome::witness(LemmaWitness::CycleAndEdge { cycle: q.clone(), edge: (x, y) });
                }
            }
            LemmaOutcome::refuted("no quadrilateral beside an edge")
        }
        LemmaId::L2_2 => {
            for q in quads() {
                let rest = keep.minus(q.vertex_set());
                if let Some(p) = hamiltonian_path(&sub, &rest) {
                    return LemmaOutcome::witness(LemmaWitness::CycleAndPath { cycle: q.clone(), path: p });
                }
            }
            LemmaOutcome::refuted("no quadrilateral beside a path of order 4")
        }
        LemmaId::L2_3 => {
            for (i, a) in quads().enumerate() {
                for b in quads().skip(i + 1) {
                    if !a.vertex_set().intersects(&b.vertex_set()) {
                        return LemmaOutcome::witness(LemmaWitness::Cycles(vec![a.clone(), b.clone()]));
                    }
                }
            }
            let HShape::Path(p) = h else { unreachable!() };
            for z in [p.first(), p.last()] {
                if g.degree_into(z, &vc) == 0 {
                    return LemmaOutcome::witness(LemmaWitness::Endvertex(z));
                }
            }
            LemmaOutcome::refuted("neither two disjoint quadrilaterals nor an endvertex missing C")
        }
        LemmaId::L2_4 => match two_disjoint_cycles(&catalog) {
            Some(cs) => LemmaOutcome::witness(LemmaWitness::Cycles(cs)),
            None => LemmaOutcome::refuted("no two disjoint cycles"),
        },
        _ => unreachable!("lemma2 called for {id}"),
    }
}

/// The edge spanned by a set of exactly one X and one Y vertex, if present.
fn single_edge(g: &BipartiteGraph, set: &VertexSet) -> Option<(usize, usize)> {
    if set.x.count_ones() != 1 || set.y.count_ones() != 1 {
        return None;
    }
    let (x, y) = (set.x.trailing_zeros() as usize, set.y.trailing_zeros() as usize);
    g.has_edge(x, y).then_some((x, y))
}

/// A path through every vertex of a small set, by brute force.
fn hamiltonian_path(g: &BipartiteGraph, set: &VertexSet) -> Option<AltPath> {
    let vs: Vec<Vertex> = set.iter().collect();
    fn rec(g: &BipartiteGraph, vs: &[Vertex], path: &mut Vec<Vertex>, used: &mut Vec<bool>) -> bool {
        if path.len() == vs.len() {
            return true;
        }
        for i in 0..vs.len() {
            if used[i] || path.last().is_some_and(|&l| !g.adjacent(l, vs[i])) {
                continue;
            }
            used[i] = true;
            path.push(vs[i]);
            if rec(g, vs, path, used) {
                return true;
            }
            path.pop();
            used[i] = false;
        }
        false
    }
    let mut path = Vec::new();
    let mut used = vec![false; vs.len()];
    rec(g, &vs, &mut path, &mut used).then(|| AltPath::from_trusted(path))
}

fn two_disjoint_cycles(catalog: &CycleCatalog) -> Option<Vec<AltCycle>> {
    let any = SVertexSet::from_mask(64, u64::MAX).expect("64 bits");
    let supports: Vec<Support> = catalog.feasible_supports(&any);
    let mut out = None;
    CycleCatalog::for_each_system(&supports, 2, |chosen| {
        out = Some(chosen.iter().map(|&i| catalog.cycles()[supports[i].cycle].clone()).collect());
        ControlFlow::Break(())
    });
    out
}

/// `U` of the quadrilateral-plus-path lemma: the S-vertices of `P` and their
/// successors, leaving out the successor of the last vertex when it is in S.
fn lemma3_u(s: &SVertexSet, p: &AltPath) -> Vec<Vertex> {
    let vs = p.vertices();
    let mut u = Vec::new();
    for (i, &v) in vs.iter().enumerate() {
        if s.contains_vertex(v) {
            u.push(v);
            if i + 1 < vs.len() {
                u.push(vs[i + 1]);
            }
        }
    }
    u
}

fn lemma3(g: &BipartiteGraph, s: &SVertexSet, c: &AltCycle, p: &AltPath) -> LemmaOutcome {
    if c.validate(g).is_err() || c.len() != 4 || c.s_count(s) < 2 {
        return LemmaOutcome::fails("C is not a feasible quadrilateral");
    }
    if p.validate(g).is_err() || p.vertex_set().intersects(&c.vertex_set()) {
        return LemmaOutcome::fails("P is not a path of G - C");
    }
    let sp = p.s_count(s);
    if sp < 3 || !s.contains_vertex(p.first()) {
        return LemmaOutcome::fails("need |S_P| >= 3 and u_1 in S");
    }
    if sp == 3 && s.contains_vertex(p.last()) {
        return LemmaOutcome::fails("u_p in S while |S_P| = 3");
    }
    let u = lemma3_u(s, p);
    let uset = VertexSet::from_vertices(u.iter().copied());
    let e = edges_between(g, &uset, &c.vertex_set());
    if e < u.len() + 1 {
        return LemmaOutcome::fails(format!("e(U,C) = {e} < |U| + 1 = {}", u.len() + 1));
    }
    let direct = {
        let keep = c.vertex_set().union(p.vertex_set());
        let sub_s = SVertexSet::from_mask(g.n(), s.mask() & keep.x).expect("subset of S");
        solve(&g.restricted(&keep), &sub_s, &SolveRequest::new(Mode::Feasible, 2)).map(|o| o.status)
    };
    match extract_l3(g, s, c, p) {
        Some(cs) => {
            if direct != Ok(SolveStatus::Found) {
                return LemmaOutcome::refuted("extractor and direct search disagree");
            }
            LemmaOutcome::witness(LemmaWitness::Cycles(cs.cycles().to_vec()))
        }
        None => LemmaOutcome::refuted("auxiliary path construction produced no two disjoint feasible cycles"),
    }
}

/// Two disjoint feasible cycles in `G[V(C ∪ P)]`: join consecutive S-vertices
/// of `P` by auxiliary edges `u⁺ u_next`, find two disjoint cycles on `C` and
/// the contracted path, then replace every auxiliary edge by the stretch of
/// `P` it stands for.
pub fn extract_l3(g: &BipartiteGraph, s: &SVertexSet, c: &AltCycle, p: &AltPath) -> Option<CycleSystem> {
    let vs = p.vertices();
    let s_pos: Vec<usize> = (0..vs.len()).filter(|&i| s.contains_vertex(vs[i])).collect();
    let mut aux: Vec<(usize, usize)> = Vec::new(); // positions (u⁺, next S-vertex) on P
    let mut lifted = g.clone();
    for w in s_pos.windows(2) {
        let (a, b) = (w[0] + 1, w[1]);
        aux.push((a, b));
        let (ya, xb) = (vs[a], vs[b]);
        lifted = lifted.with_edge(xb.index, ya.index);
    }
    let u = lemma3_u(s, p);
    let keep = c.vertex_set().union(VertexSet::from_vertices(u.iter().copied()));
    let catalog = CycleCatalog::build(&lifted.restricted(&keep));
    let pair = two_disjoint_cycles(&catalog)?;
    let pos = |v: Vertex| vs.iter().position(|&w| w == v);
    let expanded: Vec<AltCycle> = pair
        .iter()
        .map(|cyc| {
            let cv = cyc.vertices();
            let mut out = Vec::new();
            for i in 0..cv.len() {
                let (a, b) = (cv[i], cv[(i + 1) % cv.len()]);
                out.push(a);
                if let (Some(pa), Some(pb)) = (pos(a), pos(b)) {
                    let (lo, hi) = (pa.min(pb), pa.max(pb));
                    if aux.contains(&(lo, hi)) {
                        let inner = &vs[lo + 1..hi];
                        if pa < pb {
                            out.extend_from_slice(inner);
                        } else {
                            out.extend(inner.iter().rev());
                        }
                    }
                }
            }
            AltCycle::new(g, out).ok()
        })
        .collect::<Option<Vec<_>>>()?;
    CycleSystem::new(g, s, expanded).ok()
}

fn hamiltonian_cycle(g: &BipartiteGraph, keep: &VertexSet) -> Option<AltCycle> {
    let catalog = CycleCatalog::build(&g.restricted(keep));
    catalog.cycles().iter().find(|c| c.vertex_set() == *keep).cloned()
}

fn lemma4_cycle(g: &BipartiteGraph, c: &AltCycle, p: &AltPath) -> LemmaOutcome {
    if c.validate(g).is_err() {
        return LemmaOutcome::fails("C is not a cycle of G");
    }
    if p.validate(g).is_err() || p.len() % 2 != 0 || p.vertex_set().intersects(&c.vertex_set()) {
        return LemmaOutcome::fails("P is not an even path of G - C");
    }
    let ends = VertexSet::from_vertices([p.first(), p.last()]);
    let e = edges_between(g, &ends, &c.vertex_set());
    if e < c.len() / 2 + 1 {
        return LemmaOutcome::fails(format!("e({{x,y}},C) = {e} < |C|/2 + 1"));
    }
    match hamiltonian_cycle(g, &c.vertex_set().union(p.vertex_set())) {
        Some(h) => LemmaOutcome::witness(LemmaWitness::Hamiltonian(h)),
        None => LemmaOutcome::refuted("G[V(C ∪ P)] is not hamiltonian"),
    }
}

fn lemma4_path(g: &BipartiteGraph, p: &AltPath) -> LemmaOutcome {
    if p.validate(g).is_err() || p.len() % 2 != 0 || p.len() < 4 {
        return LemmaOutcome::fails("P is not an even path of order >= 4");
    }
    let vp = p.vertex_set();
    let e = g.degree_into(p.first(), &vp) + g.degree_into(p.last(), &vp);
    if e < p.len() / 2 + 1 {
        return LemmaOutcome::fails(format!("e({{x,y}},P) = {e} < |P|/2 + 1"));
    }
    match hamiltonian_cycle(g, &vp) {
        Some(h) => LemmaOutcome::witness(LemmaWitness::Hamiltonian(h)),
        None => LemmaOutcome::refuted("G[V(P)] is not hamiltonian"),
    }
}

/// An even-order path of `G[keep]` shorter than `max_len` whose S-vertices
/// are exactly `target`.
fn shorter_path_with_s(g: &BipartiteGraph, s: &SVertexSet, keep: &VertexSet, target: u64, max_len: usize) -> bool {
    let sub = g.restricted(keep);
    fn rec(
        g: &BipartiteGraph,
        s: &SVertexSet,
        target: u64,
        max_len: usize,
        path: &mut Vec<Vertex>,
        used: &mut VertexSet,
    ) -> bool {
        let s_here = s.mask() & used.x;
        if s_here & !target != 0 {
            return false;
        }
        if path.len() % 2 == 0 && s_here == target {
            return true;
        }
        if path.len() + 1 >= max_len {
            return false;
        }
        let last = *path.last().expect("nonempty");
        let nb = g.neighbors(last);
        for i in crate::graph::bits(nb) {
            let v = Vertex { side: last.side.other(), index: i };
            if used.contains(v) {
                continue;
            }
            used.insert(v);
            path.push(v);
            if rec(g, s, target, max_len, path, used) {
                return true;
            }
            path.pop();
            used.remove(v);
        }
        false
    }
    for start in keep.iter() {
        let mut used = VertexSet::from_vertices([start]);
        let mut path = vec![start];
        if rec(&sub, s, target, max_len, &mut path, &mut used) {
            return true;
        }
    }
    false
}

fn lemma5(g: &BipartiteGraph, s: &SVertexSet, p: &AltPath) -> LemmaOutcome {
    if p.validate(g).is_err() || p.len() % 2 != 0 || p.len() < 4 || p.first().side != Side::X {
        return LemmaOutcome::fails("P must be x_1 y_1 ... x_p y_p with p >= 2");
    }
    let vs = p.vertices();
    let (x1, xp, yp) = (vs[0], vs[vs.len() - 2], vs[vs.len() - 1]);
    if !s.contains_vertex(x1) || !s.contains_vertex(xp) {
        return LemmaOutcome::fails("x_1 and x_p must lie in S");
    }
    let vp = p.vertex_set();
    let catalog = CycleCatalog::build(&g.restricted(&vp));
    if catalog.feasible(s).next().is_some() {
        return LemmaOutcome::fails("G[V(P)] contains a feasible cycle");
    }
    if shorter_path_with_s(g, s, &vp, s.mask() & vp.x, p.len()) {
        return LemmaOutcome::fails("G[V(P)] contains a shorter even path with the same S-vertices");
    }
    let d = |v: Vertex| g.degree_into(v, &vp);
    if d(x1) != 1 {
        return LemmaOutcome::refuted(format!("d_P(x_1) = {}", d(x1)));
    }
    if let Some(&bad) = vs[1..].iter().find(|&&v| s.contains_vertex(v) && d(v) != 2) {
        return LemmaOutcome::refuted(format!("d_P({bad}) = {}", d(bad)));
    }
    if d(yp) > 2 {
        return LemmaOutcome::refuted(format!("d_P(y_p) = {}", d(yp)));
    }
    LemmaOutcome::witness(measured([("d_P(x_1)", d(x1)), ("d_P(y_p)", d(yp)), ("|S_P|", p.s_count(s))]))
}

fn lemma6(g: &BipartiteGraph, s: &SVertexSet, sys: &CycleSystem) -> LemmaOutcome {
    if sys.len() != 2 || sys.validate(g, s).is_err() {
        return LemmaOutcome::fails("need two disjoint feasible cycles");
    }
    let (c1, c2) = (&sys.cycles()[0], &sys.cycles()[1]);
    let (t, s2) = (c1.s_count(s), c2.s_count(s));
    if !(t >= s2 && s2 >= 2 && t >= 3) {
        return LemmaOutcome::fails(format!("need t >= s >= 2 and t >= 3, got t = {t}, s = {s2}"));
    }
    let catalog = CycleCatalog::build(g);
    if !is_min_length_system(&catalog, s, sys) {
        return LemmaOutcome::fails("{C_1, C_2} is not a minimal system");
    }
    let vc2 = c2.vertex_set();
    let mut worst = 0;
    for orient in [c1.clone(), c1.reversed()] {
        let l = VertexSet::from_vertices(
            orient.s_vertices(s).into_iter().flat_map(|v| [v, orient.successor(v).expect("on cycle")]),
        );
        let e = edges_between(g, &l, &vc2);
        worst = worst.max(e);
        if 2 * e > t * c2.len() {
            return LemmaOutcome::refuted(format!("e(L, C_2) = {e} > t|C_2|/2"));
        }
    }
    LemmaOutcome::witness(measured([("e", worst), ("t", t), ("|C_2|", c2.len())]))
}

fn lemma3_1(g: &BipartiteGraph, s: &SVertexSet, sys: &CycleSystem) -> LemmaOutcome {
    if sys.is_empty() || sys.validate(g, s).is_err() {
        return LemmaOutcome::fails("need k >= 1 disjoint feasible cycles");
    }
    let n = g.n();
    if !sigma11(g, s).at_least(n + 1) {
        return LemmaOutcome::fails("sigma < n + 1");
    }
    if sys.vertex_set() == VertexSet::all(n) {
        return LemmaOutcome::fails("the cycles cover V(G)");
    }
    let catalog = CycleCatalog::build(g);
    if catalog.min_key(s, sys.len()) != Some(system_key(sys, s)) {
        return LemmaOutcome::fails("not a minimal S system");
    }
    match sys.cycles().iter().find(|c| c.s_count(s) != 2) {
        Some(c) => LemmaOutcome::refuted(format!("|S_C| = {} on {c}", c.s_count(s))),
        None => LemmaOutcome::witness(measured([("k", sys.len())])),
    }
}

fn profile(s: &SVertexSet, cycles: impl Iterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    let _ = s;
    let mut p: Vec<(usize, usize)> = cycles.collect();
    p.sort_unstable();
    p
}

/// Systems of `G − avoid` with the same multiset of `(|C_i|, |S_{C_i}|)` as
/// `sys`, passed to `f` until it breaks.
fn for_each_equal_profile<F>(catalog: &CycleCatalog, s: &SVertexSet, sys: &CycleSystem, avoid: VertexSet, mut f: F)
where
    F: FnMut(CycleSystem) -> ControlFlow<()>,
{
    let want = profile(s, sys.cycles().iter().map(|c| (c.len(), c.s_count(s))));
    let supports: Vec<Support> =
        catalog.feasible_supports(s).into_iter().filter(|sp| !sp.set.intersects(&avoid)).collect();
    if sys.is_empty() {
        let _ = f(CycleSystem::empty());
        return;
    }
    CycleCatalog::for_each_system(&supports, sys.len(), |chosen| {
        let got = profile(s, chosen.iter().map(|&i| (supports[i].len, supports[i].s_count)));
        if got == want {
            f(catalog.system(&supports, chosen))
        } else {
            ControlFlow::Continue(())
        }
    });
}

fn system_hypotheses(g: &BipartiteGraph, s: &SVertexSet, sys: &CycleSystem, floor: usize) -> Result<CycleCatalog, LemmaOutcome> {
    if sys.validate(g, s).is_err() {
        return Err(LemmaOutcome::fails("not a system of disjoint feasible cycles"));
    }
    if !sigma11(g, s).at_least(floor) {
        return Err(LemmaOutcome::fails(format!("sigma < {floor}")));
    }
    let catalog = CycleCatalog::build(g);
    if !sys.is_empty() && !is_min_length_system(&catalog, s, sys) {
        return Err(LemmaOutcome::fails("not a minimal system"));
    }
    Ok(catalog)
}

fn lemma3_2_1(g: &BipartiteGraph, s: &SVertexSet, sys: &CycleSystem) -> LemmaOutcome {
    let catalog = match system_hypotheses(g, s, sys, g.n()) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let mut found = None;
    for_each_equal_profile(&catalog, s, sys, VertexSet::EMPTY, |cand| {
        let used = cand.vertex_set();
        let need = (s.mask() & !used.x).count_ones() as usize;
        let m = max_s_matching(g, s, &used);
        if m.len() == need {
            found = Some(LemmaWitness::SystemAndMatching { system: cand, matching: m });
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    match found {
        Some(w) => LemmaOutcome::witness(w),
        None => LemmaOutcome::refuted("no equal-profile system leaves an S-saturating matching"),
    }
}

fn lemma3_2_2(g: &BipartiteGraph, s: &SVertexSet, sys: &CycleSystem, q: &[Vertex; 3]) -> LemmaOutcome {
    let catalog = match system_hypotheses(g, s, sys, g.n() + 1) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let [y1, y2, y3] = *q;
    let n = g.n();
    let in_range = q.iter().all(|v| v.index < n);
    if !in_range
        || y1.side != Side::Y
        || y3.side != Side::Y
        || y1 == y3
        || !s.contains_vertex(y2)
        || !g.adjacent(y1, y2)
        || !g.adjacent(y2, y3)
    {
        return LemmaOutcome::fails("Q must be a path y_1 y_2 y_3 with y_2 in S");
    }
    let qset = VertexSet::from_vertices(q.iter().copied());
    if qset.intersects(&sys.vertex_set()) {
        return LemmaOutcome::fails("Q meets the system");
    }
    let more = {
        let mut found = None;
        let supports = catalog.feasible_supports(s);
        CycleCatalog::for_each_system(&supports, sys.len() + 1, |chosen| {
            found = Some(catalog.system(&supports, chosen));
            ControlFlow::Break(())
        });
        found
    };
    let mut matching = None;
    for_each_equal_profile(&catalog, s, sys, qset, |cand| {
        let used = cand.vertex_set().union(qset);
        let free = VertexSet::all(n).minus(used);
        let l = (free.y.count_ones() as usize).min((s.mask() & free.x).count_ones() as usize);
        let m = max_s_matching(g, s, &used);
        if m.len() >= l {
            matching = Some((cand, m));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let branch = match (&more, &matching) {
        (Some(_), _) => Branch::MoreCycles,
        (None, Some(_)) => Branch::Matching,
        (None, None) => return LemmaOutcome::refuted("neither alternative holds"),
    };
    LemmaOutcome::witness(LemmaWitness::Disjunction { branch, more_cycles: more, matching })
}

// ---------------------------------------------------------------------------
// Samplers

/// Builds edge sets by hand while planting structures.
struct Canvas {
    n: usize,
    rows: Vec<u64>,
}

impl Canvas {
    fn new(n: usize) -> Self {
        Canvas { n, rows: vec![0; n] }
    }

    fn link(&mut self, a: Vertex, b: Vertex) {
        let (x, y) = if a.side == Side::X { (a.index, b.index) } else { (b.index, a.index) };
        debug_assert!(a.side != b.side);
        self.rows[x] |= 1 << y;
    }

    fn walk(&mut self, vs: &[Vertex], closed: bool) {
        for w in vs.windows(2) {
            self.link(w[0], w[1]);
        }
        if closed {
            self.link(vs[vs.len() - 1], vs[0]);
        }
    }

    /// Adds each absent edge allowed by `ok` with probability `permille/1000`.
    fn noise<R: Rng>(&mut self, rng: &mut R, permille: u32, ok: impl Fn(usize, usize) -> bool) {
        for x in 0..self.n {
            for y in 0..self.n {
                if self.rows[x] & (1 << y) == 0 && ok(x, y) && rng.gen_range(0..1000) < permille {
                    self.rows[x] |= 1 << y;
                }
            }
        }
    }

    fn graph(&self) -> BipartiteGraph {
        BipartiteGraph::from_rows(self.n, &self.rows).expect("rows fit")
    }
}

/// Free indices on each side, shuffled.
struct Pool {
    xs: Vec<usize>,
    ys: Vec<usize>,
}

impl Pool {
    fn new<R: Rng>(rng: &mut R, n: usize) -> Self {
        let mut xs: Vec<usize> = (0..n).collect();
        let mut ys: Vec<usize> = (0..n).collect();
        xs.shuffle(rng);
        ys.shuffle(rng);
        Pool { xs, ys }
    }

    fn take(&mut self, side: Side) -> Vertex {
        match side {
            Side::X => Vertex::x(self.xs.pop().expect("enough X vertices")),
            Side::Y => Vertex::y(self.ys.pop().expect("enough Y vertices")),
        }
    }

    /// An alternating sequence of `len` fresh vertices starting on `side`.
    fn walk(&mut self, len: usize, side: Side) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(len);
        let mut cur = side;
        for _ in 0..len {
            out.push(self.take(cur));
            cur = cur.other();
        }
        out
    }
}

fn pick<R: Rng, T: Copy>(rng: &mut R, options: &[T]) -> T {
    options[rng.gen_range(0..options.len())]
}

fn mask_of(vs: &[Vertex], side: Side) -> u64 {
    vs.iter().filter(|v| v.side == side).fold(0, |m, v| m | v.bit())
}

/// Random S containing `must`, with X vertices in `maybe` added with
/// probability `permille/1000`.
fn random_s<R: Rng>(rng: &mut R, n: usize, must: u64, maybe: u64, permille: u32) -> SVertexSet {
    let mut mask = must;
    for i in crate::graph::bits(maybe & !must) {
        if rng.gen_range(0..1000) < permille {
            mask |= 1 << i;
        }
    }
    SVertexSet::from_mask(n, mask).expect("in range")
}

fn other_x(n: usize, used: u64) -> u64 {
    crate::graph::low_bits(n) & !used
}

/// Draws a candidate instance for `id`; it need not satisfy the hypotheses.
pub fn sample_instance<R: Rng>(id: LemmaId, rng: &mut R) -> Option<LemmaInstance> {
    match id {
        LemmaId::L1_1 | LemmaId::L1_2 | LemmaId::L1_3 | LemmaId::L1_4 => Some(sample_l1(id, rng)),
        LemmaId::L2_1 | LemmaId::L2_2 | LemmaId::L2_3 | LemmaId::L2_4 => Some(sample_l2(id, rng)),
        LemmaId::L3 => Some(sample_l3(rng)),
        LemmaId::L4_1 => Some(sample_l4_cycle(rng)),
        LemmaId::L4_2 => Some(sample_l4_path(rng)),
        LemmaId::L5 => Some(sample_l5(rng)),
        LemmaId::L6 => Some(sample_l6(rng)),
        LemmaId::L3_1 | LemmaId::L3_2_1 | LemmaId::L3_2_2 => sample_system(id, rng),
    }
}

fn sample_l1<R: Rng>(id: LemmaId, rng: &mut R) -> LemmaInstance {
    let n = pick(rng, &[4, 5, 6]);
    let m = if id == LemmaId::L1_3 { pick(rng, &[3, 3, 3, 4]) } else { rng.gen_range(3..n.min(6)) };
    let m = m.min(n - 1);
    let mut pool = Pool::new(rng, n);
    let cyc = pool.walk(2 * m, Side::X);
    let x = pool.take(Side::X);
    let y = pool.take(Side::Y);
    let mut cv = Canvas::new(n);
    cv.walk(&cyc, true);
    let xc: Vec<Vertex> = cyc.iter().copied().filter(|v| v.side == Side::X).collect();
    let yc: Vec<Vertex> = cyc.iter().copied().filter(|v| v.side == Side::Y).collect();
    let (dx, dy) = match id {
        LemmaId::L1_3 => (2, m - 1),
        _ => (rng.gen_range(0..=2), rng.gen_range(0..m)),
    };
    for &t in yc.choose_multiple(rng, dx) {
        cv.link(x, t);
    }
    for &t in xc.choose_multiple(rng, dy) {
        cv.link(y, t);
    }
    if id == LemmaId::L1_4 || (id != LemmaId::L1_3 && rng.gen_bool(0.3)) {
        cv.link(x, y);
    }
    let on = VertexSet::from_vertices(cyc.iter().copied().chain([x, y]));
    let q = rng.gen_range(0..250);
    cv.noise(rng, q, |a, b| !on.contains(Vertex::x(a)) || !on.contains(Vertex::y(b)));
    let mut s_c = xc.clone();
    s_c.shuffle(rng);
    let k = if rng.gen_bool(0.7) { 2 } else { 3.min(m) };
    let must = mask_of(&s_c[..k], Side::X) | x.bit();
    let s = random_s(rng, n, must, other_x(n, mask_of(&cyc, Side::X) | x.bit()), 300);
    let g = cv.graph();
    let cycle = AltCycle::new(&g, cyc).expect("planted cycle");
    LemmaInstance { id, graph: g, s, objects: LemmaObjects::CycleAndPair { cycle, x: x.index, y: y.index } }
}

fn sample_l2<R: Rng>(id: LemmaId, rng: &mut R) -> LemmaInstance {
    let h_len = match id {
        LemmaId::L2_1 => 2,
        LemmaId::L2_2 | LemmaId::L2_3 => 4,
        _ => pick(rng, &[6, 6, 8]),
    };
    let n_min = 2 + h_len / 2;
    let n = rng.gen_range(n_min..=6.max(n_min));
    let mut pool = Pool::new(rng, n);
    let quad = pool.walk(4, Side::X);
    let mut cv = Canvas::new(n);
    cv.walk(&quad, true);
    let h = match id {
        LemmaId::L2_1 => {
            let (x, y) = (pool.take(Side::X), pool.take(Side::Y));
            if rng.gen_bool(0.5) {
                cv.link(x, y);
            }
            HShape::Pair { x: x.index, y: y.index }
        }
        LemmaId::L2_2 => {
            let (x1, y1, x2, y2) = (pool.take(Side::X), pool.take(Side::Y), pool.take(Side::X), pool.take(Side::Y));
            cv.link(x1, y1);
            cv.link(x2, y2);
            HShape::TwoEdges([(x1.index, y1.index), (x2.index, y2.index)])
        }
        _ => {
            let start = if rng.gen_bool(0.5) { Side::X } else { Side::Y };
            let vs = pool.walk(h_len, start);
            cv.walk(&vs, false);
            HShape::Path(AltPath::from_trusted(vs))
        }
    };
    let hv = h.vertex_set();
    let qv = VertexSet::from_vertices(quad.iter().copied());
    let dense = rng.gen_range(300..950);
    let sparse = rng.gen_range(0..300);
    let cross = |a: usize, b: usize| {
        let (va, vb) = (Vertex::x(a), Vertex::y(b));
        (hv.contains(va) && qv.contains(vb)) || (qv.contains(va) && hv.contains(vb))
    };
    cv.noise(rng, dense, cross);
    cv.noise(rng, sparse, |a, b| !cross(a, b));
    let g = cv.graph();
    let s = random_s(rng, n, 0, crate::graph::low_bits(n), 500);
    let cycle = AltCycle::new(&g, quad).expect("planted cycle");
    LemmaInstance { id, graph: g, s, objects: LemmaObjects::QuadAndH { cycle, h } }
}

fn sample_l3<R: Rng>(rng: &mut R) -> LemmaInstance {
    let n = pick(rng, &[5, 6, 6]);
    let mut pool = Pool::new(rng, n);
    let quad = pool.walk(4, Side::X);
    let max_order = 2 * (n - 2);
    let order = rng.gen_range(5..=max_order);
    let pv = pool.walk(order, Side::X);
    let mut cv = Canvas::new(n);
    cv.walk(&quad, true);
    cv.walk(&pv, false);
    let must = mask_of(&quad, Side::X) | pv[0].bit();
    let s = random_s(rng, n, must, mask_of(&pv, Side::X), 750);
    let path = AltPath::from_trusted(pv);
    let u = VertexSet::from_vertices(lemma3_u(&s, &path));
    let qv = VertexSet::from_vertices(quad.iter().copied());
    let cross = |a: usize, b: usize| {
        let (va, vb) = (Vertex::x(a), Vertex::y(b));
        (u.contains(va) && qv.contains(vb)) || (qv.contains(va) && u.contains(vb))
    };
    let dense = rng.gen_range(500..1000);
    cv.noise(rng, dense, cross);
    let sparse = rng.gen_range(0..200);
    cv.noise(rng, sparse, |a, b| !cross(a, b));
    let s = random_s(rng, n, s.mask(), other_x(n, mask_of(&quad, Side::X) | mask_of(path.vertices(), Side::X)), 500);
    let g = cv.graph();
    let cycle = AltCycle::new(&g, quad).expect("planted cycle");
    LemmaInstance { id: LemmaId::L3, graph: g, s, objects: LemmaObjects::CycleAndPath { cycle, path } }
}

fn sample_l4_cycle<R: Rng>(rng: &mut R) -> LemmaInstance {
    let n = rng.gen_range(3..=6);
    let c_len = 2 * rng.gen_range(2..n);
    let p_len = 2 * rng.gen_range(1..=(n - c_len / 2));
    let mut pool = Pool::new(rng, n);
    let cyc = pool.walk(c_len, Side::X);
    let start = if rng.gen_bool(0.5) { Side::X } else { Side::Y };
    let pv = pool.walk(p_len, start);
    let mut cv = Canvas::new(n);
    cv.walk(&cyc, true);
    cv.walk(&pv, false);
    let ends = VertexSet::from_vertices([pv[0], pv[p_len - 1]]);
    let cset = VertexSet::from_vertices(cyc.iter().copied());
    let cross = |a: usize, b: usize| {
        let (va, vb) = (Vertex::x(a), Vertex::y(b));
        (ends.contains(va) && cset.contains(vb)) || (cset.contains(va) && ends.contains(vb))
    };
    let dense = rng.gen_range(300..1000);
    cv.noise(rng, dense, cross);
    let sparse = rng.gen_range(0..300);
    cv.noise(rng, sparse, |a, b| !cross(a, b));
    let g = cv.graph();
    let s = random_s(rng, n, 0, crate::graph::low_bits(n), 500);
    let cycle = AltCycle::new(&g, cyc).expect("planted cycle");
    let path = AltPath::new(&g, pv).expect("planted path");
    LemmaInstance { id: LemmaId::L4_1, graph: g, s, objects: LemmaObjects::CycleAndPath { cycle, path } }
}

fn sample_l4_path<R: Rng>(rng: &mut R) -> LemmaInstance {
    let n = rng.gen_range(2..=6);
    let p_len = 2 * rng.gen_range(2..=n);
    let mut pool = Pool::new(rng, n);
    let start = if rng.gen_bool(0.5) { Side::X } else { Side::Y };
    let pv = pool.walk(p_len, start);
    let mut cv = Canvas::new(n);
    cv.walk(&pv, false);
    let ends = VertexSet::from_vertices([pv[0], pv[p_len - 1]]);
    let pset = VertexSet::from_vertices(pv.iter().copied());
    let touches = |a: usize, b: usize| {
        let (va, vb) = (Vertex::x(a), Vertex::y(b));
        (ends.contains(va) && pset.contains(vb)) || (pset.contains(va) && ends.contains(vb))
    };
    let dense = rng.gen_range(200..1000);
    cv.noise(rng, dense, touches);
    let sparse = rng.gen_range(0..400);
    cv.noise(rng, sparse, |a, b| !touches(a, b));
    let g = cv.graph();
    let s = random_s(rng, n, 0, crate::graph::low_bits(n), 500);
    let path = AltPath::new(&g, pv).expect("planted path");
    LemmaInstance { id: LemmaId::L4_2, graph: g, s, objects: LemmaObjects::Path { path } }
}

fn sample_l5<R: Rng>(rng: &mut R) -> LemmaInstance {
    let n = rng.gen_range(2..=6);
    let p = rng.gen_range(2..=n);
    let mut pool = Pool::new(rng, n);
    let pv = pool.walk(2 * p, Side::X);
    let mut cv = Canvas::new(n);
    cv.walk(&pv, false);
    let pset = VertexSet::from_vertices(pv.iter().copied());
    let chords = rng.gen_range(0..350);
    cv.noise(rng, chords, |a, b| pset.contains(Vertex::x(a)) && pset.contains(Vertex::y(b)));
    let outside = rng.gen_range(0..500);
    cv.noise(rng, outside, |a, b| !(pset.contains(Vertex::x(a)) && pset.contains(Vertex::y(b))));
    let must = pv[0].bit() | pv[2 * p - 2].bit();
    let share = rng.gen_range(0..700);
    let s = random_s(rng, n, must, crate::graph::low_bits(n), share);
    let g = cv.graph();
    let path = AltPath::new(&g, pv).expect("planted path");
    LemmaInstance { id: LemmaId::L5, graph: g, s, objects: LemmaObjects::Path { path } }
}

fn sample_l6<R: Rng>(rng: &mut R) -> LemmaInstance {
    let n = pick(rng, &[5, 6]);
    let (l1, l2) = if n == 5 { (6, 4) } else { pick(rng, &[(6, 4), (6, 6), (8, 4)]) };
    let mut pool = Pool::new(rng, n);
    let c1 = pool.walk(l1, Side::X);
    let c2 = pool.walk(l2, Side::X);
    let mut cv = Canvas::new(n);
    cv.walk(&c1, true);
    cv.walk(&c2, true);
    let mut x1: Vec<Vertex> = c1.iter().copied().filter(|v| v.side == Side::X).collect();
    let mut x2: Vec<Vertex> = c2.iter().copied().filter(|v| v.side == Side::X).collect();
    x1.shuffle(rng);
    x2.shuffle(rng);
    let t = rng.gen_range(3..=x1.len());
    let s2 = rng.gen_range(2..=x2.len().min(t));
    let must = mask_of(&x1[..t], Side::X) | mask_of(&x2[..s2], Side::X);
    let used = mask_of(&c1, Side::X) | mask_of(&c2, Side::X);
    let s = random_s(rng, n, must, other_x(n, used), 500);
    let q = rng.gen_range(0..300);
    cv.noise(rng, q, |_, _| true);
    let g = cv.graph();
    let system = CycleSystem::from_trusted(vec![AltCycle::from_trusted(c1), AltCycle::from_trusted(c2)]);
    LemmaInstance { id: LemmaId::L6, graph: g, s, objects: LemmaObjects::System { system } }
}

/// Random graphs meeting the degree floor, with a uniformly chosen system of
/// least total length (and, for the first lemma of the group, least S-count).
fn sample_system<R: Rng>(id: LemmaId, rng: &mut R) -> Option<LemmaInstance> {
    let n = pick(rng, &[3, 4, 4, 5, 5, 6]);
    let k = match id {
        LemmaId::L3_1 => pick(rng, &[1, 1, 2]),
        _ => pick(rng, &[0, 1, 1, 2]),
    };
    let floor = if id == LemmaId::L3_2_1 { n } else { n + 1 };
    let k = k.min(n / 2);
    let s_size = rng.gen_range((2 * k).max(1)..=n);
    let density = rng.gen_range(450..950);
    let (g, s) = gen_random_with(rng, n, s_size, density, Some(floor)).ok()?;
    let catalog = CycleCatalog::build(&g);
    let system = if k == 0 {
        CycleSystem::empty()
    } else {
        let best = catalog.min_key(&s, k)?;
        let supports = catalog.feasible_supports(&s);
        let mut all = Vec::new();
        CycleCatalog::for_each_system(&supports, k, |chosen| {
            let len: usize = chosen.iter().map(|&i| supports[i].len).sum();
            let sc: usize = chosen.iter().map(|&i| supports[i].s_count).sum();
            let hit = if id == LemmaId::L3_1 {
                len == best.total_length && sc == best.total_s_count
            } else {
                len == best.total_length
            };
            if hit {
                all.push(chosen.to_vec());
            }
            ControlFlow::Continue(())
        });
        let chosen = all.choose(rng)?;
        catalog.system(&supports, chosen)
    };
    let objects = if id == LemmaId::L3_2_2 {
        let used = system.vertex_set();
        let mut qs = Vec::new();
        for x in s.members() {
            if used.contains(Vertex::x(x)) {
                continue;
            }
            let ys: Vec<usize> = crate::graph::bits(g.x_row(x) & !used.y).collect();
            for (i, &a) in ys.iter().enumerate() {
                for &b in &ys[i + 1..] {
                    qs.push([Vertex::y(a), Vertex::x(x), Vertex::y(b)]);
                }
            }
        }
        let q = *qs.choose(rng)?;
        LemmaObjects::SystemAndQ { system, q }
    } else {
        LemmaObjects::System { system }
    };
    Some(LemmaInstance { id, graph: g, s, objects })
}
