use bct::lemmas::{check_hypothesis, evaluate, HShape, LemmaId, LemmaInstance, LemmaObjects, LemmaStatus, LemmaWitness};
use bct::{AltCycle, AltPath, BipartiteGraph, CycleSystem, SVertexSet, Side, Vertex};

fn x(i: usize) -> Vertex {
    Vertex::x(i)
}

fn y(i: usize) -> Vertex {
    Vertex::y(i)
}

fn adjacent(g: &BipartiteGraph, a: Vertex, b: Vertex) -> bool {
    match (a.side, b.side) {
        (Side::X, Side::Y) => g.has_edge(a.index, b.index),
        (Side::Y, Side::X) => g.has_edge(b.index, a.index),
        _ => false,
    }
}

/// Checks a cycle vertex by vertex against the edge relation.
fn is_cycle(g: &BipartiteGraph, vs: &[Vertex]) -> bool {
    let distinct = (0..vs.len()).all(|i| (0..i).all(|j| vs[i] != vs[j]));
    vs.len() >= 4 && distinct && (0..vs.len()).all(|i| adjacent(g, vs[i], vs[(i + 1) % vs.len()]))
}

fn s_count(s: &SVertexSet, vs: &[Vertex]) -> usize {
    vs.iter().filter(|v| v.side == Side::X && s.contains(v.index)).count()
}

fn disjoint(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|v| !b.contains(v))
}

/// Whether `g` has a cycle shorter than `limit` through at least two S-vertices.
fn has_short_feasible_cycle(g: &BipartiteGraph, s: &SVertexSet, limit: usize) -> bool {
    fn rec(g: &BipartiteGraph, s: &SVertexSet, limit: usize, path: &mut Vec<Vertex>) -> bool {
        let last = *path.last().unwrap();
        if path.len() >= 4 && adjacent(g, last, path[0]) && s_count(s, path) >= 2 {
            return true;
        }
        if path.len() + 1 >= limit {
            return false;
        }
        let n = g.n();
        let next: Vec<Vertex> = match last.side {
            Side::X => (0..n).map(y).collect(),
            Side::Y => (0..n).map(x).filter(|v| v.index > path[0].index).collect(),
        };
        for v in next {
            if !path.contains(&v) && adjacent(g, last, v) {
                path.push(v);
                if rec(g, s, limit, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (0..g.n()).any(|i| rec(g, s, limit, &mut vec![x(i)]))
}

fn quad(g: &BipartiteGraph) -> AltCycle {
    AltCycle::new(g, vec![x(0), y(0), x(1), y(1)]).unwrap()
}

fn quad_edges() -> Vec<(usize, usize)> {
    vec![(0, 0), (0, 1), (1, 0), (1, 1)]
}

fn run(id: LemmaId, graph: BipartiteGraph, s: SVertexSet, objects: LemmaObjects) -> (BipartiteGraph, bct::lemmas::LemmaOutcome) {
    let inst = LemmaInstance { id, graph: graph.clone(), s, objects };
    (graph, evaluate(&inst).unwrap())
}

#[test]
fn quadrilateral_and_pair_leave_an_edge() {
    let mut edges = quad_edges();
    edges.extend([(2, 0), (2, 1), (0, 2)]);
    let g = BipartiteGraph::new(3, edges).unwrap();
    let c = quad(&g);
    let (g, out) = run(LemmaId::L2_1, g, SVertexSet::default(), LemmaObjects::QuadAndH { cycle: c, h: HShape::Pair { x: 2, y: 2 } });
    assert_eq!(out.status, LemmaStatus::Witness);
    let Some(LemmaWitness::CycleAndEdge { cycle, edge }) = out.witness else { panic!("{:?}", out.witness) };
    assert_eq!(cycle.len(), 4);
    assert!(is_cycle(&g, cycle.vertices()));
    assert!(g.has_edge(edge.0, edge.1));
    assert!(disjoint(cycle.vertices(), &[x(edge.0), y(edge.1)]));
}

#[test]
fn quadrilateral_and_long_path_give_two_cycles() {
    let mut edges = quad_edges();
    edges.extend([(2, 2), (3, 2), (3, 3), (4, 3), (4, 4)]);
    edges.extend([(2, 0), (2, 1), (0, 2), (1, 2), (3, 0), (0, 4), (1, 4)]);
    let g = BipartiteGraph::new(5, edges).unwrap();
    let h = AltPath::new(&g, vec![x(2), y(2), x(3), y(3), x(4), y(4)]).unwrap();
    let c = quad(&g);
    let (g, out) = run(LemmaId::L2_4, g, SVertexSet::default(), LemmaObjects::QuadAndH { cycle: c, h: HShape::Path(h) });
    assert_eq!(out.status, LemmaStatus::Witness);
    let Some(LemmaWitness::Cycles(cs)) = out.witness else { panic!("{:?}", out.witness) };
    assert_eq!(cs.len(), 2);
    assert!(cs.iter().all(|c| is_cycle(&g, c.vertices())));
    assert!(disjoint(cs[0].vertices(), cs[1].vertices()));
}

#[test]
fn endvertex_missing_the_quadrilateral_is_reported() {
    let mut edges = quad_edges();
    edges.extend([(2, 2), (3, 2), (3, 3)]);
    edges.extend([(0, 2), (1, 2), (3, 0), (3, 1), (0, 3), (1, 3)]);
    let g = BipartiteGraph::new(4, edges).unwrap();
    // x2 has a single neighbour, so the eight vertices cannot split into two quadrilaterals.
    assert_eq!((0..4).filter(|&j| g.has_edge(2, j)).count(), 1);
    let h = AltPath::new(&g, vec![x(2), y(2), x(3), y(3)]).unwrap();
    let c = quad(&g);
    let (_, out) = run(LemmaId::L2_3, g, SVertexSet::default(), LemmaObjects::QuadAndH { cycle: c, h: HShape::Path(h) });
    assert_eq!(out.status, LemmaStatus::Witness);
    assert!(matches!(out.witness, Some(LemmaWitness::Endvertex(v)) if v == x(2)));
}

fn lemma3_instance(extra: bool) -> LemmaInstance {
    let mut edges = quad_edges();
    edges.extend([(2, 2), (3, 2), (3, 3), (4, 3), (4, 4)]);
    edges.extend([(2, 0), (2, 1), (0, 2), (1, 2), (0, 4), (1, 4)]);
    if extra {
        edges.push((3, 0));
    }
    let g = BipartiteGraph::new(5, edges).unwrap();
    let s = SVertexSet::whole_x(5);
    let cycle = quad(&g);
    let path = AltPath::new(&g, vec![x(2), y(2), x(3), y(3), x(4), y(4)]).unwrap();
    LemmaInstance { id: LemmaId::L3, graph: g, s, objects: LemmaObjects::CycleAndPath { cycle, path } }
}

#[test]
fn quadrilateral_and_path_split_into_two_feasible_cycles() {
    let inst = lemma3_instance(true);
    let out = evaluate(&inst).unwrap();
    assert_eq!(out.status, LemmaStatus::Witness);
    let Some(LemmaWitness::Cycles(cs)) = out.witness else { panic!("{:?}", out.witness) };
    assert_eq!(cs.len(), 2);
    for c in &cs {
        assert!(is_cycle(&inst.graph, c.vertices()));
        assert!(s_count(&inst.s, c.vertices()) >= 2);
    }
    assert!(disjoint(cs[0].vertices(), cs[1].vertices()));
    assert!(CycleSystem::new(&inst.graph, &inst.s, cs).is_ok());
}

#[test]
fn quadrilateral_and_path_one_edge_short() {
    let inst = lemma3_instance(false);
    assert!(!check_hypothesis(&inst).unwrap());
}

#[test]
fn edge_beside_quadrilateral_is_hamiltonian() {
    let mut edges = quad_edges();
    edges.extend([(2, 2), (2, 0), (2, 1), (0, 2)]);
    let g = BipartiteGraph::new(3, edges).unwrap();
    let c = quad(&g);
    let path = AltPath::new(&g, vec![x(2), y(2)]).unwrap();
    let (g, out) = run(LemmaId::L4_1, g, SVertexSet::default(), LemmaObjects::CycleAndPath { cycle: c, path });
    assert_eq!(out.status, LemmaStatus::Witness);
    let Some(LemmaWitness::Hamiltonian(h)) = out.witness else { panic!("{:?}", out.witness) };
    assert_eq!(h.len(), 6);
    assert!(is_cycle(&g, h.vertices()));
}

#[test]
fn complete_two_by_two_path_closes() {
    let g = BipartiteGraph::complete(2).unwrap();
    let path = AltPath::new(&g, vec![x(0), y(0), x(1), y(1)]).unwrap();
    // Both endpoints see both vertices of the other side: e = 4.
    let (g, out) = run(LemmaId::L4_2, g, SVertexSet::default(), LemmaObjects::Path { path });
    assert_eq!(out.status, LemmaStatus::Witness);
    let Some(LemmaWitness::Hamiltonian(h)) = out.witness else { panic!("{:?}", out.witness) };
    assert!(is_cycle(&g, h.vertices()) && h.len() == 4);
}

#[test]
fn path_one_below_threshold_is_not_a_hypothesis() {
    let edges = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 1)];
    let g = BipartiteGraph::new(3, edges).unwrap();
    // y2 is a pendant vertex, so no hamiltonian cycle exists.
    assert_eq!((0..3).filter(|&i| g.has_edge(i, 2)).count(), 1);
    let path = AltPath::new(&g, vec![x(0), y(0), x(1), y(1), x(2), y(2)]).unwrap();
    let inst = LemmaInstance { id: LemmaId::L4_2, graph: g, s: SVertexSet::default(), objects: LemmaObjects::Path { path } };
    assert_eq!(evaluate(&inst).unwrap().status, LemmaStatus::HypothesisFails);
}

#[test]
fn induced_path_has_the_stated_degrees() {
    let g = BipartiteGraph::new(2, [(0, 0), (1, 0), (1, 1)]).unwrap();
    let s = SVertexSet::whole_x(2);
    let path = AltPath::new(&g, vec![x(0), y(0), x(1), y(1)]).unwrap();
    let (_, out) = run(LemmaId::L5, g, s.clone(), LemmaObjects::Path { path });
    assert_eq!(out.status, LemmaStatus::Witness);

    let g = BipartiteGraph::complete(2).unwrap();
    assert!(has_short_feasible_cycle(&g, &s, 5));
    let path = AltPath::new(&g, vec![x(0), y(0), x(1), y(1)]).unwrap();
    let (_, out) = run(LemmaId::L5, g, s, LemmaObjects::Path { path });
    assert_eq!(out.status, LemmaStatus::HypothesisFails);
}

fn hexagon_with_pair(chord: bool) -> LemmaInstance {
    let mut edges = vec![(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2), (3, 3)];
    if chord {
        edges.push((0, 1));
    }
    let g = BipartiteGraph::new(4, edges).unwrap();
    let s = SVertexSet::new(4, [0, 1, 3]).unwrap();
    let cycle = AltCycle::new(&g, vec![x(0), y(0), x(1), y(1), x(2), y(2)]).unwrap();
    LemmaInstance { id: LemmaId::L1_1, graph: g, s, objects: LemmaObjects::CycleAndPair { cycle, x: 3, y: 3 } }
}

#[test]
fn minimality_follows_the_shortest_feasible_cycle() {
    let lone = hexagon_with_pair(false);
    assert!(!has_short_feasible_cycle(&lone.graph, &lone.s, 6));
    assert!(check_hypothesis(&lone).unwrap());

    let chorded = hexagon_with_pair(true);
    assert!(has_short_feasible_cycle(&chorded.graph, &chorded.s, 6));
    assert!(!check_hypothesis(&chorded).unwrap());
}

#[test]
fn two_quadrilaterals_with_two_s_vertices_each_are_not_a_hypothesis() {
    let g = BipartiteGraph::new(4, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]).unwrap();
    let s = SVertexSet::whole_x(4);
    let a = AltCycle::new(&g, vec![x(0), y(0), x(1), y(1)]).unwrap();
    let b = AltCycle::new(&g, vec![x(2), y(2), x(3), y(3)]).unwrap();
    let system = CycleSystem::new(&g, &s, vec![a, b]).unwrap();
    let (_, out) = run(LemmaId::L6, g, s, LemmaObjects::System { system });
    assert_eq!(out.status, LemmaStatus::HypothesisFails);
}

/// The octagon with `S_C = {x_j, x_{j+2}}`, `d_C(y) = 3`, `d_C(x) = 2` never
/// has `C` as a minimal system: some shorter feasible cycle always appears.
#[test]
fn octagon_tight_case_is_never_minimal() {
    let ring = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (0, 3)];
    let chords: Vec<(usize, usize)> =
        (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|e| !ring.contains(e)).collect();
    assert_eq!(chords.len(), 8);
    let mut checked = 0;
    for missing in 0..4 {
        let s = SVertexSet::new(5, [missing, (missing + 2) % 4, 4]).unwrap();
        for xa in 0..4 {
            for xb in xa + 1..4 {
                for xy in [false, true] {
                    for mask in 0u32..1 << chords.len() {
                        let mut edges: Vec<(usize, usize)> = ring.to_vec();
                        edges.extend((0..chords.len()).filter(|&b| mask >> b & 1 == 1).map(|b| chords[b]));
                        edges.extend((0..4).filter(|&i| i != missing).map(|i| (i, 4)));
                        edges.extend([(4, xa), (4, xb)]);
                        if xy {
                            edges.push((4, 4));
                        }
                        let g = BipartiteGraph::new(5, edges).unwrap();
                        let cycle = AltCycle::new(&g, vec![x(0), y(0), x(1), y(1), x(2), y(2), x(3), y(3)]).unwrap();
                        assert!(has_short_feasible_cycle(&g, &s, 8));
                        let inst = LemmaInstance {
                            id: LemmaId::L1_3,
                            graph: g,
                            s: s.clone(),
                            objects: LemmaObjects::CycleAndPair { cycle, x: 4, y: 4 },
                        };
                        assert!(!check_hypothesis(&inst).unwrap());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_eq!(checked, 4 * 6 * 2 * 256);
}
