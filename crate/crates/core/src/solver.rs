//! Exact search for systems of disjoint feasible cycles.
//!
//! The search is a depth-first backtracking over cycles through an anchor
//! vertex. At every level the anchor is the lowest open S-vertex (or the
//! lowest uncovered X vertex when every vertex must be covered); cycles
//! through it are generated shortest first and, within a length, in
//! lexicographic order of their vertex sequence. When cycles need not cover
//! `S`, the anchor may instead be dropped. Every system is therefore visited
//! exactly once, so `None` is a proof of non-existence.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cycle::{system_key, AltCycle, CycleSystem, SystemKey};
use crate::graph::{bits, low_bits, matching_size, BipartiteGraph, SVertexSet, Vertex, VertexSet};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `k` disjoint feasible cycles.
    Feasible,
    /// `k` disjoint feasible cycles covering `S`.
    Cyclable,
    /// `k` disjoint feasible cycles covering `V(G)`.
    TwoFactor,
    /// `k` disjoint cycles covering `S` whose S-counts are the given parts.
    Partition,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Feasible, Mode::Cyclable, Mode::TwoFactor, Mode::Partition];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Feasible => "feasible",
            Mode::Cyclable => "cyclable",
            Mode::TwoFactor => "two-factor",
            Mode::Partition => "partition",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| SolveError::UnknownMode(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("partition mode needs exactly k = {k} parts, got {got}")]
    PartCount { k: usize, got: usize },
    #[error("every part must be at least 2")]
    SmallPart,
    #[error("parts sum to {sum} but |S| = {s}")]
    PartSum { sum: usize, s: usize },
    #[error("parts are only meaningful in partition mode")]
    UnexpectedParts,
    #[error("unknown mode `{0}`")]
    UnknownMode(String),
    #[error("the naive oracle is limited to n <= {max}, got n = {n}")]
    TooLarge { n: usize, max: usize },
    #[error("S is not a subset of X")]
    BadS,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveRequest {
    pub mode: Mode,
    pub k: usize,
    pub parts: Vec<usize>,
    pub budget: u64,
    /// Carried into reports. The search itself is deterministic and draws no
    /// random numbers.
    pub seed: u64,
    /// Feasibility bounds (S-count, degree, matching). Turning them off
    /// leaves a plain exhaustive search.
    pub prune: bool,
}

impl SolveRequest {
    pub fn new(mode: Mode, k: usize) -> Self {
        SolveRequest { mode, k, parts: Vec::new(), budget: DEFAULT_BUDGET, seed: 0, prune: true }
    }

    pub fn partition(parts: Vec<usize>) -> Self {
        SolveRequest { k: parts.len(), parts, ..SolveRequest::new(Mode::Partition, 0) }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }

    pub fn validate(&self, s: &SVertexSet) -> Result<(), SolveError> {
        if self.k == 0 {
            return Err(SolveError::ZeroK);
        }
        if self.budget == 0 {
            return Err(SolveError::ZeroBudget);
        }
        if self.mode == Mode::Partition {
            if self.parts.len() != self.k {
                return Err(SolveError::PartCount { k: self.k, got: self.parts.len() });
            }
            if self.parts.iter().any(|&p| p < 2) {
                return Err(SolveError::SmallPart);
            }
            let sum: usize = self.parts.iter().sum();
            if sum != s.len() {
                return Err(SolveError::PartSum { sum, s: s.len() });
            }
        } else if !self.parts.is_empty() {
            return Err(SolveError::UnexpectedParts);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolveStatus {
    Found,
    None,
    BudgetExceeded,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Found => "FOUND",
            SolveStatus::None => "NONE",
            SolveStatus::BudgetExceeded => "BUDGET_EXCEEDED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub witness: Option<CycleSystem>,
    pub nodes_expanded: u64,
}

impl SolveOutcome {
    pub fn found(&self) -> bool {
        self.status == SolveStatus::Found
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cover {
    Nothing,
    S,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum PerCycle {
    AtLeastTwo,
    ExactlyTwo,
    /// Multiplicity of each admissible S-count.
    Parts(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Goal {
    k: usize,
    cover: Cover,
    per_cycle: PerCycle,
}

impl Goal {
    fn from_request(req: &SolveRequest) -> Goal {
        let (cover, per_cycle) = match req.mode {
            Mode::Feasible => (Cover::Nothing, PerCycle::AtLeastTwo),
            Mode::Cyclable => (Cover::S, PerCycle::AtLeastTwo),
            Mode::TwoFactor => (Cover::All, PerCycle::AtLeastTwo),
            Mode::Partition => {
                let max = req.parts.iter().copied().max().unwrap_or(0);
                let mut counts = vec![0u32; max + 1];
                for &p in &req.parts {
                    counts[p] += 1;
                }
                (Cover::S, PerCycle::Parts(counts))
            }
        };
        Goal { k: req.k, cover, per_cycle }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    Abort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Branch {
    /// Cycles of this length whose second vertex is `y_first`.
    Cycle { len: usize, y_first: usize },
    /// The anchor lies on no cycle.
    Drop,
}

#[derive(Clone)]
struct Best {
    key: SystemKey,
    encoding: Vec<Vec<Vertex>>,
    cycles: Vec<AltCycle>,
}

#[derive(Clone)]
struct Search<'a> {
    g: &'a BipartiteGraph,
    s: u64,
    goal: &'a Goal,
    prune: bool,
    minimize: bool,
    budget: u64,
    nodes: u64,
    cancel: Option<(&'a AtomicUsize, usize)>,
    avail: VertexSet,
    open_s: u64,
    parts_left: Vec<u32>,
    cycles: Vec<AltCycle>,
    cur_len: usize,
    cur_s: usize,
    path: Vec<Vertex>,
    /// S-vertices with two available neighbours, fixed per branch.
    live: u64,
    found: Option<Vec<AltCycle>>,
    best: Option<Best>,
}

fn popcount(m: u64) -> usize {
    m.count_ones() as usize
}

impl<'a> Search<'a> {
    fn new(g: &'a BipartiteGraph, s: &SVertexSet, goal: &'a Goal, prune: bool, budget: u64) -> Self {
        let parts_left = match &goal.per_cycle {
            PerCycle::Parts(c) => c.clone(),
            _ => Vec::new(),
        };
        let avail = VertexSet::all(g.n());
        Search {
            g,
            s: s.mask() & avail.x,
            goal,
            prune,
            minimize: false,
            budget,
            nodes: 0,
            cancel: None,
            avail,
            open_s: s.mask() & avail.x,
            parts_left,
            cycles: Vec::new(),
            cur_len: 0,
            cur_s: 0,
            path: Vec::with_capacity(2 * g.n()),
            live: 0,
            found: None,
            best: None,
        }
    }

    /// Counts one node; true when the search must stop.
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return true;
        }
        if self.nodes & 0xfff == 0 {
            if let Some((flag, me)) = self.cancel {
                if flag.load(Ordering::Relaxed) < me {
                    return true;
                }
            }
        }
        false
    }

    fn k_rem(&self) -> usize {
        self.goal.k - self.cycles.len()
    }

    fn anchor(&self) -> Option<usize> {
        let pool = match self.goal.cover {
            Cover::All => self.avail.x,
            _ => self.open_s,
        };
        (pool != 0).then(|| pool.trailing_zeros() as usize)
    }

    /// Open S-vertices that can still lie on a cycle.
    fn live_s(&self) -> u64 {
        bits(self.open_s)
            .filter(|&x| popcount(self.g.x_row(x) & self.avail.y) >= 2)
            .fold(0, |m, x| m | 1 << x)
    }

    /// Necessary conditions for completing the remaining `k_rem` cycles.
    fn bounds_hold(&self, k_rem: usize) -> bool {
        if self.minimize {
            if let Some(best) = &self.best {
                let lb = SystemKey {
                    total_length: self.cur_len + 4 * k_rem,
                    total_s_count: self.cur_s + 2 * k_rem,
                };
                if lb > best.key {
                    return false;
                }
            }
        }
        if !self.prune {
            return true;
        }
        let need = 2 * k_rem;
        if popcount(self.live_s()) < need
            || popcount(self.avail.x) < need
            || popcount(self.avail.y) < need
        {
            return false;
        }
        let g = self.g;
        match self.goal.cover {
            Cover::Nothing => true,
            Cover::S => {
                if bits(self.open_s).any(|x| popcount(g.x_row(x) & self.avail.y) < 2) {
                    return false;
                }
                matching_size(g, self.open_s, self.avail.y) == popcount(self.open_s)
            }
            Cover::All => {
                if popcount(self.avail.x) != popcount(self.avail.y) {
                    return false;
                }
                if bits(self.avail.x).any(|x| popcount(g.x_row(x) & self.avail.y) < 2)
                    || bits(self.avail.y).any(|y| popcount(g.y_col(y) & self.avail.x) < 2)
                {
                    return false;
                }
                matching_size(g, self.avail.x, self.avail.y) == popcount(self.avail.x)
            }
        }
    }

    /// Admissible S-count range for the next cycle.
    fn s_range(&self, k_rem: usize) -> (usize, usize) {
        let open = popcount(self.open_s);
        let (mut lo, mut hi) = match &self.goal.per_cycle {
            PerCycle::AtLeastTwo => (2, usize::MAX),
            PerCycle::ExactlyTwo => (2, 2),
            PerCycle::Parts(_) if !self.prune => (2, usize::MAX),
            PerCycle::Parts(left) => {
                let lo = left.iter().position(|&c| c > 0).unwrap_or(2);
                let hi = left.iter().rposition(|&c| c > 0).unwrap_or(0);
                (lo, hi)
            }
        };
        if self.prune {
            hi = hi.min(open.saturating_sub(2 * (k_rem - 1)));
            if k_rem == 1 && self.goal.cover != Cover::Nothing {
                lo = lo.max(open);
            }
        }
        lo = lo.max(2);
        (lo, hi)
    }

    fn lengths(&self, k_rem: usize, s_lo: usize) -> Vec<usize> {
        let ax = popcount(self.avail.x);
        let ay = popcount(self.avail.y);
        let mut max = 2 * ax.min(ay);
        let mut min = 4;
        if self.prune {
            max = max.saturating_sub(4 * (k_rem - 1));
            min = min.max(2 * s_lo);
            if self.goal.cover == Cover::All && k_rem == 1 {
                min = min.max(self.avail.len());
            }
        }
        if self.minimize {
            if let Some(best) = &self.best {
                let room = best.key.total_length.saturating_sub(self.cur_len + 4 * (k_rem - 1));
                max = max.min(room);
            }
        }
        (min..=max).step_by(2).collect()
    }

    fn branches(&self, anchor: usize) -> Vec<Branch> {
        let k_rem = self.k_rem();
        let (s_lo, s_hi) = self.s_range(k_rem);
        let mut out = Vec::new();
        if s_lo <= s_hi {
            let firsts = self.g.x_row(anchor) & self.avail.y;
            for len in self.lengths(k_rem, s_lo) {
                out.extend(bits(firsts).map(|y_first| Branch::Cycle { len, y_first }));
            }
        }
        if self.goal.cover == Cover::Nothing {
            out.push(Branch::Drop);
        }
        out
    }

    fn level(&mut self) -> Flow {
        if self.tick() {
            return Flow::Abort;
        }
        let k_rem = self.k_rem();
        if k_rem == 0 {
            return self.complete();
        }
        if !self.bounds_hold(k_rem) {
            return Flow::Continue;
        }
        let Some(anchor) = self.anchor() else {
            return Flow::Continue;
        };
        for b in self.branches(anchor) {
            match self.run_branch(anchor, b) {
                Flow::Continue => {}
                other => return other,
            }
        }
        Flow::Continue
    }

    fn run_branch(&mut self, anchor: usize, branch: Branch) -> Flow {
        match branch {
            Branch::Drop => {
                let bit = 1u64 << anchor;
                self.open_s &= !bit;
                self.avail.x &= !bit;
                let flow = self.level();
                self.open_s |= bit;
                self.avail.x |= bit;
                flow
            }
            Branch::Cycle { len, y_first } => {
                let (s_lo, s_hi) = self.s_range(self.k_rem());
                if self.tick() {
                    return Flow::Abort;
                }
                let a = Vertex::x(anchor);
                let first = Vertex::y(y_first);
                self.path.clear();
                self.path.push(a);
                self.path.push(first);
                let used = VertexSet { x: 1 << anchor, y: 1 << y_first };
                let s0 = usize::from(self.s & (1 << anchor) != 0);
                self.live = if self.prune { self.live_s() } else { u64::MAX };
                let flow = self.extend(anchor, len, used, s0, 1, (s_lo, s_hi));
                self.path.truncate(0);
                flow
            }
        }
    }

    /// Extends the current path; the last vertex is always on the Y side
    /// when this is entered.
    fn extend(
        &mut self,
        anchor: usize,
        len: usize,
        used: VertexSet,
        s_on: usize,
        x_on: usize,
        (s_lo, s_hi): (usize, usize),
    ) -> Flow {
        let last = *self.path.last().expect("path holds the anchor");
        debug_assert_eq!(last.side, crate::graph::Side::Y);
        if self.path.len() == len {
            return self.close(s_on);
        }
        let x_slots = len / 2 - x_on;
        let next_x = self.g.y_col(last.index) & self.avail.x & !used.x;
        for x in bits(next_x) {
            let s_next = s_on + usize::from(self.s & (1 << x) != 0);
            let reach = popcount(self.live & !used.x & !(1 << x)).min(x_slots - 1);
            if s_next > s_hi || s_next + reach < s_lo {
                continue;
            }
            if self.tick() {
                return Flow::Abort;
            }
            let mut ys = self.g.x_row(x) & self.avail.y & !used.y;
            if self.path.len() + 2 == len {
                // The next Y vertex closes the cycle: it must see the anchor
                // and exceed the first Y vertex (one orientation per cycle).
                let y_first = self.path[1].index;
                ys &= self.g.x_row(anchor) & !low_bits(y_first + 1);
            }
            self.path.push(Vertex::x(x));
            for y in bits(ys) {
                if self.tick() {
                    return Flow::Abort;
                }
                self.path.push(Vertex::y(y));
                let used2 = VertexSet { x: used.x | 1 << x, y: used.y | 1 << y };
                let flow = self.extend(anchor, len, used2, s_next, x_on + 1, (s_lo, s_hi));
                self.path.pop();
                if flow != Flow::Continue {
                    self.path.pop();
                    return flow;
                }
            }
            self.path.pop();
        }
        Flow::Continue
    }

    fn close(&mut self, s_count: usize) -> Flow {
        let ok = match &self.goal.per_cycle {
            PerCycle::AtLeastTwo => s_count >= 2,
            PerCycle::ExactlyTwo => s_count == 2,
            PerCycle::Parts(_) => self.parts_left.get(s_count).is_some_and(|&c| c > 0),
        };
        if !ok {
            return Flow::Continue;
        }
        let cycle = AltCycle::from_trusted(self.path.clone());
        let set = cycle.vertex_set();
        let saved_path = std::mem::take(&mut self.path);
        self.avail = self.avail.minus(set);
        self.open_s &= !set.x;
        if let PerCycle::Parts(_) = self.goal.per_cycle {
            self.parts_left[s_count] -= 1;
        }
        self.cur_len += cycle.len();
        self.cur_s += s_count;
        self.cycles.push(cycle);

        let flow = self.level();

        let cycle = self.cycles.pop().expect("pushed above");
        self.cur_len -= cycle.len();
        self.cur_s -= s_count;
        if let PerCycle::Parts(_) = self.goal.per_cycle {
            self.parts_left[s_count] += 1;
        }
        self.avail = self.avail.union(set);
        self.open_s |= set.x & self.s;
        self.path = saved_path;
        flow
    }

    fn complete(&mut self) -> Flow {
        let ok = match self.goal.cover {
            Cover::Nothing => true,
            Cover::S => self.open_s == 0,
            Cover::All => self.avail.is_empty(),
        };
        if !ok {
            return Flow::Continue;
        }
        if !self.minimize {
            self.found = Some(self.cycles.clone());
            return Flow::Stop;
        }
        let key = SystemKey { total_length: self.cur_len, total_s_count: self.cur_s };
        let sys = CycleSystem::from_trusted(self.cycles.clone());
        let encoding = sys.canonical_encoding();
        let better = match &self.best {
            None => true,
            Some(b) => (key, &encoding) < (b.key, &b.encoding),
        };
        if better {
            self.best = Some(Best { key, encoding, cycles: self.cycles.clone() });
        }
        Flow::Continue
    }
}

/// Worker count from `BCT_THREADS`, falling back to the available parallelism.
pub fn worker_count() -> usize {
    std::env::var("BCT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn first_hit(g: &BipartiteGraph, s: &SVertexSet, goal: &Goal, prune: bool, budget: u64, workers: usize) -> SolveOutcome {
    let mut root = Search::new(g, s, goal, prune, budget);
    let exceeded = |nodes: u64| SolveOutcome {
        status: SolveStatus::BudgetExceeded,
        witness: None,
        nodes_expanded: nodes.min(budget),
    };
    let none = |nodes: u64| SolveOutcome { status: SolveStatus::None, witness: None, nodes_expanded: nodes };

    if root.tick() {
        return exceeded(root.nodes);
    }
    if root.k_rem() == 0 {
        return match root.complete() {
            Flow::Stop => SolveOutcome {
                status: SolveStatus::Found,
                witness: Some(CycleSystem::empty()),
                nodes_expanded: root.nodes,
            },
            _ => none(root.nodes),
        };
    }
    let k_rem = root.k_rem();
    if !root.bounds_hold(k_rem) {
        return none(root.nodes);
    }
    let Some(anchor) = root.anchor() else {
        return none(root.nodes);
    };
    let branches = root.branches(anchor);
    let base = root.nodes;

    // Each root branch is searched from the same root state; the merged
    // result is the one a sequential search would report.
    let results: Vec<(Flow, u64, Option<Vec<AltCycle>>)> = if workers <= 1 || branches.len() <= 1 {
        let mut out = Vec::with_capacity(branches.len());
        let mut spent = base;
        for &b in &branches {
            let mut search = root.clone();
            search.nodes = 0;
            search.budget = budget - spent.min(budget);
            let flow = search.run_branch(anchor, b);
            spent += search.nodes;
            let stop = flow != Flow::Continue;
            out.push((flow, search.nodes, search.found.take()));
            if stop {
                break;
            }
        }
        out
    } else {
        let winner = AtomicUsize::new(usize::MAX);
        let run = || {
            branches
                .par_iter()
                .enumerate()
                .map(|(i, &b)| {
                    if winner.load(Ordering::Relaxed) < i {
                        return (Flow::Abort, 0, None);
                    }
                    let mut search = root.clone();
                    search.nodes = 0;
                    search.budget = budget - base.min(budget);
                    search.cancel = Some((&winner, i));
                    let flow = search.run_branch(anchor, b);
                    if flow == Flow::Stop {
                        winner.fetch_min(i, Ordering::Relaxed);
                    }
                    (flow, search.nodes, search.found.take())
                })
                .collect()
        };
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    };

    let mut spent = base;
    for (flow, nodes, found) in results {
        spent += nodes;
        if spent > budget {
            return exceeded(budget);
        }
        match flow {
            Flow::Continue => {}
            Flow::Stop => {
                return SolveOutcome {
                    status: SolveStatus::Found,
                    witness: found.map(CycleSystem::from_trusted),
                    nodes_expanded: spent,
                }
            }
            Flow::Abort => return exceeded(budget),
        }
    }
    none(spent)
}

/// Decides the request exactly. `NONE` is returned only after the whole
/// search space has been exhausted.
pub fn solve(g: &BipartiteGraph, s: &SVertexSet, req: &SolveRequest) -> Result<SolveOutcome, SolveError> {
    solve_with_workers(g, s, req, 1)
}

/// As [`solve`], splitting the root branching over `workers` threads. The
/// outcome, witness and node count do not depend on `workers`.
pub fn solve_with_workers(
    g: &BipartiteGraph,
    s: &SVertexSet,
    req: &SolveRequest,
    workers: usize,
) -> Result<SolveOutcome, SolveError> {
    req.validate(s)?;
    SVertexSet::from_mask(g.n(), s.mask()).map_err(|_| SolveError::BadS)?;
    let goal = Goal::from_request(req);
    Ok(first_hit(g, s, &goal, req.prune, req.budget, workers))
}

/// Which clause of the "moreover" conclusion a witness satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoreoverBranch {
    CoversAll,
    ExactlyTwo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoreoverOutcome {
    pub status: SolveStatus,
    /// `k` disjoint feasible cycles covering `V(G)`.
    pub covers_all: Option<CycleSystem>,
    /// `k` disjoint cycles with exactly two S-vertices each.
    pub exactly_two: Option<CycleSystem>,
    pub nodes_expanded: u64,
}

impl MoreoverOutcome {
    pub fn branch(&self) -> Option<MoreoverBranch> {
        if self.covers_all.is_some() {
            Some(MoreoverBranch::CoversAll)
        } else if self.exactly_two.is_some() {
            Some(MoreoverBranch::ExactlyTwo)
        } else {
            None
        }
    }
}

/// Searches both clauses independently: `k` disjoint feasible cycles
/// covering `V(G)`, and `k` disjoint cycles each with exactly two S-vertices.
/// Found when either exists.
pub fn solve_theorem3_moreover(
    g: &BipartiteGraph,
    s: &SVertexSet,
    k: usize,
    budget: u64,
) -> Result<MoreoverOutcome, SolveError> {
    let req = SolveRequest::new(Mode::TwoFactor, k).with_budget(budget);
    let cover = solve(g, s, &req)?;
    let pairs_goal = Goal { k, cover: Cover::Nothing, per_cycle: PerCycle::ExactlyTwo };
    let pairs = first_hit(g, s, &pairs_goal, true, budget, 1);
    let nodes = cover.nodes_expanded + pairs.nodes_expanded;
    let status = if cover.found() || pairs.found() {
        SolveStatus::Found
    } else if cover.status == SolveStatus::BudgetExceeded || pairs.status == SolveStatus::BudgetExceeded {
        SolveStatus::BudgetExceeded
    } else {
        SolveStatus::None
    };
    Ok(MoreoverOutcome { status, covers_all: cover.witness, exactly_two: pairs.witness, nodes_expanded: nodes })
}

/// A minimal S system: `k` disjoint feasible cycles minimising total length,
/// then total S-count, then the sorted canonical cycle sequences.
/// `Ok(None)` when `G` has no `k` disjoint feasible cycles. `k = 0` yields
/// the empty system.
pub fn find_minimal_system(
    g: &BipartiteGraph,
    s: &SVertexSet,
    k: usize,
    budget: u64,
) -> Result<MinimalOutcome, SolveError> {
    if budget == 0 {
        return Err(SolveError::ZeroBudget);
    }
    if k == 0 {
        return Ok(MinimalOutcome { status: SolveStatus::Found, system: Some(CycleSystem::empty()), nodes_expanded: 0 });
    }
    let goal = Goal { k, cover: Cover::Nothing, per_cycle: PerCycle::AtLeastTwo };
    let mut search = Search::new(g, s, &goal, true, budget);
    search.minimize = true;
    let flow = search.level();
    let nodes = search.nodes.min(budget);
    if flow == Flow::Abort {
        return Ok(MinimalOutcome { status: SolveStatus::BudgetExceeded, system: None, nodes_expanded: nodes });
    }
    Ok(match search.best {
        Some(best) => MinimalOutcome {
            status: SolveStatus::Found,
            system: Some(CycleSystem::from_trusted(best.cycles)),
            nodes_expanded: nodes,
        },
        None => MinimalOutcome { status: SolveStatus::None, system: None, nodes_expanded: nodes },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalOutcome {
    pub status: SolveStatus,
    pub system: Option<CycleSystem>,
    pub nodes_expanded: u64,
}

impl MinimalOutcome {
    pub fn key(&self, s: &SVertexSet) -> Option<SystemKey> {
        self.system.as_ref().map(|sys| system_key(sys, s))
    }
}

/// Checks that `sys` answers `req`: disjoint feasible cycles plus the mode's
/// covering or S-count requirement.
pub fn witness_satisfies(g: &BipartiteGraph, s: &SVertexSet, req: &SolveRequest, sys: &CycleSystem) -> bool {
    if sys.validate(g, s).is_err() || sys.len() != req.k {
        return false;
    }
    let covered = sys.vertex_set();
    match req.mode {
        Mode::Feasible => true,
        Mode::Cyclable => s.mask() & !covered.x == 0,
        Mode::TwoFactor => covered == VertexSet::all(g.n()),
        Mode::Partition => {
            let mut got: Vec<usize> = sys.cycles().iter().map(|c| c.s_count(s)).collect();
            let mut want = req.parts.clone();
            got.sort_unstable();
            want.sort_unstable();
            s.mask() & !covered.x == 0 && got == want
        }
    }
}

/// For a partition witness, the part realised by each cycle in order.
pub fn partition_assignment(s: &SVertexSet, sys: &CycleSystem) -> Vec<usize> {
    sys.cycles().iter().map(|c| c.s_count(s)).collect()
}
