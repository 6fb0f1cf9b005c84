//! Seeded and exhaustive sweeps producing [`VerificationReport`]s.
//!
//! Samples are drawn in fixed-size chunks, each draw from its own generator
//! ([`crate::rng::stream`]); chunks are checked in parallel and merged in
//! draw order, so a report depends only on its inputs and the seed, never on
//! the number of workers.

use std::collections::{BTreeMap, HashSet};
use std::hash::Hash;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::constructions::gen_random_attempts;
use crate::graph::{sigma11, BipartiteGraph, SVertexSet};
use crate::lemmas::{evaluate, sample_instance, Branch, LemmaId, LemmaStatus, LemmaWitness};
use crate::oracle::{naive_oracle, ORACLE_MAX_N};
use crate::rng;
use crate::solver::{solve, solve_theorem3_moreover, witness_satisfies, Mode, SolveRequest, SolveStatus};

/// Largest half-order for exhaustive theorem sweeps.
pub const EXHAUSTIVE_MAX_N: usize = 5;
/// Largest half-order for conjecture searches.
pub const SEARCH_MAX_N: usize = ORACLE_MAX_N;
/// Draws per parallel chunk.
const CHUNK: u64 = 256;
/// Graphs per parallel chunk in exhaustive sweeps.
const EXHAUSTIVE_CHUNK: u64 = 1 << 12;
/// Rejection draws per sample before the sample is skipped.
const ATTEMPTS: u32 = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SweepError {
    #[error("exhaustive sweeps are limited to n <= {EXHAUSTIVE_MAX_N}, got {0}")]
    ExhaustiveTooLarge(usize),
    #[error("searches are limited to n <= {SEARCH_MAX_N}, got {0}")]
    SearchTooLarge(usize),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("no n in {lo}..={hi} admits the hypotheses")]
    EmptyRange { lo: usize, hi: usize },
    #[error("n = {n} is too small: at least {min} S-vertices are required")]
    SmallN { n: usize, min: usize },
    #[error("samples must be at least 1")]
    ZeroSamples,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub target: String,
    pub parameters: BTreeMap<String, Value>,
    pub instances_checked: u64,
    pub statuses: BTreeMap<String, u64>,
    pub failures: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<BTreeMap<String, BTreeMap<String, u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<bool>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl VerificationReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status(&self, name: &str) -> u64 {
        self.statuses.get(name).copied().unwrap_or(0)
    }
}

/// Shared sweep settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    pub budget: u64,
    pub workers: usize,
    /// Record wall-clock time in the report (which then varies between runs).
    pub timings: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { seed: 0, budget: crate::solver::DEFAULT_BUDGET, workers: 1, timings: false }
    }
}

fn in_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Full serialisation of `(G, S)` with 1-based indices.
pub fn instance_json(g: &BipartiteGraph, s: &SVertexSet) -> Value {
    json!({
        "n": g.n(),
        "s": s.members().map(|i| i + 1).collect::<Vec<_>>(),
        "edges": g.edges().map(|(x, y)| [x + 1, y + 1]).collect::<Vec<_>>(),
    })
}

fn graph_key(g: &BipartiteGraph, s: &SVertexSet) -> (Vec<u64>, u64) {
    ((0..g.n()).map(|i| g.x_row(i)).collect(), s.mask())
}

/// One checked sample: its status name, optional failure record and
/// optional breakdown tag.
struct Checked {
    status: &'static str,
    failure: Option<Value>,
    tag: Option<&'static str>,
}

#[derive(Default)]
struct Tally {
    checked: u64,
    statuses: BTreeMap<String, u64>,
    failures: Vec<Value>,
    tags: BTreeMap<String, u64>,
}

impl Tally {
    fn add(&mut self, c: Checked) {
        self.checked += 1;
        *self.statuses.entry(c.status.to_string()).or_default() += 1;
        if let Some(f) = c.failure {
            self.failures.push(f);
        }
        if let Some(t) = c.tag {
            *self.tags.entry(t.to_string()).or_default() += 1;
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        for (k, v) in other.statuses {
            *self.statuses.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
        for (k, v) in other.tags {
            *self.tags.entry(k).or_default() += v;
        }
    }
}

/// Draws samples `0, 1, 2, …` until `samples` distinct ones have been
/// checked or `max_draws` is reached. `draw` returns `None` for a draw that
/// yields no instance; `check` returns `None` for an instance that does not
/// meet the hypotheses. Returns the tally, the number of draws and the
/// number of draws rejected by `check`.
fn sample_distinct<K, I, D, C>(samples: u64, max_draws: u64, workers: usize, draw: D, check: C) -> (Tally, u64, u64)
where
    K: Hash + Eq + Send,
    I: Send,
    D: Fn(u64) -> Option<(K, I)> + Sync + Send,
    C: Fn(&I) -> Option<Checked> + Sync + Send,
{
    in_pool(workers, || {
        let mut tally = Tally::default();
        let mut seen = HashSet::new();
        let mut draws = 0u64;
        let mut rejected = 0u64;
        while tally.checked < samples && draws < max_draws {
            let end = (draws + CHUNK).min(max_draws);
            let results: Vec<Option<(K, Option<Checked>)>> = (draws..end)
                .into_par_iter()
                .map(|i| draw(i).map(|(k, inst)| (k, check(&inst))))
                .collect();
            for r in results {
                draws += 1;
                let Some((key, checked)) = r else { continue };
                match checked {
                    None => rejected += 1,
                    Some(c) => {
                        if seen.insert(key) {
                            tally.add(c);
                            if tally.checked == samples {
                                break;
                            }
                        }
                    }
                }
            }
        }
        (tally, draws, rejected)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// `|S| >= 2k + 1` and `sigma >= n + 1` give `k` disjoint feasible
    /// cycles, which cover `V(G)` or carry exactly two S-vertices each.
    Three,
    /// `|S| >= 2k + 2` and `sigma >= n + 1` make `G` S-k-cyclable.
    Four,
}

impl Theorem {
    pub fn target(self) -> &'static str {
        match self {
            Theorem::Three => "theorem3",
            Theorem::Four => "theorem4",
        }
    }

    /// Least admissible `|S|`.
    pub fn min_s(self, k: usize) -> usize {
        match self {
            Theorem::Three => 2 * k + 1,
            Theorem::Four => 2 * k + 2,
        }
    }
}

fn failure_record(g: &BipartiteGraph, s: &SVertexSet, k: usize, check: &str, status: &str) -> Value {
    let mut v = instance_json(g, s);
    let obj = v.as_object_mut().expect("object");
    obj.insert("k".into(), json!(k));
    obj.insert("check".into(), json!(check));
    obj.insert("status".into(), json!(status));
    v
}

/// Checks one hypothesis-satisfying instance against the theorem.
fn check_theorem(th: Theorem, g: &BipartiteGraph, s: &SVertexSet, k: usize, budget: u64) -> Checked {
    let fail = |check: &str, status: &'static str| Checked {
        status,
        failure: Some(failure_record(g, s, k, check, status)),
        tag: None,
    };
    let mode = match th {
        Theorem::Three => Mode::Feasible,
        Theorem::Four => Mode::Cyclable,
    };
    let req = SolveRequest::new(mode, k).with_budget(budget);
    let out = solve(g, s, &req).expect("valid request");
    match out.status {
        SolveStatus::Found => {
            let sys = out.witness.as_ref().expect("found carries a witness");
            if !witness_satisfies(g, s, &req, sys) {
                return fail(mode.name(), "INVALID_WITNESS");
            }
        }
        other => return fail(mode.name(), other.name()),
    }
    if th == Theorem::Four {
        return Checked { status: "FOUND", failure: None, tag: None };
    }
    let more = solve_theorem3_moreover(g, s, k, budget).expect("valid request");
    match more.status {
        SolveStatus::Found => {
            let ok_cover = more.covers_all.as_ref().is_none_or(|sys| {
                witness_satisfies(g, s, &SolveRequest::new(Mode::TwoFactor, k), sys)
            });
            let ok_two = more.exactly_two.as_ref().is_none_or(|sys| {
                sys.validate(g, s).is_ok() && sys.len() == k && sys.cycles().iter().all(|c| c.s_count(s) == 2)
            });
            if !(ok_cover && ok_two) {
                return fail("moreover", "INVALID_WITNESS");
            }
            let tag = match (more.covers_all.is_some(), more.exactly_two.is_some()) {
                (true, true) => "both",
                (true, false) => "covers-all",
                _ => "exactly-two",
            };
            Checked { status: "FOUND", failure: None, tag: Some(tag) }
        }
        other => fail("moreover", other.name()),
    }
}

fn s_masks(n: usize, min_size: usize) -> Vec<u64> {
    (0u64..(1 << n)).filter(|m| m.count_ones() as usize >= min_size).collect()
}

fn finish(
    target: String,
    parameters: BTreeMap<String, Value>,
    tally: Tally,
    breakdown: Option<BTreeMap<String, BTreeMap<String, u64>>>,
    counterexample: Option<bool>,
    cfg: &SweepConfig,
    start: Instant,
) -> VerificationReport {
    VerificationReport {
        target,
        parameters,
        instances_checked: tally.checked,
        statuses: tally.statuses,
        failures: tally.failures,
        breakdown,
        counterexample,
        seed: cfg.seed,
        runtime_ms: cfg.timings.then(|| start.elapsed().as_millis() as u64),
    }
}

fn admissible_range(th: Theorem, k: usize, n_min: Option<usize>, n_max: usize) -> Result<(usize, usize), SweepError> {
    if k == 0 {
        return Err(SweepError::ZeroK);
    }
    let least = th.min_s(k);
    let lo = n_min.unwrap_or(least).max(least);
    if lo > n_max {
        return Err(SweepError::EmptyRange { lo, hi: n_max });
    }
    Ok((lo, n_max))
}

/// Every adjacency matrix and every `S` with `|S|` at the threshold or above
/// and `sigma >= n + 1`, for each admissible `n <= n_max`.
pub fn theorem_exhaustive(
    th: Theorem,
    n_min: Option<usize>,
    n_max: usize,
    k: usize,
    cfg: &SweepConfig,
) -> Result<VerificationReport, SweepError> {
    if n_max > EXHAUSTIVE_MAX_N {
        return Err(SweepError::ExhaustiveTooLarge(n_max));
    }
    let (lo, hi) = admissible_range(th, k, n_min, n_max)?;
    let start = Instant::now();
    let mut total = Tally::default();
    let mut breakdown: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
    for n in lo..=hi {
        let masks = s_masks(n, th.min_s(k));
        let graphs = 1u64 << (n * n);
        let chunks = graphs.div_ceil(EXHAUSTIVE_CHUNK);
        let parts: Vec<Tally> = in_pool(cfg.workers, || {
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut t = Tally::default();
                    for idx in c * EXHAUSTIVE_CHUNK..((c + 1) * EXHAUSTIVE_CHUNK).min(graphs) {
                        let g = BipartiteGraph::from_index(n, idx).expect("index in range");
                        for &m in &masks {
                            let s = SVertexSet::from_mask(n, m).expect("mask in range");
                            if sigma11(&g, &s).at_least(n + 1) {
                                t.add(check_theorem(th, &g, &s, k, cfg.budget));
                            }
                        }
                    }
                    t
                })
                .collect()
        });
        let mut per_n = Tally::default();
        for p in parts {
            per_n.absorb(p);
        }
        let mut row: BTreeMap<String, u64> = BTreeMap::new();
        row.insert("instances".into(), per_n.checked);
        for (tag, c) in &per_n.tags {
            row.insert(tag.clone(), *c);
        }
        breakdown.insert(format!("n={n}"), row);
        total.absorb(per_n);
    }
    let mut params = BTreeMap::new();
    params.insert("exhaustive".into(), json!(true));
    params.insert("k".into(), json!(k));
    params.insert("n_max".into(), json!(hi));
    params.insert("n_min".into(), json!(lo));
    params.insert("sigma_floor".into(), json!("n+1"));
    params.insert("s_min".into(), json!(th.min_s(k)));
    Ok(finish(th.target().into(), params, total, Some(breakdown), None, cfg, start))
}

/// For each admissible `n` up to `n_max`, `samples` distinct seeded
/// instances meeting the hypotheses.
pub fn theorem_sampled(
    th: Theorem,
    n_min: Option<usize>,
    n_max: usize,
    k: usize,
    samples: u64,
    cfg: &SweepConfig,
) -> Result<VerificationReport, SweepError> {
    if samples == 0 {
        return Err(SweepError::ZeroSamples);
    }
    let (lo, hi) = admissible_range(th, k, n_min, n_max)?;
    let start = Instant::now();
    let mut total = Tally::default();
    let mut breakdown: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
    let min_s = th.min_s(k);
    for n in lo..=hi {
        let base = rng::stream_seed(cfg.seed, n as u64);
        let draw = |i: u64| {
            let mut r = rng::stream(base, i);
            let s_size = r.gen_range(min_s..=n);
            let density = r.gen_range(400..=950);
            let (g, s) = gen_random_attempts(&mut r, n, s_size, density, Some(n + 1), ATTEMPTS).ok()?;
            Some((graph_key(&g, &s), (g, s)))
        };
        let check = |(g, s): &(BipartiteGraph, SVertexSet)| Some(check_theorem(th, g, s, k, cfg.budget));
        let (tally, draws, _) = sample_distinct(samples, samples.saturating_mul(20), cfg.workers, draw, check);
        let mut row: BTreeMap<String, u64> = BTreeMap::new();
        row.insert("draws".into(), draws);
        row.insert("instances".into(), tally.checked);
        for (tag, c) in &tally.tags {
            row.insert(tag.clone(), *c);
        }
        breakdown.insert(format!("n={n}"), row);
        total.absorb(tally);
    }
    let mut params = BTreeMap::new();
    params.insert("density_permille".into(), json!("400..=950"));
    params.insert("exhaustive".into(), json!(false));
    params.insert("k".into(), json!(k));
    params.insert("n_max".into(), json!(hi));
    params.insert("n_min".into(), json!(lo));
    params.insert("samples".into(), json!(samples));
    params.insert("sigma_floor".into(), json!("n+1"));
    params.insert("s_min".into(), json!(min_s));
    Ok(finish(th.target().into(), params, total, Some(breakdown), None, cfg, start))
}

fn branch_tag(w: &Option<LemmaWitness>) -> Option<&'static str> {
    match w {
        Some(LemmaWitness::Disjunction { branch: Branch::MoreCycles, .. }) => Some("more-cycles"),
        Some(LemmaWitness::Disjunction { branch: Branch::Matching, .. }) => Some("matching"),
        Some(LemmaWitness::Cycles(cs)) if cs.len() == 2 && cs.iter().all(|c| c.len() == 4) => Some("two-quadrilaterals"),
        Some(LemmaWitness::Endvertex(_)) => Some("endvertex"),
        _ => None,
    }
}

/// Seeded sweep over planted instances of one lemma until `samples`
/// distinct instances meet its hypotheses.
pub fn lemma_sweep(id: LemmaId, samples: u64, cfg: &SweepConfig) -> Result<VerificationReport, SweepError> {
    if samples == 0 {
        return Err(SweepError::ZeroSamples);
    }
    let start = Instant::now();
    let base = rng::stream_seed(cfg.seed, id as u64);
    let draw = |i: u64| {
        let inst = sample_instance(id, &mut rng::stream(base, i))?;
        Some((inst.to_json().to_string(), inst))
    };
    let check = |inst: &crate::lemmas::LemmaInstance| {
        let out = evaluate(inst).ok()?;
        match out.status {
            LemmaStatus::HypothesisFails => None,
            LemmaStatus::Witness => Some(Checked { status: "WITNESS", failure: None, tag: branch_tag(&out.witness) }),
            LemmaStatus::Refuted => {
                let mut v = inst.to_json();
                v.as_object_mut().expect("object").insert("reason".into(), json!(out.reason));
                Some(Checked { status: "REFUTED", failure: Some(v), tag: None })
            }
        }
    };
    let (tally, draws, rejected) = sample_distinct(samples, samples.saturating_mul(200), cfg.workers, draw, check);
    let mut params = BTreeMap::new();
    params.insert("samples".into(), json!(samples));
    let mut row = BTreeMap::new();
    row.insert("draws".into(), draws);
    row.insert("hypothesis_fails".into(), rejected);
    for (tag, c) in &tally.tags {
        row.insert(tag.clone(), *c);
    }
    let mut breakdown = BTreeMap::new();
    breakdown.insert(id.name().to_string(), row);
    Ok(finish(format!("lemma:{}", id.name()), params, tally, Some(breakdown), None, cfg, start))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjecture {
    /// `|S| >= 2k + 1` and `sigma >= n + 2k - |S| + 1` give `k` disjoint
    /// feasible cycles.
    One,
    /// `|S| >= 2k + 2` and `sigma >= n + 2` realise every split of `|S|`
    /// into `k` parts of size at least two.
    Two,
}

impl Conjecture {
    pub fn target(self) -> &'static str {
        match self {
            Conjecture::One => "conjecture1",
            Conjecture::Two => "conjecture2",
        }
    }

    pub fn min_s(self, k: usize) -> usize {
        match self {
            Conjecture::One => 2 * k + 1,
            Conjecture::Two => 2 * k + 2,
        }
    }

    pub fn sigma_floor(self, n: usize, k: usize, s_size: usize) -> usize {
        match self {
            Conjecture::One => (n + 2 * k + 1).saturating_sub(s_size),
            Conjecture::Two => n + 2,
        }
    }
}

/// Nonincreasing splits of `total` into `k` parts, each at least 2.
pub fn partitions(total: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (2..=max.min(rest)).rev() {
            if rest - p >= 2 * (k - 1) {
                cur.push(p);
                rec(rest - p, k - 1, p, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(total, k, total, &mut Vec::new(), &mut out);
    }
    out
}

fn check_conjecture(c: Conjecture, g: &BipartiteGraph, s: &SVertexSet, k: usize, budget: u64) -> Checked {
    let requests: Vec<SolveRequest> = match c {
        Conjecture::One => vec![SolveRequest::new(Mode::Feasible, k)],
        Conjecture::Two => partitions(s.len(), k).into_iter().map(SolveRequest::partition).collect(),
    };
    let mut inconclusive = false;
    for req in requests {
        let req = req.with_budget(budget);
        let out = solve(g, s, &req).expect("valid request");
        match out.status {
            SolveStatus::Found => {
                if !witness_satisfies(g, s, &req, out.witness.as_ref().expect("witness")) {
                    return Checked {
                        status: "INVALID_WITNESS",
                        failure: Some(candidate(g, s, k, &req, "INVALID_WITNESS")),
                        tag: None,
                    };
                }
            }
            SolveStatus::BudgetExceeded => inconclusive = true,
            SolveStatus::None => {
                // Only a candidate the brute-force oracle also rejects counts.
                let confirmed = naive_oracle(g, s, &req).expect("small instance").status == SolveStatus::None;
                let status = if confirmed { "COUNTEREXAMPLE" } else { "SOLVER_DISAGREES" };
                return Checked { status, failure: Some(candidate(g, s, k, &req, status)), tag: None };
            }
        }
    }
    if inconclusive {
        Checked { status: "BUDGET_EXCEEDED", failure: None, tag: None }
    } else {
        Checked { status: "HOLDS", failure: None, tag: None }
    }
}

fn candidate(g: &BipartiteGraph, s: &SVertexSet, k: usize, req: &SolveRequest, status: &str) -> Value {
    let mut v = failure_record(g, s, k, req.mode.name(), status);
    if req.mode == Mode::Partition {
        v.as_object_mut().expect("object").insert("parts".into(), json!(req.parts));
    }
    v
}

/// Seeded search for counterexamples among `samples` distinct instances
/// meeting the conjecture's hypotheses.
pub fn conjecture_search(
    c: Conjecture,
    n: usize,
    k: usize,
    samples: u64,
    cfg: &SweepConfig,
) -> Result<VerificationReport, SweepError> {
    if n > SEARCH_MAX_N {
        return Err(SweepError::SearchTooLarge(n));
    }
    if k == 0 {
        return Err(SweepError::ZeroK);
    }
    if samples == 0 {
        return Err(SweepError::ZeroSamples);
    }
    let min_s = c.min_s(k);
    if n < min_s {
        return Err(SweepError::SmallN { n, min: min_s });
    }
    let start = Instant::now();
    let draw = |i: u64| {
        let mut r = rng::stream(cfg.seed, i);
        let s_size = r.gen_range(min_s..=n);
        let density = r.gen_range(200..=950);
        let floor = c.sigma_floor(n, k, s_size);
        let (g, s) = gen_random_attempts(&mut r, n, s_size, density, Some(floor), ATTEMPTS).ok()?;
        Some((graph_key(&g, &s), (g, s)))
    };
    let check = |(g, s): &(BipartiteGraph, SVertexSet)| Some(check_conjecture(c, g, s, k, cfg.budget));
    let (tally, draws, _) = sample_distinct(samples, samples.saturating_mul(20), cfg.workers, draw, check);
    let found = tally.status_count("COUNTEREXAMPLE") > 0;
    let mut params = BTreeMap::new();
    params.insert("density_permille".into(), json!("200..=950"));
    params.insert("draws".into(), json!(draws));
    params.insert("k".into(), json!(k));
    params.insert("n".into(), json!(n));
    params.insert("samples".into(), json!(samples));
    params.insert(
        "sigma_floor".into(),
        json!(match c {
            Conjecture::One => "n+2k-|S|+1",
            Conjecture::Two => "n+2",
        }),
    );
    params.insert("s_min".into(), json!(min_s));
    Ok(finish(c.target().into(), params, tally, None, Some(found), cfg, start))
}

impl Tally {
    fn status_count(&self, name: &str) -> u64 {
        self.statuses.get(name).copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_enumerate_splits() {
        assert_eq!(partitions(7, 2), vec![vec![5, 2], vec![4, 3]]);
        assert_eq!(partitions(6, 3), vec![vec![2, 2, 2]]);
        assert_eq!(partitions(4, 1), vec![vec![4]]);
        assert!(partitions(5, 3).is_empty());
        assert!(partitions(5, 0).is_empty());
    }

    #[test]
    fn sampled_report_ignores_worker_count() {
        let cfg = SweepConfig { seed: 9, ..SweepConfig::default() };
        let one = theorem_sampled(Theorem::Four, Some(4), 5, 1, 60, &cfg).unwrap();
        let four = theorem_sampled(Theorem::Four, Some(4), 5, 1, 60, &SweepConfig { workers: 4, ..cfg }).unwrap();
        assert_eq!(one.to_json(), four.to_json());
        assert_eq!(one.instances_checked, 120);
        assert!(one.passed());
    }

    #[test]
    fn exhaustive_rejects_large_n() {
        let cfg = SweepConfig::default();
        assert_eq!(
            theorem_exhaustive(Theorem::Three, None, 6, 1, &cfg).unwrap_err(),
            SweepError::ExhaustiveTooLarge(6)
        );
        assert!(matches!(theorem_exhaustive(Theorem::Four, None, 3, 1, &cfg), Err(SweepError::EmptyRange { .. })));
    }

    #[test]
    fn exhaustive_n3_theorem3() {
        let report = theorem_exhaustive(Theorem::Three, None, 3, 1, &SweepConfig::default()).unwrap();
        assert!(report.passed());
        assert!(report.instances_checked > 0);
        assert!(!report.to_json().contains("runtime_ms"));
    }

    #[test]
    fn conjecture_search_is_well_formed() {
        let cfg = SweepConfig { seed: 3, ..SweepConfig::default() };
        let r = conjecture_search(Conjecture::Two, 4, 1, 50, &cfg).unwrap();
        assert_eq!(r.counterexample, Some(false));
        assert!(r.instances_checked > 0);
        assert!(conjecture_search(Conjecture::One, 7, 1, 10, &cfg).is_err());
    }

    #[test]
    fn lemma_sweep_is_clean() {
        let cfg = SweepConfig { seed: 7, workers: 2, ..SweepConfig::default() };
        let r = lemma_sweep(LemmaId::L4_2, 50, &cfg).unwrap();
        assert_eq!(r.instances_checked, 50);
        assert_eq!(r.status("REFUTED"), 0);
    }
}
