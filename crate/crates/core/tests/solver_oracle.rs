use bct::oracle::naive_oracle;
use bct::solver::{solve_with_workers, witness_satisfies};
use bct::sweep::partitions;
use bct::{find_minimal_system, solve, BipartiteGraph, Mode, SVertexSet, SolveRequest, SolveStatus};
use proptest::prelude::*;

fn graph_and_s(max_n: usize) -> impl Strategy<Value = (BipartiteGraph, SVertexSet)> {
    (3..=max_n).prop_flat_map(|n| {
        (prop::collection::vec(any::<bool>(), n * n), 0u64..(1 << n)).prop_map(move |(bits, mask)| {
            let edges = (0..n * n).filter(|&i| bits[i]).map(|i| (i / n, i % n));
            (BipartiteGraph::new(n, edges).unwrap(), SVertexSet::from_mask(n, mask).unwrap())
        })
    })
}

fn requests(s: &SVertexSet, k: usize) -> Vec<SolveRequest> {
    let mut reqs: Vec<SolveRequest> =
        [Mode::Feasible, Mode::Cyclable, Mode::TwoFactor].into_iter().map(|m| SolveRequest::new(m, k)).collect();
    reqs.extend(partitions(s.len(), k).into_iter().map(SolveRequest::partition));
    reqs
}

#[test]
fn exhaustive_agreement_up_to_three() {
    for n in 1..=3usize {
        for idx in 0u64..1 << (n * n) {
            let g = BipartiteGraph::from_index(n, idx).unwrap();
            for mask in 0u64..1 << n {
                let s = SVertexSet::from_mask(n, mask).unwrap();
                for req in requests(&s, 1) {
                    let a = solve(&g, &s, &req).unwrap();
                    let b = naive_oracle(&g, &s, &req).unwrap();
                    assert_eq!(a.status, b.status, "n={n} idx={idx} s={mask:b} {:?}", req.mode);
                }
            }
        }
    }
}

#[test]
fn k44_examples() {
    let g = BipartiteGraph::complete(4).unwrap();
    let s = SVertexSet::whole_x(4);
    for (req, want) in [
        (SolveRequest::new(Mode::TwoFactor, 1), SolveStatus::Found),
        (SolveRequest::new(Mode::TwoFactor, 2), SolveStatus::Found),
        (SolveRequest::new(Mode::Feasible, 3), SolveStatus::None),
        (SolveRequest::partition(vec![2, 2]), SolveStatus::Found),
        (SolveRequest::partition(vec![4]), SolveStatus::Found),
    ] {
        assert_eq!(solve(&g, &s, &req).unwrap().status, want, "{req:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_matches_oracle((g, s) in graph_and_s(5), k in 1usize..=2) {
        for req in requests(&s, k) {
            let a = solve(&g, &s, &req).unwrap();
            let b = naive_oracle(&g, &s, &req).unwrap();
            prop_assert_eq!(a.status, b.status);
            if let Some(w) = &a.witness {
                prop_assert!(witness_satisfies(&g, &s, &req, w));
            }
        }
    }

    #[test]
    fn pruning_and_workers_do_not_change_answers((g, s) in graph_and_s(5), k in 1usize..=2) {
        for req in requests(&s, k) {
            let base = solve(&g, &s, &req).unwrap();
            let plain = solve(&g, &s, &req.clone().without_pruning()).unwrap();
            prop_assert_eq!(base.status, plain.status);
            let par = solve_with_workers(&g, &s, &req, 3).unwrap();
            prop_assert_eq!(&base, &par);
        }
    }

    #[test]
    fn minimal_system_key_matches_catalog((g, s) in graph_and_s(4), k in 1usize..=2) {
        let out = find_minimal_system(&g, &s, k, 1_000_000).unwrap();
        let catalog = bct::oracle::CycleCatalog::new(&g).unwrap();
        prop_assert_eq!(out.key(&s), catalog.min_key(&s, k));
    }

    #[test]
    fn tiny_budgets_never_lie((g, s) in graph_and_s(5), budget in 1u64..40) {
        let req = SolveRequest::new(Mode::Feasible, 1).with_budget(budget);
        let out = solve(&g, &s, &req).unwrap();
        let truth = naive_oracle(&g, &s, &req).unwrap().status;
        prop_assert!(out.status == truth || out.status == SolveStatus::BudgetExceeded);
        prop_assert!(out.nodes_expanded <= budget);
    }
}
