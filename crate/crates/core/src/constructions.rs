//! The four extremal families and a seeded random generator.
//!
//! Layouts are fixed so that generated files are reproducible:
//!
//! * G1: X is `A, C, x`, Y is `B, D, y`, each block in index order.
//! * G2: X is `x, S_1, ..., S_p` followed by vertices outside S; `Y_1` is
//!   `y_1..y_p` at the lowest Y indices.
//! * G3: `x` is X index 0 with sole neighbour Y index 0; S is the lowest
//!   `s_size` X indices.
//! * G4: S is the highest `s_size` X indices, A the highest `|A|` of them,
//!   B the highest `|A|` Y indices, `a_i b_i` matched by rank.

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{sigma11, BipartiteGraph, SVertexSet, SigmaValue, MAX_HALF_ORDER};
use crate::rng;

/// Rejection limit for [`gen_random`].
pub const MAX_REJECTIONS: u32 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("k must be a positive even integer, got {0}")]
    OddK(usize),
    #[error("k must be positive")]
    ZeroK,
    #[error("p must be an odd integer >= 3, got {0}")]
    BadP(usize),
    #[error("n = {n} is below the minimum {min} for these parameters")]
    SmallN { n: usize, min: usize },
    #[error("n = {n} exceeds the supported maximum {MAX_HALF_ORDER}")]
    LargeN { n: usize },
    #[error("S size {s_size} outside {min}..={max}")]
    SSize { s_size: usize, min: usize, max: usize },
    #[error("density {0} per mille outside 0..=1000")]
    Density(u32),
    #[error("no sample reached sigma >= {floor} in {attempts} attempts; increase the density")]
    Rejected { floor: usize, attempts: u32 },
}

/// Which generator, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "which", rename_all = "lowercase")]
pub enum ConstructionSpec {
    G1 { k: usize },
    G2 { p: usize, n: usize },
    G3 { n: usize, s_size: usize },
    G4 { n: usize, k: usize, s_size: usize },
    Random { n: usize, s_size: usize, density_permille: u32, sigma_floor: Option<usize>, seed: u64 },
}

/// A generated instance with the value its family's formula predicts for
/// sigma. Random instances carry no formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub graph: BipartiteGraph,
    pub s: SVertexSet,
    pub closed_form_sigma: Option<SigmaValue>,
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Construction, ConstructionError> {
        let (graph, s) = match *self {
            ConstructionSpec::G1 { k } => gen_example1(k)?,
            ConstructionSpec::G2 { p, n } => gen_example2(p, n)?,
            ConstructionSpec::G3 { n, s_size } => gen_example3(n, s_size)?,
            ConstructionSpec::G4 { n, k, s_size } => gen_example4(n, k, s_size)?,
            ConstructionSpec::Random { n, s_size, density_permille, sigma_floor, seed } => {
                gen_random(n, s_size, density_permille, sigma_floor, seed)?
            }
        };
        Ok(Construction { graph, s, closed_form_sigma: self.closed_form_sigma() })
    }

    pub fn closed_form_sigma(&self) -> Option<SigmaValue> {
        let v = match *self {
            ConstructionSpec::G1 { k } => example1_sigma(k),
            ConstructionSpec::G2 { p, n } => example2_sigma(p, n),
            ConstructionSpec::G3 { n, .. } => example3_sigma(n),
            ConstructionSpec::G4 { n, k, s_size } => example4_sigma(n, k, s_size),
            ConstructionSpec::Random { .. } => return None,
        };
        Some(SigmaValue::Finite(v))
    }
}

/// `2k + 2`, that is `n + 1`.
pub fn example1_sigma(k: usize) -> usize {
    2 * k + 2
}

/// `n + p - 1`.
pub fn example2_sigma(p: usize, n: usize) -> usize {
    n + p - 1
}

/// `n`.
pub fn example3_sigma(n: usize) -> usize {
    n
}

/// `n + 2k - |S|`.
pub fn example4_sigma(n: usize, k: usize, s_size: usize) -> usize {
    n + 2 * k - s_size
}

/// `k` for a given odd `p`: `(2p² − 3p + 1) / 2`.
pub fn example2_k(p: usize) -> usize {
    (2 * p * p - 3 * p + 1) / 2
}

/// Smallest admissible `n` for G2: `1 + p(2p − 3)`.
pub fn example2_min_n(p: usize) -> usize {
    1 + p * (2 * p - 3)
}

fn check_n(n: usize) -> Result<(), ConstructionError> {
    if n > MAX_HALF_ORDER {
        return Err(ConstructionError::LargeN { n });
    }
    Ok(())
}

/// G1 for even `k`: `n = 2k + 1`, `S = X`.
pub fn gen_example1(k: usize) -> Result<(BipartiteGraph, SVertexSet), ConstructionError> {
    if k == 0 || k % 2 == 1 {
        return Err(ConstructionError::OddK(k));
    }
    gen_example1_any(k)
}

/// The G1 layout for any positive `k`. Odd `k` lies outside the family's
/// stated range and is used only for experiments such as the prescribed
/// cycle-length check.
pub fn gen_example1_any(k: usize) -> Result<(BipartiteGraph, SVertexSet), ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroK);
    }
    let n = 2 * k + 1;
    check_n(n)?;
    let (x, y) = (2 * k, 2 * k);
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            edges.push((i, j)); // A–B
            edges.push((k + i, k + j)); // C–D
        }
        edges.push((i, k + i)); // A–D by rank
        edges.push((x, i)); // x–B
        edges.push((k + i, y)); // C–y
    }
    edges.push((x, y));
    let g = BipartiteGraph::new(n, edges).expect("indices in range");
    Ok((g, SVertexSet::whole_x(n)))
}

/// G2 for odd `p >= 3` and `n >= 1 + p(2p − 3)`.
pub fn gen_example2(p: usize, n: usize) -> Result<(BipartiteGraph, SVertexSet), ConstructionError> {
    if p < 3 || p % 2 == 0 {
        return Err(ConstructionError::BadP(p));
    }
    let min = example2_min_n(p);
    if n < min {
        return Err(ConstructionError::SmallN { n, min });
    }
    check_n(n)?;
    let block = 2 * p - 3;
    let mut edges = Vec::new();
    for i in 0..p {
        edges.push((0, i));
        for t in 0..block {
            edges.push((1 + i * block + t, i));
        }
    }
    for xi in 1..n {
        for yj in p..n {
            edges.push((xi, yj));
        }
    }
    let g = BipartiteGraph::new(n, edges).expect("indices in range");
    let s = SVertexSet::new(n, 0..min).expect("indices in range");
    Ok((g, s))
}

/// G3: `n >= 2`, `1 <= s_size <= n`.
pub fn gen_example3(n: usize, s_size: usize) -> Result<(BipartiteGraph, SVertexSet), ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::SmallN { n, min: 2 });
    }
    check_n(n)?;
    if s_size == 0 || s_size > n {
        return Err(ConstructionError::SSize { s_size, min: 1, max: n });
    }
    let mut edges = vec![(0, 0)];
    for xi in 1..n {
        for yj in 0..n {
            edges.push((xi, yj));
        }
    }
    let g = BipartiteGraph::new(n, edges).expect("indices in range");
    Ok((g, SVertexSet::new(n, 0..s_size).expect("indices in range")))
}

/// G4: `k >= 1`, `2k <= s_size <= n`.
pub fn gen_example4(n: usize, k: usize, s_size: usize) -> Result<(BipartiteGraph, SVertexSet), ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroK);
    }
    check_n(n)?;
    if s_size < 2 * k || s_size > n {
        return Err(ConstructionError::SSize { s_size, min: 2 * k, max: n });
    }
    let a = s_size - (2 * k - 1);
    let first_a = n - a;
    let mut edges = Vec::new();
    for xi in 0..first_a {
        for yj in 0..n {
            edges.push((xi, yj));
        }
    }
    for r in 0..a {
        edges.push((first_a + r, first_a + r));
    }
    let g = BipartiteGraph::new(n, edges).expect("indices in range");
    Ok((g, SVertexSet::new(n, (n - s_size)..n).expect("indices in range")))
}

/// Each X–Y pair becomes an edge with probability `density_permille / 1000`,
/// S is a uniform `s_size`-subset of X, and samples are redrawn until
/// `sigma >= sigma_floor`.
pub fn gen_random(
    n: usize,
    s_size: usize,
    density_permille: u32,
    sigma_floor: Option<usize>,
    seed: u64,
) -> Result<(BipartiteGraph, SVertexSet), ConstructionError> {
    gen_random_with(&mut rng::rng(seed), n, s_size, density_permille, sigma_floor)
}

/// As [`gen_random`], drawing from a caller-supplied generator.
pub fn gen_random_with<R: Rng>(
    rng: &mut R,
    n: usize,
    s_size: usize,
    density_permille: u32,
    sigma_floor: Option<usize>,
) -> Result<(BipartiteGraph, SVertexSet), ConstructionError> {
    gen_random_attempts(rng, n, s_size, density_permille, sigma_floor, MAX_REJECTIONS)
}

/// As [`gen_random_with`], giving up after `attempts` draws.
pub fn gen_random_attempts<R: Rng>(
    rng: &mut R,
    n: usize,
    s_size: usize,
    density_permille: u32,
    sigma_floor: Option<usize>,
    attempts: u32,
) -> Result<(BipartiteGraph, SVertexSet), ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::SmallN { n, min: 1 });
    }
    check_n(n)?;
    if s_size > n {
        return Err(ConstructionError::SSize { s_size, min: 0, max: n });
    }
    if density_permille > 1000 {
        return Err(ConstructionError::Density(density_permille));
    }
    for _ in 0..attempts {
        let (g, s) = random_instance(rng, n, s_size, density_permille);
        match sigma_floor {
            Some(floor) if !sigma11(&g, &s).at_least(floor) => continue,
            _ => return Ok((g, s)),
        }
    }
    Err(ConstructionError::Rejected { floor: sigma_floor.unwrap_or(0), attempts })
}

fn random_instance<R: Rng>(rng: &mut R, n: usize, s_size: usize, density_permille: u32) -> (BipartiteGraph, SVertexSet) {
    let mut rows = vec![0u64; n];
    for row in rows.iter_mut() {
        for j in 0..n {
            if rng.gen_range(0..1000u32) < density_permille {
                *row |= 1 << j;
            }
        }
    }
    let g = BipartiteGraph::from_rows(n, &rows).expect("rows fit");
    let s = SVertexSet::new(n, sample(rng, n, s_size).into_iter()).expect("indices in range");
    (g, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Side;

    fn nbrs_x(g: &BipartiteGraph, i: usize) -> Vec<usize> {
        (0..g.n()).filter(|&j| g.has_edge(i, j)).collect()
    }

    fn nbrs_y(g: &BipartiteGraph, j: usize) -> Vec<usize> {
        (0..g.n()).filter(|&i| g.has_edge(i, j)).collect()
    }

    #[test]
    fn example1_structure() {
        for k in [2, 4] {
            let (g, s) = gen_example1(k).unwrap();
            let n = 2 * k + 1;
            assert_eq!(g.n(), n);
            assert_eq!(s.len(), n);
            let a: Vec<usize> = (0..k).collect();
            let c: Vec<usize> = (k..2 * k).collect();
            for &i in &a {
                for j in 0..k {
                    assert!(g.has_edge(i, j));
                }
                let d_nbrs: Vec<usize> = nbrs_x(&g, i).into_iter().filter(|&j| j >= k).collect();
                assert_eq!(d_nbrs, vec![k + i]);
            }
            for &i in &c {
                for j in k..2 * k {
                    assert!(g.has_edge(i, j));
                }
            }
            assert_eq!(nbrs_x(&g, 2 * k), (0..k).chain([2 * k]).collect::<Vec<_>>());
            assert_eq!(nbrs_y(&g, 2 * k), (k..2 * k).chain([2 * k]).collect::<Vec<_>>());
            let min_deg = (0..n)
                .flat_map(|i| [g.degree(Side::X, i).unwrap(), g.degree(Side::Y, i).unwrap()])
                .min()
                .unwrap();
            assert_eq!(min_deg, k + 1);
            assert_eq!(sigma11(&g, &s), SigmaValue::Finite(example1_sigma(k)));
        }
        assert_eq!(gen_example1(2).unwrap().0.edge_count(), 15);
        assert!(gen_example1(3).is_err());
        assert!(gen_example1(0).is_err());
        assert!(gen_example1_any(3).is_ok());
    }

    #[test]
    fn example2_structure() {
        for n in [10, 11, 12] {
            let (g, s) = gen_example2(3, n).unwrap();
            assert_eq!(example2_k(3), 5);
            assert_eq!(s.len(), 2 * example2_k(3));
            assert_eq!(nbrs_x(&g, 0), vec![0, 1, 2]);
            for i in 0..3 {
                let block: Vec<usize> = (1 + 3 * i..4 + 3 * i).collect();
                assert_eq!(nbrs_y(&g, i), [0].into_iter().chain(block).collect::<Vec<_>>());
            }
            for xi in 1..n {
                for yj in 3..n {
                    assert!(g.has_edge(xi, yj));
                }
            }
            assert_eq!(sigma11(&g, &s), SigmaValue::Finite(example2_sigma(3, n)));
        }
        assert_eq!(example2_sigma(3, 10), 12);
        assert!(gen_example2(4, 20).is_err());
        assert!(gen_example2(3, 9).is_err());
    }

    #[test]
    fn example3_structure() {
        for n in 3..=8 {
            let (g, s) = gen_example3(n, n.min(3)).unwrap();
            assert_eq!(g.degree(Side::X, 0).unwrap(), 1);
            assert!(s.contains(0));
            assert_eq!(g.edge_count(), 1 + (n - 1) * n);
            assert_eq!(sigma11(&g, &s), SigmaValue::Finite(n));
        }
    }

    #[test]
    fn example4_structure() {
        for n in 2..=8 {
            for k in 1..=n / 2 {
                for s_size in 2 * k..=n {
                    let (g, s) = gen_example4(n, k, s_size).unwrap();
                    let a = s_size - (2 * k - 1);
                    for r in 0..a {
                        let i = n - a + r;
                        assert!(s.contains(i));
                        assert_eq!(nbrs_x(&g, i), vec![i]);
                    }
                    for i in 0..n - a {
                        assert_eq!(g.degree(Side::X, i).unwrap(), n);
                    }
                    assert_eq!(sigma11(&g, &s), SigmaValue::Finite(example4_sigma(n, k, s_size)));
                }
            }
        }
        assert_eq!(example4_sigma(6, 1, 3), 5);
        assert!(gen_example4(6, 2, 3).is_err());
    }

    #[test]
    fn random_respects_floor_and_seed() {
        let a = gen_random(6, 4, 800, Some(7), 1).unwrap();
        let b = gen_random(6, 4, 800, Some(7), 1).unwrap();
        assert_eq!(a, b);
        assert!(sigma11(&a.0, &a.1).at_least(7));
        assert_eq!(a.1.len(), 4);
        let (full, s) = gen_random(5, 3, 1000, None, 9).unwrap();
        assert_eq!(full, BipartiteGraph::complete(5).unwrap());
        assert_eq!(sigma11(&full, &s), SigmaValue::Infinite);
        assert!(matches!(gen_random(6, 3, 0, Some(7), 0), Err(ConstructionError::Rejected { .. })));
    }

    #[test]
    fn spec_build_reports_closed_form() {
        let c = ConstructionSpec::G4 { n: 6, k: 1, s_size: 3 }.build().unwrap();
        assert_eq!(c.closed_form_sigma, Some(sigma11(&c.graph, &c.s)));
    }
}
