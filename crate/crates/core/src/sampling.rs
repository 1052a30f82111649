//! Derandomized sampling primitives: best-of-trials balanced r-partitions and
//! best-of-trials vertex samples with exact hypergeometric expectations.
//!
//! All randomness is seed-derived; parallel trials merge by deterministic max
//! with ties broken on the lexicographically smallest sampled set.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid_param, Result};
use crate::hypergraph::Hypergraph;
use crate::norms::p_norm;
use crate::util::binom;

/// Splitmix-style per-trial seed derivation, stable across thread counts.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    /// Parts V_1, ..., V_r, each sorted.
    pub parts: Vec<Vec<usize>>,
    /// p-norm of H[V_1, ..., V_r].
    pub achieved: f64,
    pub trials: usize,
}

fn balanced_sizes(n: usize, r: usize) -> Vec<usize> {
    // m_1 >= ... >= m_r with sum n, differing by at most one
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

fn parts_from_order(order: &[usize], sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut parts = Vec::with_capacity(sizes.len());
    let mut at = 0;
    for &s in sizes {
        let mut part: Vec<usize> = order[at..at + s].to_vec();
        part.sort_unstable();
        parts.push(part);
        at += s;
    }
    parts
}

fn evaluate_partition(h: &Hypergraph, parts: &[Vec<usize>], p: f64) -> f64 {
    p_norm(&h.partite_selection(parts), p).map(|v| v.value).unwrap_or(0.0)
}

/// Best balanced r-partition over `trials` uniform draws; `trials = 0` runs
/// exhaustive enumeration of all balanced partitions (small n only).
pub fn best_balanced_partition(
    h: &Hypergraph,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<PartitionReport> {
    if p < 1.0 {
        return Err(invalid_param("best_balanced_partition requires p >= 1"));
    }
    let r = h.r();
    let n = h.n();
    let sizes = balanced_sizes(n, r);
    if trials == 0 {
        return exhaustive_partition(h, p, &sizes);
    }
    let best = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let parts = parts_from_order(&order, &sizes);
            let value = evaluate_partition(h, &parts, p);
            (value, parts)
        })
        .reduce_with(|a, b| pick_better(a, b))
        .expect("trials >= 1");
    Ok(PartitionReport { parts: best.1, achieved: best.0, trials })
}

fn pick_better(a: (f64, Vec<Vec<usize>>), b: (f64, Vec<Vec<usize>>)) -> (f64, Vec<Vec<usize>>) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn exhaustive_partition(h: &Hypergraph, p: f64, sizes: &[usize]) -> Result<PartitionReport> {
    let n = h.n();
    if n > 16 {
        return Err(invalid_param("exhaustive partition mode is limited to n <= 16"));
    }
    let mut best: Option<(f64, Vec<Vec<usize>>)> = None;
    let mut assign = vec![usize::MAX; n];
    let mut remaining: Vec<usize> = sizes.to_vec();
    fn rec(
        v: usize,
        n: usize,
        h: &Hypergraph,
        p: f64,
        sizes: &[usize],
        remaining: &mut Vec<usize>,
        assign: &mut Vec<usize>,
        best: &mut Option<(f64, Vec<Vec<usize>>)>,
    ) {
        if v == n {
            let mut parts = vec![Vec::new(); sizes.len()];
            for (u, &i) in assign.iter().enumerate() {
                parts[i].push(u);
            }
            let value = evaluate_partition(h, &parts, p);
            let cand = (value, parts);
            let take = match best {
                None => true,
                Some(b) => cand.0 > b.0 || (cand.0 == b.0 && cand.1 < b.1),
            };
            if take {
                *best = Some(cand);
            }
            return;
        }
        for i in 0..sizes.len() {
            if remaining[i] > 0 {
                remaining[i] -= 1;
                assign[v] = i;
                rec(v + 1, n, h, p, sizes, remaining, assign, best);
                assign[v] = usize::MAX;
                remaining[i] += 1;
            }
        }
    }
    rec(0, n, h, p, sizes, &mut remaining, &mut assign, &mut best);
    let (achieved, parts) = best.expect("at least one balanced partition exists");
    Ok(PartitionReport { parts, achieved, trials: 0 })
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    /// The winning m-subset W, sorted.
    pub w: Vec<usize>,
    /// Sum over v in U of d^p(v) inside H[U ∪ W].
    pub achieved: f64,
    /// Exact E[ Σ_{v∈U} d(v, W) ] from the hypergeometric edge-survival
    /// probability C(n-(r-1), m-(r-1)) / C(n, m).
    pub expectation: f64,
    /// Mean of the per-trial achieved values; `achieved` never falls below it.
    pub empirical_mean: f64,
}

fn sample_objective(h: &Hypergraph, u_mask: &[bool], w: &[usize], p: f64) -> f64 {
    let mut in_union = u_mask.to_vec();
    for &v in w {
        in_union[v] = true;
    }
    let mut degrees = vec![0u64; h.n()];
    for e in h.edges() {
        if e.iter().all(|&v| in_union[v]) {
            for &v in e {
                degrees[v] += 1;
            }
        }
    }
    degrees
        .iter()
        .enumerate()
        .filter(|&(v, _)| u_mask[v])
        .map(|(_, &d)| (d as f64).powf(p))
        .sum()
}

/// Best-of-trials m-subset W of V(H) maximizing Σ_{v∈U} d^p(v) in H[U ∪ W].
pub fn best_sample(
    h: &Hypergraph,
    u: &[usize],
    m: usize,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<SampleReport> {
    let n = h.n();
    if m > n {
        return Err(invalid_param(format!("sample size m = {m} exceeds n = {n}")));
    }
    if trials == 0 {
        return Err(invalid_param("best_sample needs trials >= 1"));
    }
    let mut u_mask = vec![false; n];
    for &v in u {
        if v >= n {
            return Err(invalid_param(format!("U contains out-of-range vertex {v}")));
        }
        u_mask[v] = true;
    }
    let r = h.r() as u64;
    let survival = if n as u64 >= r - 1 && m as u64 >= r - 1 {
        binom((n as u64) - (r - 1), (m as u64) - (r - 1)) as f64 / binom(n as u64, m as u64) as f64
    } else {
        0.0
    };
    let degrees = h.degrees();
    let expectation: f64 = u
        .iter()
        .map(|&v| degrees[v] as f64 * survival)
        .sum();

    let results: Vec<(f64, Vec<usize>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
            let mut pool: Vec<usize> = (0..n).collect();
            pool.shuffle(&mut rng);
            let mut w: Vec<usize> = pool[..m].to_vec();
            w.sort_unstable();
            let value = sample_objective(h, &u_mask, &w, p);
            (value, w)
        })
        .collect();
    let empirical_mean = results.iter().map(|r| r.0).sum::<f64>() / trials as f64;
    let (achieved, w) = results
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("trials >= 1");
    Ok(SampleReport { w, achieved, expectation, empirical_mean })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::subsets;

    #[test]
    fn single_edge_crossing_partition() {
        let h = Hypergraph::graph(2, &[(0, 1)]).unwrap();
        let rep = best_balanced_partition(&h, 1.0, 4, 7).unwrap();
        assert_eq!(rep.achieved, 2.0);
    }

    #[test]
    fn empty_graph_partition() {
        let h = Hypergraph::empty(2, 6);
        let rep = best_balanced_partition(&h, 2.0, 3, 1).unwrap();
        assert_eq!(rep.achieved, 0.0);
    }

    #[test]
    fn k4_exhaustive_bipartition() {
        let pairs: Vec<(usize, usize)> =
            (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        let h = Hypergraph::graph(4, &pairs).unwrap();
        // any balanced bipartition of K4 keeps a K_{2,2}: 4 vertices of degree 2
        let rep = best_balanced_partition(&h, 2.0, 0, 0).unwrap();
        assert_eq!(rep.achieved, 16.0);
    }

    #[test]
    fn partition_never_exceeds_norm() {
        let h = Hypergraph::new(3, 7, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]]).unwrap();
        for p in [1.0, 2.0] {
            let rep = best_balanced_partition(&h, p, 10, 3).unwrap();
            assert!(rep.achieved <= p_norm(&h, p).unwrap().value + 1e-12);
        }
    }

    #[test]
    fn full_sample_is_exact() {
        let h = Hypergraph::graph(5, &[(0, 1), (0, 2), (1, 2), (3, 4)]).unwrap();
        let rep = best_sample(&h, &[0, 1], 5, 2.0, 3, 9).unwrap();
        assert_eq!(rep.achieved, 8.0); // d(0)=d(1)=2
    }

    #[test]
    fn empty_graph_sample() {
        let h = Hypergraph::empty(2, 6);
        let rep = best_sample(&h, &[0, 1, 2], 3, 1.5, 5, 0).unwrap();
        assert_eq!(rep.achieved, 0.0);
        assert_eq!(rep.expectation, 0.0);
    }

    #[test]
    fn k5_expectation_matches_enumeration() {
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        let h = Hypergraph::graph(5, &pairs).unwrap();
        let rep = best_sample(&h, &[0], 2, 1.0, 4, 11).unwrap();
        assert!((rep.expectation - 1.6).abs() < 1e-12);
        // exhaustive oracle: average d(0, W) over all 10 two-subsets,
        // where d(0, W) counts neighbors of 0 inside W
        let mut total = 0.0;
        let all = subsets(5, 2);
        for w in &all {
            total += w.iter().filter(|&&v| v != 0 && h.has_edge(&[0, v])).count() as f64;
        }
        assert!((total / all.len() as f64 - rep.expectation).abs() < 1e-12);
    }

    #[test]
    fn achieved_at_least_mean() {
        let h = Hypergraph::graph(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)])
            .unwrap();
        let rep = best_sample(&h, &[1, 3, 5], 4, 1.5, 16, 42).unwrap();
        assert!(rep.achieved >= rep.empirical_mean - 1e-12);
    }

    #[test]
    fn oversized_sample_rejected() {
        let h = Hypergraph::empty(2, 3);
        assert!(best_sample(&h, &[0], 4, 1.0, 1, 0).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let h = Hypergraph::graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let a = best_sample(&h, &[0, 2], 3, 2.0, 8, 5).unwrap();
        let b = best_sample(&h, &[0, 2], 3, 2.0, 8, 5).unwrap();
        assert_eq!(a.w, b.w);
        assert_eq!(a.achieved, b.achieved);
    }
}
