//! Degree-power norms: the p-norm, the (t,p)-norm of r-graphs, and the
//! (t,r,p)-norm of 2-graphs.
//!
//! Norms with an integer exponent are computed in u128 arithmetic and flagged
//! exact; fractional exponents go through f64 with a 1e-9 comparison tolerance.

use std::collections::HashMap;

use crate::error::{invalid_param, Result};
use crate::hypergraph::{BipartiteGraph, Hypergraph, NormValue, Side};
use crate::util::{as_integer_exponent, pow_u128, subsets};

fn degree_power_sum(degrees: &[u64], p: f64) -> NormValue {
    match as_integer_exponent(p) {
        Some(0) => {
            // p = 0 counts non-isolated vertices; 0^0 is taken as 0 here so
            // isolated vertices contribute nothing.
            NormValue::exact(degrees.iter().filter(|&&d| d > 0).count() as u128)
        }
        Some(k) => NormValue::exact(degrees.iter().map(|&d| pow_u128(d, k)).sum()),
        None => NormValue::approx(degrees.iter().map(|&d| (d as f64).powf(p)).sum()),
    }
}

/// ‖H‖_p = Σ_v d(v)^p.
pub fn p_norm(h: &Hypergraph, p: f64) -> Result<NormValue> {
    if p < 0.0 {
        return Err(invalid_param(format!("p = {p} must be nonnegative")));
    }
    Ok(degree_power_sum(&h.degrees(), p))
}

/// Exact p-norm for an integer exponent.
pub fn p_norm_int(h: &Hypergraph, p: u32) -> u128 {
    h.degrees().iter().map(|&d| pow_u128(d, p)).sum()
}

/// One-sided p-norm of a bipartite graph; `side = None` sums both sides.
pub fn p_norm_bipartite(g: &BipartiteGraph, p: f64, side: Option<Side>) -> Result<NormValue> {
    if p < 0.0 {
        return Err(invalid_param(format!("p = {p} must be nonnegative")));
    }
    let v = match side {
        Some(Side::Left) => degree_power_sum(&g.left_degrees(), p),
        Some(Side::Right) => degree_power_sum(&g.right_degrees(), p),
        None => {
            let l = degree_power_sum(&g.left_degrees(), p);
            let r = degree_power_sum(&g.right_degrees(), p);
            NormValue { value: l.value + r.value, exact: l.exact && r.exact }
        }
    };
    Ok(v)
}

/// Codegrees d_H(T) over all t-subsets T that lie in at least one edge.
pub fn t_set_degrees(h: &Hypergraph, t: usize) -> HashMap<Vec<usize>, u64> {
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for e in h.edges() {
        for idx in subsets(e.len(), t) {
            let key: Vec<usize> = idx.iter().map(|&i| e[i]).collect();
            *counts.entry(key).or_default() += 1;
        }
    }
    counts
}

/// ‖H‖_{t,p} = Σ_{T ∈ binom(V,t)} d_H(T)^p. Requires 1 <= t < r and p > 0;
/// t-sets of codegree zero contribute nothing, so only covered t-sets are
/// enumerated.
pub fn tp_norm(h: &Hypergraph, t: usize, p: f64) -> Result<NormValue> {
    if t < 1 || t >= h.r() {
        return Err(invalid_param(format!("t = {t} must satisfy 1 <= t < r = {}", h.r())));
    }
    if p <= 0.0 {
        return Err(invalid_param("tp_norm requires p > 0 (p = 0 would make 0^0 ambiguous)"));
    }
    let counts = t_set_degrees(h, t);
    let v = match as_integer_exponent(p) {
        Some(k) => NormValue::exact(counts.values().map(|&d| pow_u128(d, k)).sum()),
        None => NormValue::approx(counts.values().map(|&d| (d as f64).powf(p)).sum()),
    };
    Ok(v)
}

/// Number of K_r cliques of `g` containing the clique `s`, via extension
/// counting inside the common neighborhood.
fn count_extensions(adj: &[Vec<bool>], s: &[usize], r: usize) -> u64 {
    let n = adj.len();
    let common: Vec<usize> = (0..n)
        .filter(|&v| !s.contains(&v) && s.iter().all(|&u| adj[u][v]))
        .collect();
    let need = r - s.len();
    let mut count = 0u64;
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((start, cur)) = stack.pop() {
        if cur.len() == need {
            count += 1;
            continue;
        }
        for (i, &v) in common.iter().enumerate().skip(start) {
            if cur.iter().all(|&u| adj[u][v]) {
                let mut next = cur.clone();
                next.push(v);
                stack.push((i + 1, next));
            }
        }
    }
    count
}

/// ‖G‖_{t,r,p} = Σ over K_t-inducing t-sets S of d_{G,r}(S)^p, for a 2-graph G.
pub fn trp_norm(g: &Hypergraph, t: usize, r: usize, p: f64) -> Result<NormValue> {
    if g.r() != 2 {
        return Err(invalid_param("trp_norm is defined for 2-graphs"));
    }
    if t >= r {
        return Err(invalid_param(format!("need t = {t} < r = {r}")));
    }
    if p <= 0.0 {
        return Err(invalid_param("trp_norm requires p > 0"));
    }
    let degrees = clique_extension_degrees(g, t, r);
    let v = match as_integer_exponent(p) {
        Some(k) => NormValue::exact(degrees.iter().map(|&d| pow_u128(d, k)).sum()),
        None => NormValue::approx(degrees.iter().map(|&d| (d as f64).powf(p)).sum()),
    };
    Ok(v)
}

/// d_{G,r}(S) for every t-set S inducing a K_t (in lexicographic order of S).
pub fn clique_extension_degrees(g: &Hypergraph, t: usize, r: usize) -> Vec<u64> {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        adj[e[0]][e[1]] = true;
        adj[e[1]][e[0]] = true;
    }
    subsets(n, t)
        .into_iter()
        .filter(|s| {
            s.iter()
                .enumerate()
                .all(|(i, &u)| s[i + 1..].iter().all(|&v| adj[u][v]))
        })
        .map(|s| count_extensions(&adj, &s, r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn k(n: usize) -> Hypergraph {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Hypergraph::graph(n, &pairs).unwrap()
    }

    #[test]
    fn triangle_two_norm() {
        let v = p_norm(&k(3), 2.0).unwrap();
        assert!(v.exact);
        assert_eq!(v.value, 12.0);
    }

    #[test]
    fn star_two_norm() {
        let star = Hypergraph::graph(10, &(1..10).map(|i| (0, i)).collect::<Vec<_>>()).unwrap();
        assert_eq!(p_norm(&star, 2.0).unwrap().value, 90.0);
    }

    #[test]
    fn polarity_er2_two_norm() {
        // degree-sum oracle: 3 vertices of degree 2, 4 of degree 3
        let er2 = constructions::polarity_graph(2).unwrap();
        let mut degs = er2.degrees();
        degs.sort_unstable();
        assert_eq!(degs, vec![2, 2, 2, 3, 3, 3, 3]);
        assert_eq!(p_norm(&er2, 2.0).unwrap().value, 48.0);
    }

    #[test]
    fn one_norm_is_r_times_edges() {
        let h = Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 3, 5]]).unwrap();
        assert_eq!(p_norm(&h, 1.0).unwrap().value, (3 * h.edge_count()) as f64);
    }

    #[test]
    fn negative_p_rejected() {
        assert!(p_norm(&k(3), -1.0).is_err());
    }

    #[test]
    fn zero_p_counts_nonisolated() {
        let h = Hypergraph::graph(4, &[(0, 1)]).unwrap();
        assert_eq!(p_norm(&h, 0.0).unwrap().value, 2.0);
    }

    #[test]
    fn complete_3graph_tp_norm() {
        // K^3 on 4 vertices: every pair lies in exactly 2 edges
        let h = Hypergraph::new(
            3,
            4,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        assert_eq!(tp_norm(&h, 2, 2.0).unwrap().value, 24.0);
    }

    #[test]
    fn tp_norm_t1_reduces_to_p_norm() {
        let h = Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 4, 5]]).unwrap();
        for p in [1.0, 2.0, 2.5] {
            assert!(
                (tp_norm(&h, 1, p).unwrap().value - p_norm(&h, p).unwrap().value).abs() < 1e-9
            );
        }
    }

    #[test]
    fn star_like_pair_degree_sum() {
        // S^3(6,2), t=2, p=1 equals 3|edges| = 36 by the pair-degree identity;
        // cross-check against brute-force enumeration of covered pairs.
        let h = constructions::star_like(3, 6, 2).unwrap();
        assert_eq!(h.edge_count(), 12);
        let brute: u64 = t_set_degrees(&h, 2).values().sum();
        assert_eq!(brute, 36);
        assert_eq!(tp_norm(&h, 2, 1.0).unwrap().value, 36.0);
    }

    #[test]
    fn k4_triangle_norm() {
        assert_eq!(trp_norm(&k(4), 2, 3, 1.0).unwrap().value, 12.0);
    }

    #[test]
    fn petersen_is_triangle_free() {
        let g = constructions::petersen();
        assert_eq!(trp_norm(&g, 1, 3, 2.0).unwrap().value, 0.0);
        assert_eq!(clique_extension_degrees(&g, 2, 3).iter().sum::<u64>(), 0);
    }

    #[test]
    fn tp_norm_rejects_bad_t_and_p() {
        let h = Hypergraph::new(3, 4, vec![vec![0, 1, 2]]).unwrap();
        assert!(tp_norm(&h, 0, 1.0).is_err());
        assert!(tp_norm(&h, 3, 1.0).is_err());
        assert!(tp_norm(&h, 2, 0.0).is_err());
        assert!(trp_norm(&k(4), 3, 3, 1.0).is_err());
    }
}
