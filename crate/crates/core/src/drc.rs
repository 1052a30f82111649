//! Dependent random choice embedding: sample anchors on the richer side,
//! intersect neighborhoods, prune bad subsets, then greedily embed the
//! ordered bipartite pattern.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Result};
use crate::hypergraph::{BipartiteGraph, Side};
use crate::patterns::PatternSpec;
use crate::util::{binom_f64, factorial, subsets};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DrcReport {
    /// Side the anchors were drawn from (the richer side by Σ d^s).
    pub anchor_side: Side,
    pub s: usize,
    pub t: usize,
    /// Anchors of the successful (or last) trial, as side-local labels.
    pub anchors: Vec<usize>,
    /// Common neighborhood of the anchors, side-local labels.
    pub x: Vec<usize>,
    /// X after deleting one vertex per bad s-subset.
    pub x_pruned: Vec<usize>,
    /// Map pattern-vertex -> combined host label (left 0..m, right m..m+n).
    pub embedding: Option<Vec<usize>>,
    /// Σ_{richer side} d^s >= C·n^s/2 with C = 2(|V(F)|^s/s! + |V(F)|).
    pub precondition_ok: bool,
    pub c_constant: f64,
    /// E[|X|] = Σ_{v in other side} (d(v)/n)^s, recomputed from degrees.
    pub expected_x: f64,
    /// E[|Y|] <= C(|other|, s)·(t/n)^s bound on bad-set deletions.
    pub expected_bad: f64,
    pub trials_used: usize,
}

/// Common neighbors (in the anchor side) of a set of other-side vertices.
fn common_neighbors(adj_other: &[Vec<usize>], of: &[usize], anchor_count: usize) -> Vec<usize> {
    let mut count = vec![0usize; anchor_count];
    for &v in of {
        for &u in &adj_other[v] {
            count[u] += 1;
        }
    }
    (0..anchor_count).filter(|&u| count[u] == of.len()).collect()
}

/// Run the DRC procedure. The pattern must be an ordered 2-graph; s is its
/// maximum W2-degree, t = |W2|.
pub fn drc_embed(
    g: &BipartiteGraph,
    spec: &PatternSpec,
    trials: usize,
    seed: u64,
) -> Result<DrcReport> {
    spec.validate()?;
    let (w1, w2) = spec
        .ordered
        .as_ref()
        .ok_or_else(|| invalid_param("drc_embed needs an ordered pattern"))?;
    if spec.pattern.r() != 2 {
        return Err(invalid_param("drc_embed needs a 2-graph pattern"));
    }
    if trials == 0 {
        return Err(invalid_param("drc_embed needs trials >= 1"));
    }
    let f = &spec.pattern;
    let fdeg = f.degrees();
    let s = w2.iter().map(|&v| fdeg[v] as usize).max().unwrap_or(0);
    let t = w2.len();
    if s == 0 {
        return Err(invalid_param("pattern W2 side has no edges; nothing to embed"));
    }

    // richer side by sum of s-th powers of degrees
    let ls: f64 = g.left_degrees().iter().map(|&d| (d as f64).powi(s as i32)).sum();
    let rs: f64 = g.right_degrees().iter().map(|&d| (d as f64).powi(s as i32)).sum();
    let anchor_side = if ls >= rs { Side::Left } else { Side::Right };
    // adjacency from each side; "anchor" = richer side, "other" = opposite
    let (_anchor_adj, other_adj, anchor_n, other_n) = match anchor_side {
        Side::Left => (g.left_neighbors(), g.right_neighbors(), g.left_size(), g.right_size()),
        Side::Right => (g.right_neighbors(), g.left_neighbors(), g.right_size(), g.left_size()),
    };
    if anchor_n == 0 || other_n == 0 {
        return Err(invalid_param("host has an empty side"));
    }

    let vf = f.n() as f64;
    let c_constant = 2.0 * (vf.powi(s as i32) / factorial(s as u64) as f64 + vf);
    let n_scale = anchor_n as f64;
    let richer_norm = ls.max(rs);
    let precondition_ok = richer_norm >= c_constant * n_scale.powi(s as i32) / 2.0;
    let expected_x: f64 = (0..other_n)
        .map(|v| (other_adj[v].len() as f64 / n_scale).powi(s as i32))
        .sum();
    let expected_bad =
        binom_f64(other_n as f64, s as u64) * (t as f64 / n_scale).powi(s as i32);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = (Vec::new(), Vec::new(), Vec::new());
    let mut embedding = None;
    let mut trials_used = 0;
    for _ in 0..trials {
        trials_used += 1;
        let anchors: Vec<usize> = (0..s).map(|_| rng.gen_range(0..anchor_n)).collect();
        // X = vertices of the other side adjacent to every anchor
        let anchor_set: Vec<usize> = {
            let mut a = anchors.clone();
            a.sort_unstable();
            a.dedup();
            a
        };
        let x: Vec<usize> = (0..other_n)
            .filter(|&v| {
                let nb: HashSet<usize> = other_adj[v].iter().copied().collect();
                anchor_set.iter().all(|u| nb.contains(u))
            })
            .collect();
        // prune: delete the lexicographically smallest vertex of every bad
        // s-subset (<= t common neighbors), scanning subsets in order
        let mut alive: Vec<usize> = x.clone();
        if x.len() >= s {
            for idxs in subsets(x.len(), s) {
                let sub: Vec<usize> = idxs.iter().map(|&i| x[i]).collect();
                if sub.iter().any(|v| !alive.contains(v)) {
                    continue;
                }
                if common_neighbors(&other_adj, &sub, anchor_n).len() <= t {
                    alive.retain(|v| *v != sub[0]);
                }
            }
        }
        let x_pruned = alive;
        last = (anchors.clone(), x.clone(), x_pruned.clone());
        // greedy embedding: W1 into the pruned set (fall back to X when the
        // pruned set is too small), W2 by decreasing degree into the anchors
        for pool in [&x_pruned, &x] {
            if let Some(map) = try_embed(f, w1, w2, pool, &other_adj, anchor_n) {
                embedding = Some(map);
                break;
            }
        }
        if embedding.is_some() {
            break;
        }
    }

    // translate to combined labels and verify the copy edge-by-edge
    let embedding = embedding.map(|map| {
        let combined: Vec<usize> = (0..f.n())
            .map(|v| {
                let (side_label, on_other) = map[v];
                match (anchor_side, on_other) {
                    (Side::Left, true) | (Side::Right, false) => g.left_size() + side_label,
                    _ => side_label,
                }
            })
            .collect();
        combined
    });
    if let Some(comb) = &embedding {
        let edge_set: HashSet<(usize, usize)> = g.edges().iter().copied().collect();
        for e in f.edges() {
            let (a, b) = (comb[e[0]], comb[e[1]]);
            let (l, r) = if a < g.left_size() { (a, b - g.left_size()) } else { (b, a - g.left_size()) };
            assert!(edge_set.contains(&(l, r)), "drc produced an invalid copy");
        }
    }

    Ok(DrcReport {
        anchor_side,
        s,
        t,
        anchors: last.0,
        x: last.1,
        x_pruned: last.2,
        embedding,
        precondition_ok,
        c_constant,
        expected_x,
        expected_bad,
        trials_used,
    })
}

/// Greedy embed: W1 injectively into `pool` (other side), then W2 vertices
/// by decreasing degree into unused common neighbors (anchor side).
/// Returns per-vertex (side-local label, is-other-side).
fn try_embed(
    f: &crate::hypergraph::Hypergraph,
    w1: &[usize],
    w2: &[usize],
    pool: &[usize],
    other_adj: &[Vec<usize>],
    anchor_n: usize,
) -> Option<Vec<(usize, bool)>> {
    if pool.len() < w1.len() {
        return None;
    }
    let mut map = vec![(usize::MAX, false); f.n()];
    for (i, &v) in w1.iter().enumerate() {
        map[v] = (pool[i], true);
    }
    let fdeg = f.degrees();
    let mut order: Vec<usize> = w2.to_vec();
    order.sort_by_key(|&v| std::cmp::Reverse(fdeg[v]));
    let mut used: HashSet<usize> = HashSet::new();
    for &v in &order {
        let nbrs: Vec<usize> = f
            .edges()
            .iter()
            .filter(|e| e.contains(&v))
            .map(|e| if e[0] == v { e[1] } else { e[0] })
            .map(|u| map[u].0)
            .collect();
        let candidates = common_neighbors(other_adj, &nbrs, anchor_n);
        match candidates.into_iter().find(|c| !used.contains(c)) {
            Some(c) => {
                used.insert(c);
                map[v] = (c, false);
            }
            None => return None,
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::patterns::registry;

    #[test]
    fn k44_embeds_k22() {
        let g = constructions::complete_bipartite(4, 4);
        let rep = drc_embed(&g, &registry("K2,2").unwrap(), 4, 0).unwrap();
        assert!(rep.embedding.is_some());
        assert_eq!((rep.s, rep.t), (2, 2));
        assert_eq!(rep.trials_used, 1);
    }

    #[test]
    fn k33_embeds_itself() {
        let g = constructions::complete_bipartite(3, 3);
        let rep = drc_embed(&g, &registry("K3,3").unwrap(), 4, 0).unwrap();
        assert!(rep.embedding.is_some());
    }

    #[test]
    fn c4_free_host_never_embeds_c4() {
        // Fano plane point-line incidence (Heawood graph): girth 6, so no
        // two lines share two points and no K2,2 exists
        let lines = [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ];
        let edges: Vec<(usize, usize)> = lines
            .iter()
            .enumerate()
            .flat_map(|(l, pts)| pts.iter().map(move |&p| (p, l)))
            .collect();
        let g = BipartiteGraph::new(7, 7, edges).unwrap();
        let rep = drc_embed(&g, &registry("K2,2").unwrap(), 32, 1).unwrap();
        assert!(rep.embedding.is_none());
        assert!(rep.trials_used == 32);
    }

    #[test]
    fn sparse_host_fails_precondition() {
        let g = BipartiteGraph::new(8, 8, vec![(0, 0), (1, 1), (2, 2)]).unwrap();
        let rep = drc_embed(&g, &registry("K2,2").unwrap(), 4, 0).unwrap();
        assert!(!rep.precondition_ok);
        assert!(rep.embedding.is_none());
        // C for C4 with s = 2: 2(16/2 + 4) = 24
        assert_eq!(rep.c_constant, 24.0);
    }

    #[test]
    fn unordered_pattern_rejected() {
        let g = constructions::complete_bipartite(3, 3);
        let spec = PatternSpec::unordered(constructions::cycle_graph(4));
        assert!(drc_embed(&g, &spec, 4, 0).is_err());
    }
}
