//! Canonical labelling by degree refinement plus individualization
//! backtracking. Works for r-graphs of any uniformity; correctness is
//! cross-checked against brute-force isomorphism on small graphs.

use std::collections::HashMap;

use crate::hypergraph::{Edge, Hypergraph};

/// Equitable refinement: cells keyed by (previous cell, multiset of
/// edge-signatures). Returns the ordered partition as a cell id per vertex,
/// with cell ids compact and signature-ordered.
fn refine(h: &Hypergraph, start: &[usize]) -> Vec<usize> {
    let n = h.n();
    let mut cell = start.to_vec();
    loop {
        let mut sigs: Vec<(usize, Vec<Vec<usize>>)> = (0..n).map(|v| (cell[v], Vec::new())).collect();
        for e in h.edges() {
            for &v in e {
                let mut others: Vec<usize> =
                    e.iter().filter(|&&u| u != v).map(|&u| cell[u]).collect();
                others.sort_unstable();
                sigs[v].1.push(others);
            }
        }
        for s in &mut sigs {
            s.1.sort_unstable();
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut next = vec![0usize; n];
        let mut id = 0usize;
        for w in 0..n {
            if w > 0 && sigs[order[w]] != sigs[order[w - 1]] {
                id += 1;
            }
            next[order[w]] = id;
        }
        if next == cell {
            return cell;
        }
        cell = next;
    }
}

fn relabel_edges(h: &Hypergraph, label: &[usize]) -> Vec<Edge> {
    let mut edges: Vec<Edge> = h
        .edges()
        .iter()
        .map(|e| {
            let mut f: Edge = e.iter().map(|&v| label[v]).collect();
            f.sort_unstable();
            f
        })
        .collect();
    edges.sort_unstable();
    edges
}

fn cells_of(partition: &[usize]) -> Vec<Vec<usize>> {
    let ncells = partition.iter().copied().max().map_or(0, |m| m + 1);
    let mut cells = vec![Vec::new(); ncells];
    for (v, &c) in partition.iter().enumerate() {
        cells[c].push(v);
    }
    cells
}

fn search(h: &Hypergraph, partition: Vec<usize>, best: &mut Option<(Vec<Edge>, Vec<usize>)>) {
    let cells = cells_of(&partition);
    if let Some(target) = cells.iter().position(|c| c.len() > 1) {
        for &v in &cells[target] {
            // individualize v: give it its own cell in front of its old cell
            let mut next = partition.clone();
            for u in 0..next.len() {
                if next[u] > partition[v] || (next[u] == partition[v] && u != v) {
                    next[u] += 1;
                }
            }
            search(h, refine(h, &next), best);
        }
    } else {
        // discrete partition: cell id is the label
        let label = partition;
        let edges = relabel_edges(h, &label);
        let better = match best {
            None => true,
            Some((b, _)) => edges < *b,
        };
        if better {
            *best = Some((edges, label));
        }
    }
}

/// Canonical edge list: minimal relabelled edge list over the
/// individualization-refinement leaves (isomorphism invariant).
pub fn canonical_edges(h: &Hypergraph) -> Vec<Edge> {
    canonical_labeling(h).0
}

/// Canonical edge list together with the winning relabelling
/// (old label -> new label).
pub fn canonical_labeling(h: &Hypergraph) -> (Vec<Edge>, Vec<usize>) {
    let start = refine(h, &vec![0; h.n()]);
    let mut best = None;
    search(h, start, &mut best);
    best.expect("at least one leaf labelling")
}

/// The canonically relabelled copy of h.
pub fn canonical_graph(h: &Hypergraph) -> Hypergraph {
    Hypergraph::new(h.r(), h.n(), canonical_edges(h)).expect("relabelling preserves validity")
}

pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.r() == b.r() && a.n() == b.n() && canonical_edges(a) == canonical_edges(b)
}

/// Brute-force isomorphism over all bijections, the oracle for canon tests.
pub fn are_isomorphic_brute(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.r() != b.r() || a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    let target: HashMap<&Edge, ()> = b.edges().iter().map(|e| (e, ())).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_check(a, &target, &mut perm, 0)
}

fn permute_check(
    a: &Hypergraph,
    target: &HashMap<&Edge, ()>,
    perm: &mut Vec<usize>,
    k: usize,
) -> bool {
    if k == perm.len() {
        return a.edges().iter().all(|e| {
            let mut f: Edge = e.iter().map(|&v| perm[v]).collect();
            f.sort_unstable();
            target.contains_key(&f)
        });
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permute_check(a, target, perm, k + 1) {
            perm.swap(k, i);
            return true;
        }
        perm.swap(k, i);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn relabelled_path_canonicalizes() {
        let a = Hypergraph::graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Hypergraph::graph(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert!(are_isomorphic(&a, &b));
        assert_eq!(canonical_edges(&a), canonical_edges(&b));
    }

    #[test]
    fn distinguishes_nonisomorphic() {
        let path = Hypergraph::graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Hypergraph::graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!are_isomorphic(&path, &star));
    }

    #[test]
    fn petersen_self_isomorphic_under_relabel() {
        let g = constructions::petersen();
        let perm: Vec<usize> = (0..10).map(|v| (v * 3 + 1) % 10).collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        let h = Hypergraph::new(2, 10, edges).unwrap();
        assert_eq!(canonical_edges(&g), canonical_edges(&h));
    }

    #[test]
    fn hypergraph_canonical() {
        let a = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let b = Hypergraph::new(3, 5, vec![vec![4, 3, 1], vec![1, 0, 2]]).unwrap();
        assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        // every pair of graphs on 5 vertices with 4 edges drawn from a pool
        let pool = [
            Hypergraph::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap(),
            Hypergraph::graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(),
            Hypergraph::graph(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap(),
            Hypergraph::graph(5, &[(1, 0), (2, 1), (3, 2), (0, 3)]).unwrap(),
            Hypergraph::graph(5, &[(4, 0), (0, 2), (2, 3), (3, 1)]).unwrap(),
        ];
        for a in &pool {
            for b in &pool {
                assert_eq!(are_isomorphic(a, b), are_isomorphic_brute(a, b));
            }
        }
    }
}
