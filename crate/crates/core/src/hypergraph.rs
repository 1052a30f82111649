//! Value types for r-uniform hypergraphs and two-sided bipartite graphs.
//!
//! Vertices are 0-based labels. Edges are stored sorted, and the edge list
//! itself is sorted lexicographically with duplicates removed, so equal
//! graphs have equal representations.

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{invalid_param, Error, Result};

/// An edge of an r-graph: a sorted r-subset of the vertex labels.
pub type Edge = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Edge>,
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            r: usize,
            n: usize,
            edges: Vec<Edge>,
        }
        let repr = Repr::deserialize(d)?;
        Hypergraph::new(repr.r, repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

impl Hypergraph {
    pub fn new(r: usize, n: usize, edges: Vec<Edge>) -> Result<Self> {
        if r < 2 {
            return Err(invalid_param(format!("uniformity r = {r} must be at least 2")));
        }
        let mut canon = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::InvalidInput(format!(
                    "edge {e:?} has {} vertices, expected {r}",
                    e.len()
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("edge {e:?} has a repeated vertex")));
            }
            if *e.last().unwrap() >= n {
                return Err(Error::InvalidInput(format!(
                    "edge {e:?} out of range for n = {n}"
                )));
            }
            canon.push(e);
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Self { r, n, edges: canon })
    }

    /// An edgeless graph on `n` vertices.
    pub fn empty(r: usize, n: usize) -> Self {
        Self { r, n, edges: Vec::new() }
    }

    /// A simple 2-graph from a pair list.
    pub fn graph(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(2, n, pairs.iter().map(|&(a, b)| vec![a, b]).collect())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::from_degrees(self.degrees())
    }

    /// Adjacency lists, defined for 2-graphs only.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        assert_eq!(self.r, 2, "adjacency lists are defined for 2-graphs");
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e[0]].push(e[1]);
            adj[e[1]].push(e[0]);
        }
        adj
    }

    /// Row bitsets of the adjacency matrix; requires n <= 64.
    pub fn adjacency_bits(&self) -> Vec<u64> {
        assert_eq!(self.r, 2);
        assert!(self.n <= 64, "bitset adjacency needs n <= 64");
        let mut rows = vec![0u64; self.n];
        for e in &self.edges {
            rows[e[0]] |= 1 << e[1];
            rows[e[1]] |= 1 << e[0];
        }
        rows
    }

    pub fn has_edge(&self, e: &[usize]) -> bool {
        let mut key = e.to_vec();
        key.sort_unstable();
        self.edges.binary_search(&key).is_ok()
    }

    /// Subgraph induced on `verts`, relabelled to 0..verts.len().
    pub fn induced(&self, verts: &[usize]) -> Hypergraph {
        let mut sorted = verts.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in sorted.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| pos[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| pos[v]).collect())
            .collect();
        Hypergraph { r: self.r, n: sorted.len(), edges }
    }

    /// Edges fully inside `verts`, keeping the original labels and n.
    pub fn restrict(&self, verts: &[usize]) -> Hypergraph {
        let mut keep = vec![false; self.n];
        for &v in verts {
            keep[v] = true;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| keep[v]))
            .cloned()
            .collect();
        Hypergraph { r: self.r, n: self.n, edges }
    }

    /// Edges meeting each part exactly once (the r-partite selection H[V_1,...,V_r]).
    pub fn partite_selection(&self, parts: &[Vec<usize>]) -> Hypergraph {
        assert_eq!(parts.len(), self.r);
        let mut part_of = vec![usize::MAX; self.n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                part_of[v] = i;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| {
                let mut seen = vec![false; self.r];
                for &v in e.iter() {
                    let i = part_of[v];
                    if i == usize::MAX || seen[i] {
                        return false;
                    }
                    seen[i] = true;
                }
                true
            })
            .cloned()
            .collect();
        Hypergraph { r: self.r, n: self.n, edges }
    }

    pub fn with_edge(&self, e: Edge) -> Result<Hypergraph> {
        let mut edges = self.edges.clone();
        edges.push(e);
        Hypergraph::new(self.r, self.n, edges)
    }

    pub fn without_edge(&self, e: &[usize]) -> Hypergraph {
        let mut key = e.to_vec();
        key.sort_unstable();
        let edges = self.edges.iter().filter(|x| **x != key).cloned().collect();
        Hypergraph { r: self.r, n: self.n, edges }
    }

    /// Number of non-isolated vertices.
    pub fn support_size(&self) -> usize {
        self.degrees().iter().filter(|&&d| d > 0).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BipartiteGraph {
    m: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl<'de> Deserialize<'de> for BipartiteGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            m: usize,
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        let repr = Repr::deserialize(d)?;
        BipartiteGraph::new(repr.m, repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

impl BipartiteGraph {
    pub fn new(m: usize, n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &edges {
            if i >= m || j >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({i},{j}) out of range for {m}x{n} bipartite graph"
                )));
            }
        }
        let mut edges = edges;
        edges.sort_unstable();
        edges.dedup();
        Ok(Self { m, n, edges })
    }

    pub fn empty(m: usize, n: usize) -> Self {
        Self { m, n, edges: Vec::new() }
    }

    pub fn complete(m: usize, n: usize) -> Self {
        let edges = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Self { m, n, edges }
    }

    pub fn left_size(&self) -> usize {
        self.m
    }

    pub fn right_size(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn left_degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.m];
        for &(i, _) in &self.edges {
            d[i] += 1;
        }
        d
    }

    pub fn right_degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n];
        for &(_, j) in &self.edges {
            d[j] += 1;
        }
        d
    }

    /// Right-neighborhoods of left vertices.
    pub fn left_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.m];
        for &(i, j) in &self.edges {
            adj[i].push(j);
        }
        adj
    }

    /// Left-neighborhoods of right vertices.
    pub fn right_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[j].push(i);
        }
        adj
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&(i, j)).is_ok()
    }

    /// The same graph with sides swapped.
    pub fn transpose(&self) -> BipartiteGraph {
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|&(i, j)| (j, i)).collect();
        edges.sort_unstable();
        BipartiteGraph { m: self.n, n: self.m, edges }
    }

    /// As a 2-graph on m + n vertices, left side first.
    pub fn to_hypergraph(&self) -> Hypergraph {
        let edges = self.edges.iter().map(|&(i, j)| vec![i, self.m + j]).collect();
        Hypergraph { r: 2, n: self.m + self.n, edges }
    }

    /// Subgraph induced on given side subsets, relabelled.
    pub fn induced(&self, left: &[usize], right: &[usize]) -> BipartiteGraph {
        let mut lpos = vec![usize::MAX; self.m];
        let mut rpos = vec![usize::MAX; self.n];
        let (mut ls, mut rs) = (left.to_vec(), right.to_vec());
        ls.sort_unstable();
        ls.dedup();
        rs.sort_unstable();
        rs.dedup();
        for (i, &v) in ls.iter().enumerate() {
            lpos[v] = i;
        }
        for (j, &v) in rs.iter().enumerate() {
            rpos[v] = j;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| lpos[i] != usize::MAX && rpos[j] != usize::MAX)
            .map(|&(i, j)| (lpos[i], rpos[j]))
            .collect();
        BipartiteGraph { m: ls.len(), n: rs.len(), edges }
    }
}

/// Which degree sum a bipartite norm ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A computed norm. `exact` is set when the value was obtained in integer
/// arithmetic, which requires a nonnegative integer exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormValue {
    pub value: f64,
    pub exact: bool,
}

impl NormValue {
    pub fn exact(v: u128) -> Self {
        NormValue { value: v as f64, exact: true }
    }

    pub fn approx(value: f64) -> Self {
        NormValue { value, exact: false }
    }
}

/// Either kind of host graph; searches and certificates range over both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Host {
    Hyper(Hypergraph),
    Bipartite(BipartiteGraph),
}

impl Host {
    pub fn vertex_count(&self) -> usize {
        match self {
            Host::Hyper(h) => h.n(),
            Host::Bipartite(g) => g.left_size() + g.right_size(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Host::Hyper(h) => h.edge_count(),
            Host::Bipartite(g) => g.edge_count(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<u64>,
    pub max: u64,
    pub min: u64,
    pub avg: f64,
}

impl DegreeProfile {
    pub fn from_degrees(degrees: Vec<u64>) -> Self {
        let max = degrees.iter().copied().max().unwrap_or(0);
        let min = degrees.iter().copied().min().unwrap_or(0);
        let sum: u64 = degrees.iter().sum();
        let avg = if degrees.is_empty() { 0.0 } else { sum as f64 / degrees.len() as f64 };
        DegreeProfile { degrees, max, min, avg }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(Hypergraph::new(2, 3, vec![vec![0, 0]]).is_err());
        assert!(Hypergraph::new(2, 3, vec![vec![0, 3]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1]]).is_err());
        assert!(Hypergraph::new(1, 3, vec![]).is_err());
    }

    #[test]
    fn canonical_edge_order() {
        let h = Hypergraph::graph(3, &[(2, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn degree_sum_is_r_times_edges() {
        let h = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]]).unwrap();
        let sum: u64 = h.degrees().iter().sum();
        assert_eq!(sum as usize, 3 * h.edge_count());
    }

    #[test]
    fn bipartite_degree_sums_match() {
        let g = BipartiteGraph::new(2, 3, vec![(0, 0), (0, 2), (1, 1)]).unwrap();
        let l: u64 = g.left_degrees().iter().sum();
        let r: u64 = g.right_degrees().iter().sum();
        assert_eq!(l, g.edge_count() as u64);
        assert_eq!(r, g.edge_count() as u64);
    }

    #[test]
    fn induced_relabels() {
        let h = Hypergraph::graph(5, &[(0, 2), (2, 4), (1, 3)]).unwrap();
        let sub = h.induced(&[0, 2, 4]);
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edges(), &[vec![0, 1], vec![1, 2]]);
    }
}
