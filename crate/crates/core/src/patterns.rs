//! Forbidden-pattern machinery: containment tests, ordered-copy tests for
//! bipartite hosts, partition/independent covering numbers, book counts,
//! and the named-pattern registry.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Error, Result};
use crate::hypergraph::{BipartiteGraph, Edge, Host, Hypergraph};
use crate::norms::clique_extension_degrees;
use crate::util::{binom, subsets};

/// A forbidden pattern or family. `pattern` is the representative member;
/// `family`, when present, lists every member (families like C<=2l).
/// `ordered` holds a bipartition (W1, W2) of the pattern vertices for
/// Zarankiewicz-style ordered containment in bipartite hosts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatternSpec {
    pub name: Option<String>,
    pub pattern: Hypergraph,
    pub family: Option<Vec<Hypergraph>>,
    pub ordered: Option<(Vec<usize>, Vec<usize>)>,
    #[serde(skip)]
    pub cache: Option<TauReport>,
}

impl PatternSpec {
    pub fn unordered(pattern: Hypergraph) -> Self {
        PatternSpec { name: None, pattern, family: None, ordered: None, cache: None }
    }

    pub fn named(name: &str, pattern: Hypergraph) -> Self {
        PatternSpec { name: Some(name.to_string()), ..Self::unordered(pattern) }
    }

    pub fn members(&self) -> Vec<&Hypergraph> {
        match &self.family {
            Some(f) => f.iter().collect(),
            None => vec![&self.pattern],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some((w1, w2)) = &self.ordered {
            let n = self.pattern.n();
            let mut seen = vec![false; n];
            for &v in w1.iter().chain(w2.iter()) {
                if v >= n || seen[v] {
                    return Err(invalid_param("ordered bipartition must cover V(pattern) disjointly"));
                }
                seen[v] = true;
            }
            if !seen.iter().all(|&s| s) {
                return Err(invalid_param("ordered bipartition must cover V(pattern)"));
            }
            let left: HashSet<usize> = w1.iter().copied().collect();
            for e in self.pattern.edges() {
                let in_left = e.iter().filter(|v| left.contains(v)).count();
                if in_left == 0 || in_left == e.len() {
                    return Err(invalid_param("every pattern edge must cross the ordered bipartition"));
                }
            }
        }
        if let Some(c) = &self.cache {
            if let (Some(ti), Some(tp)) = (c.tau_ind, c.tau_part) {
                if ti > tp {
                    return Err(invalid_param("cached tau values must satisfy tau_ind <= tau_part"));
                }
            }
        }
        Ok(())
    }

    /// τ values of the representative pattern, computed once and cached.
    pub fn tau(&mut self) -> &TauReport {
        if self.cache.is_none() {
            self.cache = Some(tau_values(&self.pattern));
        }
        self.cache.as_ref().unwrap()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FreenessWitness {
    pub free: bool,
    /// Injective map pattern-vertex -> host-vertex, present iff not free.
    /// For bipartite hosts the right side is offset by the left part size.
    pub embedding: Option<Vec<usize>>,
    /// Index into `spec.members()` of the member found, when not free.
    pub member: Option<usize>,
}

impl FreenessWitness {
    fn free() -> Self {
        FreenessWitness { free: true, embedding: None, member: None }
    }
}

/// Exact containment test. Unordered mode embeds each family member into the
/// host (bipartite hosts are viewed as 2-graphs); ordered mode requires a
/// bipartite host and maps W1 into the left part, W2 into the right part.
pub fn is_free(host: &Host, spec: &PatternSpec) -> Result<FreenessWitness> {
    spec.validate()?;
    // ordered mode applies when the host is bipartite and the spec carries a
    // bipartition; hypergraph hosts always get unordered containment
    if let (Some((w1, w2)), Host::Bipartite(g)) = (&spec.ordered, host) {
        if spec.pattern.r() != 2 {
            return Err(invalid_param("ordered patterns must be 2-graphs"));
        }
        return Ok(match embed_ordered(&spec.pattern, w1, w2, g) {
            Some(map) => FreenessWitness { free: false, embedding: Some(map), member: Some(0) },
            None => FreenessWitness::free(),
        });
    }
    let owned;
    let h = match host {
        Host::Hyper(h) => h,
        Host::Bipartite(g) => {
            owned = g.to_hypergraph();
            &owned
        }
    };
    for (i, member) in spec.members().iter().enumerate() {
        if member.r() != h.r() {
            return Err(invalid_param(format!(
                "uniformity mismatch: pattern is {}-uniform, host is {}-uniform",
                member.r(),
                h.r()
            )));
        }
        if let Some(map) = embed_sub(member, h) {
            return Ok(FreenessWitness { free: false, embedding: Some(map), member: Some(i) });
        }
    }
    Ok(FreenessWitness::free())
}

/// Backtracking subgraph embedding with degree pruning and a
/// most-connected-first vertex order. Returns pattern->host map.
pub fn embed_sub(pattern: &Hypergraph, host: &Hypergraph) -> Option<Vec<usize>> {
    let pn = pattern.n();
    if pn > host.n() || pattern.edge_count() > host.edge_count() {
        return None;
    }
    if pn == 0 {
        return Some(Vec::new());
    }
    let pdeg = pattern.degrees();
    let hdeg = host.degrees();
    let host_edges: HashSet<&Edge> = host.edges().iter().collect();

    // order: highest degree first, then most edges into the placed prefix
    let mut order: Vec<usize> = Vec::with_capacity(pn);
    let mut placed = vec![false; pn];
    let first = (0..pn).max_by_key(|&v| (pdeg[v], std::cmp::Reverse(v))).unwrap();
    order.push(first);
    placed[first] = true;
    while order.len() < pn {
        let next = (0..pn)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let attached = pattern
                    .edges()
                    .iter()
                    .filter(|e| e.contains(&v) && e.iter().any(|&u| placed[u]))
                    .count();
                (attached, pdeg[v], std::cmp::Reverse(v))
            })
            .unwrap();
        order.push(next);
        placed[next] = true;
    }
    // pattern edges grouped by the order-position at which they complete
    let pos_of: Vec<usize> = {
        let mut p = vec![0; pn];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let mut completed_at: Vec<Vec<&Edge>> = vec![Vec::new(); pn];
    for e in pattern.edges() {
        let last = e.iter().map(|&v| pos_of[v]).max().unwrap();
        completed_at[last].push(e);
    }

    let mut map = vec![usize::MAX; pn];
    let mut used = vec![false; host.n()];
    fn go(
        depth: usize,
        order: &[usize],
        completed_at: &[Vec<&Edge>],
        pdeg: &[u64],
        hdeg: &[u64],
        host_edges: &HashSet<&Edge>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let pv = order[depth];
        for hv in 0..used.len() {
            if used[hv] || hdeg[hv] < pdeg[pv] {
                continue;
            }
            map[pv] = hv;
            let ok = completed_at[depth].iter().all(|e| {
                let mut f: Edge = e.iter().map(|&u| map[u]).collect();
                f.sort_unstable();
                host_edges.contains(&f)
            });
            if ok {
                used[hv] = true;
                if go(depth + 1, order, completed_at, pdeg, hdeg, host_edges, map, used) {
                    return true;
                }
                used[hv] = false;
            }
            map[pv] = usize::MAX;
        }
        false
    }
    if go(0, &order, &completed_at, &pdeg, &hdeg, &host_edges, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Ordered embedding into a bipartite host: vertices of W1 go to the left
/// part, W2 to the right. Returned map uses host labels 0..m for the left
/// side and m..m+n for the right.
pub fn embed_ordered(
    pattern: &Hypergraph,
    w1: &[usize],
    w2: &[usize],
    host: &BipartiteGraph,
) -> Option<Vec<usize>> {
    let pn = pattern.n();
    let left: HashSet<usize> = w1.iter().copied().collect();
    if w1.len() > host.left_size() || w2.len() > host.right_size() {
        return None;
    }
    let ldeg = host.left_degrees();
    let rdeg = host.right_degrees();
    let pdeg = pattern.degrees();
    let host_edges: HashSet<(usize, usize)> = host.edges().iter().copied().collect();

    let mut order: Vec<usize> = (0..pn).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(pdeg[v]), v));
    let pos_of: Vec<usize> = {
        let mut p = vec![0; pn];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let mut completed_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); pn];
    for e in pattern.edges() {
        let (a, b) = if left.contains(&e[0]) { (e[0], e[1]) } else { (e[1], e[0]) };
        let last = pos_of[a].max(pos_of[b]);
        completed_at[last].push((a, b));
    }

    let mut map = vec![usize::MAX; pn];
    let mut used_l = vec![false; host.left_size()];
    let mut used_r = vec![false; host.right_size()];
    fn go(
        depth: usize,
        order: &[usize],
        left: &HashSet<usize>,
        completed_at: &[Vec<(usize, usize)>],
        pdeg: &[u64],
        ldeg: &[u64],
        rdeg: &[u64],
        host_edges: &HashSet<(usize, usize)>,
        map: &mut Vec<usize>,
        used_l: &mut Vec<bool>,
        used_r: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let pv = order[depth];
        let on_left = left.contains(&pv);
        let side_n = if on_left { used_l.len() } else { used_r.len() };
        for hv in 0..side_n {
            let taken = if on_left { used_l[hv] } else { used_r[hv] };
            let deg = if on_left { ldeg[hv] } else { rdeg[hv] };
            if taken || deg < pdeg[pv] {
                continue;
            }
            map[pv] = hv;
            let ok = completed_at[depth].iter().all(|&(a, b)| {
                host_edges.contains(&(map[a], map[b]))
            });
            if ok {
                if on_left { used_l[hv] = true } else { used_r[hv] = true }
                if go(depth + 1, order, left, completed_at, pdeg, ldeg, rdeg, host_edges, map, used_l, used_r) {
                    return true;
                }
                if on_left { used_l[hv] = false } else { used_r[hv] = false }
            }
            map[pv] = usize::MAX;
        }
        false
    }
    if go(
        0, &order, &left, &completed_at, &pdeg, &ldeg, &rdeg, &host_edges, &mut map,
        &mut used_l, &mut used_r,
    ) {
        // report with the combined labelling used by to_hypergraph
        Some(
            (0..pn)
                .map(|v| if left.contains(&v) { map[v] } else { host.left_size() + map[v] })
                .collect(),
        )
    } else {
        None
    }
}

/// Brute-force containment over all injections, the matcher's oracle.
pub fn contains_brute(pattern: &Hypergraph, host: &Hypergraph) -> bool {
    let pn = pattern.n();
    if pn > host.n() {
        return false;
    }
    let host_edges: HashSet<&Edge> = host.edges().iter().collect();
    let mut map = Vec::with_capacity(pn);
    let mut used = vec![false; host.n()];
    fn go(
        pattern: &Hypergraph,
        host_edges: &HashSet<&Edge>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if map.len() == pattern.n() {
            return pattern.edges().iter().all(|e| {
                let mut f: Edge = e.iter().map(|&u| map[u]).collect();
                f.sort_unstable();
                host_edges.contains(&f)
            });
        }
        for hv in 0..used.len() {
            if used[hv] {
                continue;
            }
            used[hv] = true;
            map.push(hv);
            if go(pattern, host_edges, map, used) {
                return true;
            }
            map.pop();
            used[hv] = false;
        }
        false
    }
    go(pattern, &host_edges, &mut map, &mut used)
}

/// τ_part / τ_ind of a single r-graph with lexicographically smallest
/// witnesses. None-values mean F is not r-partite (τ_part) or no independent
/// cover exists (τ_ind).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TauReport {
    pub tau_part: Option<usize>,
    pub tau_ind: Option<usize>,
    /// r-partition S_1,...,S_r achieving τ_part = |S_1|.
    pub part_witness: Option<Vec<Vec<usize>>>,
    /// Set S achieving τ_ind (every edge meets S exactly once).
    pub ind_witness: Option<Vec<usize>>,
}

pub fn tau_values(f: &Hypergraph) -> TauReport {
    let n = f.n();
    let mut ind = None;
    'ind: for s in 0..=n {
        for cand in subsets(n, s) {
            let set: HashSet<usize> = cand.iter().copied().collect();
            if f.edges().iter().all(|e| e.iter().filter(|v| set.contains(v)).count() == 1) {
                ind = Some(cand);
                break 'ind;
            }
        }
    }
    let mut part = None;
    'part: for s in 0..=n {
        for cand in subsets(n, s) {
            let set: HashSet<usize> = cand.iter().copied().collect();
            if !f.edges().iter().all(|e| e.iter().filter(|v| set.contains(v)).count() == 1) {
                continue;
            }
            if let Some(parts) = complete_partition(f, &cand) {
                part = Some(parts);
                break 'part;
            }
        }
    }
    TauReport {
        tau_part: part.as_ref().map(|p| p[0].len()),
        tau_ind: ind.as_ref().map(|s| s.len()),
        part_witness: part,
        ind_witness: ind,
    }
}

/// Strong-color V \ S1 into r-1 parts so that every edge has one vertex per
/// part; lexicographically smallest coloring via backtracking.
fn complete_partition(f: &Hypergraph, s1: &[usize]) -> Option<Vec<Vec<usize>>> {
    let r = f.r();
    let n = f.n();
    let mut color = vec![usize::MAX; n]; // 0 = S1, 1..r-1 the rest
    for &v in s1 {
        color[v] = 0;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| color[v] != 0).collect();
    fn go(f: &Hypergraph, rest: &[usize], i: usize, r: usize, color: &mut Vec<usize>) -> bool {
        if i == rest.len() {
            return true;
        }
        let v = rest[i];
        'c: for c in 1..r {
            for e in f.edges() {
                if e.contains(&v)
                    && e.iter().any(|&u| u != v && color[u] == c)
                {
                    continue 'c;
                }
            }
            color[v] = c;
            if go(f, rest, i + 1, r, color) {
                return true;
            }
            color[v] = usize::MAX;
        }
        false
    }
    if !go(f, &rest, 0, r, &mut color) {
        return None;
    }
    let mut parts = vec![Vec::new(); r];
    for v in 0..n {
        parts[color[v]].push(v);
    }
    Some(parts)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyTau {
    pub tau_part: usize,
    pub tau_ind: usize,
    /// Indices of members skipped because they are not r-partite.
    pub skipped: Vec<usize>,
}

/// Minimum τ values over the r-partite members of a family; errors if no
/// member is r-partite (the family is not degenerate).
pub fn family_tau(members: &[&Hypergraph]) -> Result<FamilyTau> {
    if members.is_empty() {
        return Err(invalid_param("family must be nonempty"));
    }
    let mut best: Option<(usize, usize)> = None;
    let mut skipped = Vec::new();
    for (i, f) in members.iter().enumerate() {
        let t = tau_values(f);
        match (t.tau_part, t.tau_ind) {
            (Some(tp), Some(ti)) => {
                best = Some(match best {
                    None => (tp, ti),
                    Some((bp, bi)) => (bp.min(tp), bi.min(ti)),
                });
            }
            _ => skipped.push(i),
        }
    }
    match best {
        Some((tau_part, tau_ind)) => Ok(FamilyTau { tau_part, tau_ind, skipped }),
        None => Err(Error::NotDegenerate("no family member is r-partite".into())),
    }
}

/// N(B_{t,r,pages}, G) = Σ over K_t-inducing t-sets S of C(d_{G,r}(S), pages).
pub fn book_count(g: &Hypergraph, t: usize, r: usize, pages: usize) -> Result<u128> {
    if g.r() != 2 {
        return Err(invalid_param("book_count is defined for 2-graphs"));
    }
    if r <= t || pages == 0 {
        return Err(invalid_param(format!("need r = {r} > t = {t} and pages = {pages} >= 1")));
    }
    Ok(clique_extension_degrees(g, t, r)
        .iter()
        .map(|&d| binom(d, pages as u64))
        .sum())
}

/// Resolve a registry name to a PatternSpec. Vocabulary:
/// `C{k}` (cycle, k >= 3, even cycles get an ordered bipartition),
/// `K{s},{t}` (complete bipartite, ordered), `P{k}` (path with k vertices),
/// `K^{r}_{s1,...,sr}` (complete r-partite r-graph), `tau-gap-3graph`,
/// `C<=2l` (the family {C4, ..., C_{2l}}).
pub fn registry(name: &str) -> Result<PatternSpec> {
    let err = || Error::Parse(format!("unknown pattern name: {name}"));
    if name == "tau-gap-3graph" {
        return Ok(PatternSpec::named(name, tau_gap_3graph()));
    }
    if let Some(rest) = name.strip_prefix("C<=") {
        let l2: usize = rest.parse().map_err(|_| err())?;
        if l2 < 4 || l2 % 2 != 0 {
            return Err(invalid_param("C<=2l requires an even bound >= 4"));
        }
        let family: Vec<Hypergraph> = (2..=l2 / 2).map(|k| cycle_pattern(2 * k)).collect();
        let mut s = PatternSpec::named(name, family[0].clone());
        s.family = Some(family);
        return Ok(s);
    }
    if let Some(rest) = name.strip_prefix("K^") {
        let (r_str, sizes_str) = rest.split_once('_').ok_or_else(err)?;
        let r: usize = r_str.parse().map_err(|_| err())?;
        let sizes: Vec<usize> = sizes_str
            .split(',')
            .map(|t| t.parse().map_err(|_| err()))
            .collect::<Result<_>>()?;
        if sizes.len() != r || sizes.iter().any(|&s| s == 0) {
            return Err(invalid_param("K^r needs r positive part sizes"));
        }
        return Ok(PatternSpec::named(name, complete_r_partite_pattern(&sizes)));
    }
    if let Some(rest) = name.strip_prefix('K') {
        let (s_str, t_str) = rest.split_once(',').ok_or_else(err)?;
        let (s, t): (usize, usize) =
            (s_str.parse().map_err(|_| err())?, t_str.parse().map_err(|_| err())?);
        if s == 0 || t == 0 {
            return Err(invalid_param("K{s},{t} needs positive sides"));
        }
        let edges = (0..s).flat_map(|i| (0..t).map(move |j| vec![i, s + j])).collect();
        let g = Hypergraph::new(2, s + t, edges)?;
        let mut spec = PatternSpec::named(name, g);
        spec.ordered = Some(((0..s).collect(), (s..s + t).collect()));
        return Ok(spec);
    }
    if let Some(rest) = name.strip_prefix('C') {
        let k: usize = rest.parse().map_err(|_| err())?;
        if k < 3 {
            return Err(invalid_param("cycles need at least 3 vertices"));
        }
        let mut spec = PatternSpec::named(name, cycle_pattern(k));
        if k % 2 == 0 {
            spec.ordered = Some((
                (0..k).step_by(2).collect(),
                (1..k).step_by(2).collect(),
            ));
        }
        return Ok(spec);
    }
    if let Some(rest) = name.strip_prefix('P') {
        let k: usize = rest.parse().map_err(|_| err())?;
        if k < 2 {
            return Err(invalid_param("paths need at least 2 vertices"));
        }
        let edges = (0..k - 1).map(|i| vec![i, i + 1]).collect();
        return Ok(PatternSpec::named(name, Hypergraph::new(2, k, edges)?));
    }
    Err(err())
}

fn cycle_pattern(k: usize) -> Hypergraph {
    let edges = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    Hypergraph::new(2, k, edges).expect("cycle is a valid 2-graph")
}

fn complete_r_partite_pattern(sizes: &[usize]) -> Hypergraph {
    let r = sizes.len();
    let n: usize = sizes.iter().sum();
    let mut starts = vec![0usize; r];
    for i in 1..r {
        starts[i] = starts[i - 1] + sizes[i - 1];
    }
    let mut edges = Vec::new();
    let mut pick = vec![0usize; r];
    loop {
        edges.push((0..r).map(|i| starts[i] + pick[i]).collect());
        let mut i = r;
        loop {
            if i == 0 {
                return Hypergraph::new(r, n, edges).expect("valid r-graph");
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < sizes[i] {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// The 12-vertex 3-graph from the τ-gap example: vertices a,b,c and
/// a_1..a_3, b_1..b_3, c_1..c_3 with all edges {a,b_i,c_j}, {a_i,b,c_j},
/// {a_i,b_j,c}. Labels: a,b,c = 0,1,2; a_i = 3..5; b_i = 6..8; c_i = 9..11.
pub fn tau_gap_3graph() -> Hypergraph {
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            edges.push(vec![0, 6 + i, 9 + j]); // {a, b_i, c_j}
            edges.push(vec![3 + i, 1, 9 + j]); // {a_i, b, c_j}
            edges.push(vec![3 + i, 6 + j, 2]); // {a_i, b_j, c}
        }
    }
    Hypergraph::new(3, 12, edges).expect("valid 3-graph")
}
