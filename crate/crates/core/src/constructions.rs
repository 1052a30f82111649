//! Lower-bound constructions: star-like r-graphs, complete multipartite
//! graphs, cycles and paths, Erdős–Rényi polarity graphs, and the
//! probabilistic deletion construction. Each generator comes with a
//! closed-form norm prediction so generator and formula cross-check.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Error, Result};
use crate::hypergraph::{BipartiteGraph, Host, Hypergraph};
use crate::norms;
use crate::patterns::{self, PatternSpec};
use crate::util::{binom, binom_f64, subsets};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub kind: String,
    pub graph: Host,
    /// Closed-form p-norm prediction evaluated at the requested p.
    pub predicted_pnorm: Option<f64>,
    pub freeness: Option<patterns::FreenessWitness>,
}

/// S^r(n,t) = { e in C([n],r) : |e ∩ [t]| = 1 }: core vertices 0..t, each
/// edge takes one core vertex and r-1 outer vertices.
pub fn star_like(r: usize, n: usize, t: usize) -> Result<Hypergraph> {
    if t < 1 || t >= n {
        return Err(invalid_param(format!("star_like needs 1 <= t < n, got t={t} n={n}")));
    }
    if r < 2 || r > n - t + 1 {
        return Err(invalid_param(format!("star_like needs 2 <= r <= n-t+1, got r={r}")));
    }
    let mut edges = Vec::new();
    for core in 0..t {
        for rest in subsets(n - t, r - 1) {
            let mut e = vec![core];
            e.extend(rest.iter().map(|&v| t + v));
            edges.push(e);
        }
    }
    Hypergraph::new(r, n, edges)
}

/// Closed-form ‖S^r(n,t)‖_p: t core vertices of degree C(n-t, r-1) and
/// n-t outer vertices of degree t·C(n-t-1, r-2).
pub fn star_like_pnorm(r: usize, n: usize, t: usize, p: f64) -> f64 {
    let core = binom((n - t) as u64, (r - 1) as u64) as f64;
    let outer = t as f64 * binom_f64((n - t - 1) as f64, (r - 2) as u64);
    t as f64 * core.powf(p) + (n - t) as f64 * outer.powf(p)
}

/// Complete r-partite r-graph with the given part sizes.
pub fn complete_r_partite(sizes: &[usize]) -> Result<Hypergraph> {
    if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
        return Err(invalid_param("complete_r_partite needs positive part sizes"));
    }
    let r = sizes.len();
    let n: usize = sizes.iter().sum();
    let mut starts = vec![0usize; r];
    for i in 1..r {
        starts[i] = starts[i - 1] + sizes[i - 1];
    }
    let mut edges = Vec::new();
    let mut pick = vec![0usize; r];
    'outer: loop {
        edges.push((0..r).map(|i| starts[i] + pick[i]).collect());
        let mut i = r;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < sizes[i] {
                break;
            }
            pick[i] = 0;
        }
    }
    Hypergraph::new(r, n, edges)
}

pub fn cycle_graph(k: usize) -> Hypergraph {
    assert!(k >= 3, "cycles need at least 3 vertices");
    let edges = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    Hypergraph::new(2, k, edges).expect("valid cycle")
}

pub fn path_graph(k: usize) -> Hypergraph {
    assert!(k >= 1, "paths need at least 1 vertex");
    let edges = (0..k.saturating_sub(1)).map(|i| vec![i, i + 1]).collect();
    Hypergraph::new(2, k, edges).expect("valid path")
}

pub fn complete_bipartite(m: usize, n: usize) -> BipartiteGraph {
    BipartiteGraph::complete(m, n)
}

pub fn petersen() -> Hypergraph {
    // outer 5-cycle 0..4, inner 5-cycle 5..9 with step 2, spokes i -- i+5
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
        pairs.push((i, 5 + i));
    }
    Hypergraph::graph(10, &pairs).expect("valid Petersen graph")
}

fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Erdős–Rényi polarity graph ER_q from PG(2,q) with the identity bilinear
/// form: vertices are projective points, x ~ y iff x·y = 0 (mod q), loops at
/// absolute points discarded. q²+q+1 vertices, ½q(q+1)² edges, C₄-free.
pub fn polarity_graph(q: usize) -> Result<Hypergraph> {
    if !is_prime(q) {
        return Err(Error::Unsupported(format!("polarity graph needs a prime q, got {q}")));
    }
    // canonical projective points: leftmost nonzero coordinate = 1
    let mut points: Vec<[usize; 3]> = Vec::new();
    points.push([0, 0, 1]);
    for z in 0..q {
        points.push([0, 1, z]);
    }
    for y in 0..q {
        for z in 0..q {
            points.push([1, y, z]);
        }
    }
    // keep a deterministic order but sort for stable labelling
    points.sort_unstable();
    let n = points.len();
    debug_assert_eq!(n, q * q + q + 1);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let dot: usize = (0..3).map(|k| points[i][k] * points[j][k]).sum();
            if dot % q == 0 {
                pairs.push((i, j));
            }
        }
    }
    Hypergraph::graph(n, &pairs)
}

/// Number of edges of ER_q: ½q(q+1)².
pub fn polarity_edge_count(q: usize) -> usize {
    q * (q + 1) * (q + 1) / 2
}

/// Deletion-method construction: sample G(n, c·n^{-θ}) and delete one edge
/// from every copy of (each member of) the pattern. θ defaults to the
/// standard deletion exponent (v_F - 2) / (e_F - 1) for the densest member.
pub fn random_deletion(
    n: usize,
    spec: &PatternSpec,
    theta: Option<f64>,
    c: Option<f64>,
    seed: u64,
) -> Result<Hypergraph> {
    if spec.pattern.r() != 2 {
        return Err(Error::Unsupported("random_deletion supports 2-graph patterns".into()));
    }
    let theta = theta.unwrap_or_else(|| {
        spec.members()
            .iter()
            .map(|f| (f.n() as f64 - 2.0) / (f.edge_count() as f64 - 1.0).max(1.0))
            .fold(f64::INFINITY, f64::min)
    });
    let c = c.unwrap_or(0.5);
    let prob = (c * (n as f64).powf(-theta)).clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Hypergraph::empty(2, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < prob {
                g = g.with_edge(vec![i, j])?;
            }
        }
    }
    // delete one edge per pattern copy until free
    loop {
        let w = patterns::is_free(&Host::Hyper(g.clone()), &strip_order(spec))?;
        match w.embedding {
            None => return Ok(g),
            Some(map) => {
                let member = spec.members()[w.member.unwrap_or(0)].clone();
                let e = &member.edges()[0];
                let mut f: Vec<usize> = e.iter().map(|&v| map[v]).collect();
                f.sort_unstable();
                g = g.without_edge(&f);
            }
        }
    }
}

fn strip_order(spec: &PatternSpec) -> PatternSpec {
    let mut s = spec.clone();
    s.ordered = None;
    s
}

/// Fact 1.1 lower bound: max of the convexity term n·(r·ex(n,F)/n)^p and
/// the star-like term (τ_ind - 1)·C(n - τ_ind + 1, r - 1)^p.
pub fn fact11_lower_bound(n: usize, r: usize, p: f64, tau_ind: usize, ex_n_f: f64) -> Result<f64> {
    if p < 1.0 {
        return Err(invalid_param("fact11_lower_bound requires p >= 1"));
    }
    if ex_n_f < 0.0 {
        return Err(invalid_param("ex(n,F) must be nonnegative"));
    }
    if tau_ind < 1 || tau_ind > n {
        return Err(invalid_param("need 1 <= tau_ind <= n"));
    }
    let convexity = n as f64 * (r as f64 * ex_n_f / n as f64).powf(p);
    let star =
        (tau_ind as f64 - 1.0) * binom_f64((n - tau_ind + 1) as f64, (r - 1) as u64).powf(p);
    Ok(convexity.max(star))
}

/// Build a construction with its report. `kind` names are the CLI vocabulary.
pub fn construct(kind: &str, params: &ConstructParams) -> Result<ConstructionReport> {
    match kind {
        "star_like" => {
            let (r, n, t) = (params.r.unwrap_or(2), params.need_n()?, params.t.unwrap_or(1));
            let g = star_like(r, n, t)?;
            let predicted = params.p.map(|p| star_like_pnorm(r, n, t, p));
            Ok(ConstructionReport {
                kind: kind.into(),
                graph: Host::Hyper(g),
                predicted_pnorm: predicted,
                freeness: None,
            })
        }
        "complete_r_partite" => {
            let sizes = params
                .sizes
                .as_ref()
                .ok_or_else(|| invalid_param("complete_r_partite needs part sizes"))?;
            let g = complete_r_partite(sizes)?;
            let predicted = params.p.and_then(|p| norms::p_norm(&g, p).ok().map(|v| v.value));
            Ok(ConstructionReport {
                kind: kind.into(),
                graph: Host::Hyper(g),
                predicted_pnorm: predicted,
                freeness: None,
            })
        }
        "cycle" => {
            let n = params.need_n()?;
            let g = cycle_graph(n);
            let predicted = params.p.map(|p| n as f64 * 2f64.powf(p));
            Ok(ConstructionReport {
                kind: kind.into(),
                graph: Host::Hyper(g),
                predicted_pnorm: predicted,
                freeness: None,
            })
        }
        "path" => {
            let n = params.need_n()?;
            let g = path_graph(n);
            let predicted = params.p.and_then(|p| norms::p_norm(&g, p).ok().map(|v| v.value));
            Ok(ConstructionReport {
                kind: kind.into(),
                graph: Host::Hyper(g),
                predicted_pnorm: predicted,
                freeness: None,
            })
        }
        "polarity" => {
            let q = params.q.ok_or_else(|| invalid_param("polarity needs q"))?;
            let g = polarity_graph(q)?;
            // q+1 absolute points of degree q, q^2 points of degree q+1
            let predicted = params.p.map(|p| {
                (q as f64 + 1.0) * (q as f64).powf(p)
                    + (q as f64).powi(2) * (q as f64 + 1.0).powf(p)
            });
            let freeness = Some(patterns::is_free(
                &Host::Hyper(g.clone()),
                &patterns::registry("C4")?,
            )?);
            Ok(ConstructionReport {
                kind: kind.into(),
                graph: Host::Hyper(g),
                predicted_pnorm: predicted,
                freeness,
            })
        }
        "random_deletion" => {
            let n = params.need_n()?;
            let spec = params
                .spec
                .as_ref()
                .ok_or_else(|| invalid_param("random_deletion needs a target pattern"))?;
            let g = random_deletion(n, spec, params.theta, params.c, params.seed.unwrap_or(0))?;
            let freeness = Some(patterns::is_free(&Host::Hyper(g.clone()), &strip_order(spec))?);
            let predicted = params.p.and_then(|p| norms::p_norm(&g, p).ok().map(|v| v.value));
            Ok(ConstructionReport {
                kind: kind.into(),
                graph: Host::Hyper(g),
                predicted_pnorm: predicted,
                freeness,
            })
        }
        _ => Err(invalid_param(format!("unknown construction kind: {kind}"))),
    }
}

#[derive(Debug, Clone, Default)]
pub struct ConstructParams {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub t: Option<usize>,
    pub q: Option<usize>,
    pub sizes: Option<Vec<usize>>,
    pub p: Option<f64>,
    pub spec: Option<PatternSpec>,
    pub theta: Option<f64>,
    pub c: Option<f64>,
    pub seed: Option<u64>,
}

impl ConstructParams {
    fn need_n(&self) -> Result<usize> {
        self.n.ok_or_else(|| invalid_param("construction needs n"))
    }
}
