//! Executable structural procedures: p-norm regularization, dyadic degree
//! selection, the critical-exponent verification pipeline, and the bipartite
//! regularization used on the Zarankiewicz side.

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Error, Result};
use crate::hypergraph::{BipartiteGraph, Host, Hypergraph, Side};
use crate::norms;
use crate::patterns::{self, PatternSpec};
use crate::sampling::{self, derive_seed};

/// Constants of the regularization lemma: δ = (1 − p(r−1−α))/4, the ε₁
/// root, and the smallest admissible power-of-two K.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularizationConstants {
    pub r: usize,
    pub alpha: f64,
    pub p: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub epsilon1: f64,
    pub k_const: f64,
}

/// Solve 1 − x − ((r−1)x)^{1/p} = (1−ε)^{1/p} for x by bisection; the left
/// side is strictly decreasing in x.
fn solve_epsilon1(r: usize, p: f64, eps: f64) -> f64 {
    let rhs = (1.0 - eps).powf(1.0 / p);
    let f = |x: f64| 1.0 - x - ((r as f64 - 1.0) * x).powf(1.0 / p);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > rhs {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn derive_constants(r: usize, alpha: f64, p: f64, eps: f64) -> Result<RegularizationConstants> {
    if r < 2 {
        return Err(invalid_param("need r >= 2"));
    }
    if !(alpha > r as f64 - 2.0 && alpha < r as f64 - 1.0) {
        return Err(invalid_param(format!("alpha must lie in ({}, {})", r - 2, r - 1)));
    }
    let pstar = 1.0 / (r as f64 - 1.0 - alpha);
    if !(1.0..pstar).contains(&p) {
        return Err(Error::Regime(format!("p = {p} outside the subcritical range [1, {pstar})")));
    }
    if !(0.0..1.0).contains(&eps) || eps == 0.0 {
        return Err(invalid_param("epsilon must lie in (0,1)"));
    }
    let delta = (1.0 - p * (r as f64 - 1.0 - alpha)) / 4.0;
    let epsilon1 = solve_epsilon1(r, p, eps);
    // K: smallest power of 2 with K^delta >= 2^{1+p(r-1)} and
    // K^{4 delta} epsilon1 / 2^{2 + p alpha} > K^{2 delta}
    let mut k_const = 2.0f64;
    loop {
        let a = k_const.powf(delta) >= 2f64.powf(1.0 + p * (r as f64 - 1.0));
        let b = k_const.powf(4.0 * delta) * epsilon1 / 2f64.powf(2.0 + p * alpha)
            > k_const.powf(2.0 * delta);
        if a && b {
            break;
        }
        k_const *= 2.0;
        if !k_const.is_finite() {
            return Err(Error::Regime("no admissible K (delta too small for f64)".into()));
        }
    }
    Ok(RegularizationConstants { r, alpha, p, epsilon: eps, delta, epsilon1, k_const })
}

/// U = { v : d(v)^p >= K·‖H‖_p / |V(H)| }. Guaranteed |U| <= |V|/K.
pub fn heavy_vertices(h: &Hypergraph, p: f64, k_const: f64) -> Result<Vec<usize>> {
    let norm = norms::p_norm(h, p)?.value;
    if norm == 0.0 || h.n() == 0 {
        return Ok(Vec::new());
    }
    let threshold = k_const * norm / h.n() as f64;
    Ok(h.degrees()
        .iter()
        .enumerate()
        .filter(|(_, &d)| (d as f64).powf(p) >= threshold)
        .map(|(v, _)| v)
        .collect())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepRecord {
    pub i: usize,
    pub vertices: usize,
    pub norm: f64,
    pub phi: f64,
    pub heavy_count: usize,
    pub heavy_mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    LightHeavyMass,
    SizeFloor,
    CannotShrink,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularizationTrace {
    pub steps: Vec<StepRecord>,
    pub result: Hypergraph,
    pub stop: StopReason,
    /// Set when the claimed ‖G‖_p >= C·n^{1+pα} precondition fails.
    pub precondition_warning: bool,
    /// Δ(H)^p < K·‖G_k‖_p / |V(G_k)|.
    pub certified_max_degree: bool,
    /// ‖H‖_p >= (1−ε)·‖G_k‖_p.
    pub certified_norm_retention: bool,
    /// Φ_{i+1} >= K^{2δ}·Φ_i on every accepted step.
    pub certified_phi_growth: bool,
    /// (1/K)^{i+1}·n <= |V(G_{i+1})| <= (2/K)^{i+1}·n on every accepted step.
    pub certified_size_sandwich: bool,
}

fn phi(h: &Hypergraph, p: f64, alpha: f64) -> Result<f64> {
    Ok(norms::p_norm(h, p)?.value / (h.n() as f64).powf(1.0 + p * alpha))
}

fn heavy_mass(h: &Hypergraph, heavy: &[usize], p: f64) -> f64 {
    let deg = h.degrees();
    heavy.iter().map(|&v| (deg[v] as f64).powf(p)).sum()
}

/// The regularization loop: repeatedly pass to G[U_i ∪ V_{i+1}] while the
/// heavy mass stays at least ε₁·‖G_i‖_p, resampling V_{i+1} until the
/// Φ-growth inequality holds.
pub fn regularize(
    g: &Hypergraph,
    consts: &RegularizationConstants,
    trials: usize,
    seed: u64,
    max_steps: usize,
    claimed_c: Option<f64>,
    stop_size: usize,
) -> Result<RegularizationTrace> {
    if g.r() != consts.r {
        return Err(invalid_param("constants derived for a different uniformity"));
    }
    let (p, alpha, k_const, eps1) = (consts.p, consts.alpha, consts.k_const, consts.epsilon1);
    let n0 = g.n();
    let precondition_warning = match claimed_c {
        Some(c) => norms::p_norm(g, p)?.value < c * (n0 as f64).powf(1.0 + p * alpha),
        None => false,
    };

    let mut cur = g.clone();
    let mut steps = Vec::new();
    let mut phi_growth_ok = true;
    let mut sandwich_ok = true;
    let mut prev_phi = phi(&cur, p, alpha)?;
    let mut i = 0usize;
    let stop;
    loop {
        let heavy = heavy_vertices(&cur, p, k_const)?;
        let norm = norms::p_norm(&cur, p)?.value;
        let mass = heavy_mass(&cur, &heavy, p);
        steps.push(StepRecord {
            i,
            vertices: cur.n(),
            norm,
            phi: phi(&cur, p, alpha)?,
            heavy_count: heavy.len(),
            heavy_mass: mass,
        });
        if mass < eps1 * norm || norm == 0.0 {
            stop = StopReason::LightHeavyMass;
            break;
        }
        if cur.n() <= stop_size {
            stop = StopReason::SizeFloor;
            break;
        }
        let m = (cur.n() as f64 / k_const).floor() as usize;
        if m == 0 {
            stop = StopReason::CannotShrink;
            break;
        }
        if i >= max_steps {
            return Err(Error::StepBudget(max_steps));
        }
        // resample until Phi grows by K^{2 delta}
        let mut accepted = None;
        for attempt in 0..trials.max(1) {
            let s = sampling::best_sample(&cur, &heavy, m, p, 1, derive_seed(seed, (i * 1000 + attempt) as u64))?;
            let mut keep = heavy.clone();
            keep.extend(s.w.iter().copied());
            keep.sort_unstable();
            keep.dedup();
            let next = cur.induced(&keep);
            let next_phi = phi(&next, p, alpha)?;
            if next_phi >= k_const.powf(2.0 * consts.delta) * prev_phi {
                accepted = Some((next, next_phi));
                break;
            }
        }
        let (next, next_phi) = match accepted {
            Some(x) => x,
            None => return Err(Error::ResampleExhausted { trials, step: i }),
        };
        phi_growth_ok &= next_phi >= k_const.powf(2.0 * consts.delta) * prev_phi;
        let lo = (1.0 / k_const).powi(i as i32 + 1) * n0 as f64;
        let hi = (2.0 / k_const).powi(i as i32 + 1) * n0 as f64;
        sandwich_ok &= (next.n() as f64) >= lo - 1e-9 && (next.n() as f64) <= hi + 1e-9;
        prev_phi = next_phi;
        cur = next;
        i += 1;
    }

    // H = G_k minus its heavy vertices
    let heavy = heavy_vertices(&cur, p, k_const)?;
    let keep: Vec<usize> = (0..cur.n()).filter(|v| !heavy.contains(v)).collect();
    let result = cur.induced(&keep);
    let gk_norm = norms::p_norm(&cur, p)?.value;
    let h_norm = norms::p_norm(&result, p)?.value;
    let max_deg = result.degrees().into_iter().max().unwrap_or(0) as f64;
    let certified_max_degree = if cur.n() == 0 || gk_norm == 0.0 {
        true
    } else {
        max_deg.powf(p) < k_const * gk_norm / cur.n() as f64
    };
    let certified_norm_retention = h_norm >= (1.0 - consts.epsilon) * gk_norm - 1e-9;

    Ok(RegularizationTrace {
        steps,
        result,
        stop,
        precondition_warning,
        certified_max_degree,
        certified_norm_retention,
        certified_phi_growth: phi_growth_ok,
        certified_size_sandwich: sandwich_ok,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DyadicReport {
    /// Chosen vertices of V1 (one dyadic degree class).
    pub selected: Vec<usize>,
    /// 1-based dyadic class index: d ∈ [2^{i−1}, 2^i).
    pub class_index: usize,
    pub t: usize,
    /// (|U|^{1−1/p}/2)·(Σ_{V1} d^p / t)^{1/p}.
    pub guarantee: f64,
    /// e(U, rest) = Σ_{v∈U} d(v).
    pub edges_from_selected: u64,
}

/// Dyadic degree selection on explicit first-part degrees, with
/// N = |V₂|·…·|V_r| entering through t = ⌈log₂ N⌉.
pub fn dyadic_select_degrees(degrees: &[u64], n_other: usize, p: f64) -> Result<DyadicReport> {
    if p < 1.0 {
        return Err(invalid_param("dyadic_select requires p >= 1"));
    }
    if n_other < 2 {
        return Err(invalid_param("dyadic selection needs the other parts of size >= 2"));
    }
    if degrees.iter().all(|&d| d == 0) {
        return Err(Error::EmptySelection("all first-part degrees are zero".into()));
    }
    let t = (n_other as f64).log2().ceil().max(1.0) as usize;
    let class_of = |d: u64| (64 - d.leading_zeros()) as usize; // floor(log2 d) + 1
    let max_class = degrees.iter().map(|&d| if d > 0 { class_of(d) } else { 0 }).max().unwrap();
    let mut best: Option<(f64, usize)> = None;
    for c in 1..=max_class {
        let sum: f64 = degrees
            .iter()
            .filter(|&&d| d > 0 && class_of(d) == c)
            .map(|&d| (d as f64).powf(p))
            .sum();
        if sum > 0.0 && best.map_or(true, |(bs, _)| sum > bs) {
            best = Some((sum, c));
        }
    }
    let (_, class_index) = best.expect("some positive degree exists");
    let selected: Vec<usize> = degrees
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0 && class_of(d) == class_index)
        .map(|(v, _)| v)
        .collect();
    let total: f64 = degrees.iter().map(|&d| (d as f64).powf(p)).sum();
    let u = selected.len() as f64;
    let guarantee = u.powf(1.0 - 1.0 / p) / 2.0 * (total / t as f64).powf(1.0 / p);
    let edges_from_selected: u64 = selected.iter().map(|&v| degrees[v]).sum();
    debug_assert!(edges_from_selected as f64 >= guarantee - 1e-9);
    Ok(DyadicReport { selected, class_index, t, guarantee, edges_from_selected })
}

/// Dyadic selection on a bipartite graph with V₁ = the left side.
pub fn dyadic_select(g: &BipartiteGraph, p: f64) -> Result<DyadicReport> {
    dyadic_select_degrees(&g.left_degrees(), g.right_size(), p)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriticalReport {
    pub pstar: f64,
    pub part_sizes: Vec<usize>,
    /// Index of the part with Σ d^{p*} >= ‖H‖_{p*}/r.
    pub chosen_part: usize,
    pub dyadic: DyadicReport,
    /// e(U, rest) <= C_F·|U|^{1+α−(r−1)}·n^{r−1}.
    pub semibip_bound: f64,
    pub semibip_ok: bool,
    /// C_F-independent form of the implied bound on the partite-selection
    /// norm: r·(t+1)·2^{p*}·C_F^{p*}·n^{p*(r−1)}.
    pub implied_norm_bound: f64,
    /// Thm 1.3 comparison value n^{p*(r−1)}·log n.
    pub reference_form: f64,
    pub partite_norm: f64,
}

/// The critical-exponent proof as a checker: balanced partition, pigeonhole
/// side, dyadic selection, then the semibipartite edge-count test.
pub fn critical_pipeline(
    g: &Hypergraph,
    spec: &PatternSpec,
    alpha: f64,
    c_f: f64,
    trials: usize,
    seed: u64,
) -> Result<CriticalReport> {
    let r = g.r();
    if !(alpha > r as f64 - 2.0 && alpha < r as f64 - 1.0) {
        return Err(invalid_param(format!("alpha must lie in ({}, {})", r - 2, r - 1)));
    }
    let free = patterns::is_free(&Host::Hyper(g.clone()), spec)?;
    if !free.free {
        return Err(Error::InvalidInput("host contains the forbidden pattern".into()));
    }
    let pstar = 1.0 / (r as f64 - 1.0 - alpha);
    let partition = sampling::best_balanced_partition(g, pstar, trials, seed)?;
    let h = g.partite_selection(&partition.parts);
    let partite_norm = norms::p_norm(&h, pstar)?.value;
    let deg = h.degrees();
    // pigeonhole: some part carries at least 1/r of the norm
    let (chosen_part, _) = partition
        .parts
        .iter()
        .enumerate()
        .map(|(i, part)| (i, part.iter().map(|&v| (deg[v] as f64).powf(pstar)).sum::<f64>()))
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .ok_or_else(|| invalid_param("empty partition"))?;
    let degrees: Vec<u64> = partition.parts[chosen_part].iter().map(|&v| deg[v]).collect();
    let n_other: usize = partition
        .parts
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != chosen_part)
        .map(|(_, part)| part.len())
        .product();
    let dyadic = dyadic_select_degrees(&degrees, n_other.max(2), pstar)?;
    let n = g.n() as f64;
    let m = dyadic.selected.len() as f64;
    let semibip_bound = c_f * m.powf(1.0 + alpha - (r as f64 - 1.0)) * n.powf(r as f64 - 1.0);
    let semibip_ok = (dyadic.edges_from_selected as f64) <= semibip_bound + 1e-9;
    let implied_norm_bound = r as f64
        * (dyadic.t as f64 + 1.0)
        * 2f64.powf(pstar)
        * c_f.powf(pstar)
        * n.powf(pstar * (r as f64 - 1.0));
    let reference_form = n.powf(pstar * (r as f64 - 1.0)) * n.ln().max(1.0);
    Ok(CriticalReport {
        pstar,
        part_sizes: partition.parts.iter().map(|p| p.len()).collect(),
        chosen_part,
        dyadic,
        semibip_bound,
        semibip_ok,
        implied_norm_bound,
        reference_form,
        partite_norm,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BipartiteStepRecord {
    pub i: usize,
    pub left: usize,
    pub right: usize,
    pub left_norm: f64,
    pub phi: f64,
    pub heavy_count: usize,
    pub heavy_mass: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BipartiteTrace {
    pub steps: Vec<BipartiteStepRecord>,
    pub result: BipartiteGraph,
    pub k: usize,
    /// k* = max(1, (2/δ)·log log n).
    pub k_star: usize,
    pub delta: f64,
    pub certified_phi_growth: bool,
    pub certified_halving: bool,
    /// The retry-on-failed-growth policy is an artifact decision, flagged
    /// here so consumers can tell it apart from the sketch.
    pub retry_policy: String,
}

fn bip_phi(g: &BipartiteGraph, p: f64, alpha: f64, beta: f64) -> Result<f64> {
    let norm = norms::p_norm_bipartite(g, p, Some(Side::Left))?.value;
    let denom = (g.left_size() as f64).powf(1.0 - p * (1.0 - alpha))
        * (g.right_size() as f64).powf(p * beta);
    Ok(norm / denom)
}

/// Appendix-style bipartite regularization: halve both sides each step,
/// keeping the heavy left vertices, while the heavy mass stays significant.
pub fn bipartite_regularize(
    g: &BipartiteGraph,
    p: f64,
    alpha: f64,
    beta: f64,
    eps_prime: f64,
    seed: u64,
) -> Result<BipartiteTrace> {
    let two_ab = 2.0 - alpha - beta;
    if two_ab <= 0.0 || !(p > 1.0 && p < 1.0 / two_ab) {
        return Err(invalid_param(format!(
            "regime violation: need 1 < p < {}, got p = {p}",
            1.0 / two_ab
        )));
    }
    let delta = (1.0 - p * two_ab) / 2.0;
    if eps_prime <= 0.0 || eps_prime >= delta {
        return Err(invalid_param(format!("need 0 < eps' < delta = {delta}")));
    }
    let n = g.left_size().max(g.right_size()) as f64;
    let k_star = ((2.0 / delta) * n.ln().max(std::f64::consts::E).ln()).ceil().max(1.0) as usize;
    let growth = 2f64.powf(delta - eps_prime);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut cur = g.clone();
    let mut steps = Vec::new();
    let mut phi_ok = true;
    let mut halving_ok = true;
    let mut prev_phi = bip_phi(&cur, p, alpha, beta)?;
    let mut i = 0usize;
    loop {
        let norm = norms::p_norm_bipartite(&cur, p, Some(Side::Left))?.value;
        let ldeg = cur.left_degrees();
        let threshold = if cur.left_size() > 0 {
            (2.0 * norm / cur.left_size() as f64).powf(1.0 / p)
        } else {
            f64::INFINITY
        };
        let heavy: Vec<usize> = ldeg
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0 && (d as f64) >= threshold)
            .map(|(v, _)| v)
            .collect();
        let mass: f64 = heavy.iter().map(|&v| (ldeg[v] as f64).powf(p)).sum();
        steps.push(BipartiteStepRecord {
            i,
            left: cur.left_size(),
            right: cur.right_size(),
            left_norm: norm,
            phi: bip_phi(&cur, p, alpha, beta)?,
            heavy_count: heavy.len(),
            heavy_mass: mass,
        });
        if mass < 2f64.powf(-eps_prime) * norm || norm == 0.0 {
            break;
        }
        if i >= 4 * k_star {
            return Err(Error::StepBudget(4 * k_star));
        }
        let next_left_size = cur.left_size() / 2;
        let next_right_size = cur.right_size() / 2;
        if next_left_size < heavy.len() || next_left_size == 0 || next_right_size == 0 {
            break;
        }
        // retry policy (artifact decision): up to 32 joint redraws of the
        // left fill and the right half, keeping all heavy vertices
        let mut accepted = None;
        for _ in 0..32 {
            let mut fill: Vec<usize> =
                (0..cur.left_size()).filter(|v| !heavy.contains(v)).collect();
            fill.shuffle(&mut rng);
            let mut left_keep = heavy.clone();
            left_keep.extend(fill.into_iter().take(next_left_size - heavy.len()));
            left_keep.sort_unstable();
            let mut right: Vec<usize> = (0..cur.right_size()).collect();
            right.shuffle(&mut rng);
            let mut right_keep: Vec<usize> = right.into_iter().take(next_right_size).collect();
            right_keep.sort_unstable();
            let next = cur.induced(&left_keep, &right_keep);
            let next_phi = bip_phi(&next, p, alpha, beta)?;
            if next_phi >= growth * prev_phi {
                accepted = Some((next, next_phi));
                break;
            }
        }
        let (next, next_phi) = match accepted {
            Some(x) => x,
            None => return Err(Error::ResampleExhausted { trials: 32, step: i }),
        };
        phi_ok &= next_phi >= growth * prev_phi;
        halving_ok &= next.left_size() == cur.left_size() / 2
            && next.right_size() == cur.right_size() / 2;
        prev_phi = next_phi;
        cur = next;
        i += 1;
    }
    Ok(BipartiteTrace {
        steps,
        result: cur,
        k: i,
        k_star,
        delta,
        certified_phi_growth: phi_ok,
        certified_halving: halving_ok,
        retry_policy: "redraw-both-halves-32".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::patterns::registry;

    #[test]
    fn epsilon1_linear_case() {
        // p = 1, r = 2: 1 - 2x = (1-eps), so x = eps/2
        let c = derive_constants(2, 0.5, 1.0, 0.5).unwrap();
        assert!((c.epsilon1 - 0.25).abs() < 1e-10);
        assert_eq!(c.delta, (1.0 - 0.5) / 4.0);
    }

    #[test]
    fn epsilon1_bisection_residual() {
        let c = derive_constants(2, 0.5, 1.5, 0.5).unwrap();
        let lhs = 1.0 - c.epsilon1 - c.epsilon1.powf(1.0 / 1.5);
        assert!((lhs - 0.5f64.powf(1.0 / 1.5)).abs() <= 1e-10);
    }

    #[test]
    fn k_self_check() {
        for &(r, a, p, e) in &[(2, 0.5, 1.0, 0.5), (2, 0.5, 1.5, 0.25), (3, 1.5, 1.2, 0.5)] {
            let c = derive_constants(r, a, p, e).unwrap();
            assert!(c.k_const.powf(c.delta) >= 2f64.powf(1.0 + p * (r as f64 - 1.0)));
            assert!(
                c.k_const.powf(4.0 * c.delta) * c.epsilon1 / 2f64.powf(2.0 + p * a)
                    > c.k_const.powf(2.0 * c.delta)
            );
            // K is minimal: K/2 must violate one inequality
            let half = c.k_const / 2.0;
            let ok_a = half.powf(c.delta) >= 2f64.powf(1.0 + p * (r as f64 - 1.0));
            let ok_b = half.powf(4.0 * c.delta) * c.epsilon1 / 2f64.powf(2.0 + p * a)
                > half.powf(2.0 * c.delta);
            assert!(!(ok_a && ok_b));
        }
    }

    #[test]
    fn regime_errors() {
        assert!(matches!(derive_constants(2, 0.5, 2.5, 0.5), Err(Error::Regime(_))));
        assert!(derive_constants(2, 1.5, 1.0, 0.5).is_err());
    }

    #[test]
    fn heavy_regular_graph_empty() {
        let g = constructions::cycle_graph(8);
        assert!(heavy_vertices(&g, 2.0, 4.0).unwrap().is_empty());
    }

    #[test]
    fn heavy_star_center() {
        let star = constructions::star_like(2, 100, 1).unwrap();
        let u = heavy_vertices(&star, 2.0, 4.0).unwrap();
        assert_eq!(u, vec![0]);
    }

    #[test]
    fn heavy_size_bound_fuzz() {
        for seed in 0..20u64 {
            let g = constructions::random_deletion(
                16,
                &registry("C4").unwrap(),
                Some(0.2),
                Some(1.0),
                seed,
            )
            .unwrap();
            for k in [2.0, 4.0, 8.0] {
                let u = heavy_vertices(&g, 2.0, k).unwrap();
                assert!(u.len() as f64 <= g.n() as f64 / k);
            }
        }
    }

    #[test]
    fn regularize_regular_graph_stops_immediately() {
        let g = constructions::cycle_graph(12);
        let c = derive_constants(2, 0.5, 1.0, 0.5).unwrap();
        let t = regularize(&g, &c, 4, 0, 50, None, 8).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.stop, StopReason::LightHeavyMass);
        assert_eq!(t.result, g);
        assert!(t.certified_max_degree && t.certified_norm_retention);
    }

    #[test]
    fn regularize_er11_trace_invariants() {
        let g = constructions::polarity_graph(11).unwrap();
        let c = derive_constants(2, 0.5, 1.25, 0.5).unwrap();
        let t = regularize(&g, &c, 8, 1, 50, Some(0.5), 8).unwrap();
        assert!(t.steps.len() <= 2);
        assert!(t.certified_phi_growth && t.certified_size_sandwich);
        assert!(t.certified_max_degree && t.certified_norm_retention);
    }

    #[test]
    fn regularize_precondition_warning() {
        let g = constructions::path_graph(10);
        let c = derive_constants(2, 0.5, 1.0, 0.5).unwrap();
        let t = regularize(&g, &c, 4, 0, 50, Some(100.0), 8).unwrap();
        assert!(t.precondition_warning);
    }

    #[test]
    fn dyadic_hand_oracle() {
        let r = dyadic_select_degrees(&[1, 2, 2, 4], 4, 2.0).unwrap();
        assert_eq!(r.t, 2);
        assert_eq!(r.selected, vec![3]);
        assert_eq!(r.class_index, 3);
        assert!((r.guarantee - 0.5 * (25.0f64 / 2.0).sqrt()).abs() < 1e-12);
        assert_eq!(r.edges_from_selected, 4);
    }

    #[test]
    fn dyadic_uniform_degrees() {
        let r = dyadic_select_degrees(&[3, 3, 3], 5, 2.0).unwrap();
        assert_eq!(r.selected, vec![0, 1, 2]);
        let r = dyadic_select_degrees(&[1, 1, 1, 1], 2, 1.0).unwrap();
        assert_eq!(r.selected, vec![0, 1, 2, 3]);
        assert_eq!(r.t, 1);
        assert!((r.guarantee - 2.0).abs() < 1e-12);
    }

    #[test]
    fn dyadic_zero_degrees_error() {
        assert!(matches!(
            dyadic_select_degrees(&[0, 0], 4, 2.0),
            Err(Error::EmptySelection(_))
        ));
    }

    #[test]
    fn critical_pipeline_star() {
        let g = constructions::star_like(2, 12, 1).unwrap();
        let spec = registry("C4").unwrap();
        let rep = critical_pipeline(&g, &spec, 0.5, 2.0, 64, 0).unwrap();
        assert_eq!(rep.pstar, 2.0);
        assert!(rep.implied_norm_bound.is_finite());
    }

    #[test]
    fn critical_pipeline_er7() {
        let g = constructions::polarity_graph(7).unwrap();
        let spec = registry("C4").unwrap();
        let rep = critical_pipeline(&g, &spec, 0.5, 2.0, 32, 0).unwrap();
        assert!(rep.semibip_ok);
    }

    #[test]
    fn critical_pipeline_rejects_nonfree() {
        let g = constructions::complete_bipartite(2, 2).to_hypergraph();
        let spec = registry("C4").unwrap();
        assert!(critical_pipeline(&g, &spec, 0.5, 2.0, 8, 0).is_err());
    }

    #[test]
    fn bipartite_biregular_stops() {
        let g = constructions::complete_bipartite(8, 8);
        let t = bipartite_regularize(&g, 1.2, 0.6, 0.6, 0.01, 0).unwrap();
        assert_eq!(t.k, 0);
        assert!(t.k_star >= 1);
    }

    #[test]
    fn bipartite_trace_invariants() {
        // random-ish bipartite graph via deletion construction degrees
        let mut edges = Vec::new();
        let mut state = 12345u64;
        for i in 0..40 {
            for j in 0..40 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if state >> 33 & 0xff < 77 {
                    edges.push((i, j));
                }
            }
        }
        let g = BipartiteGraph::new(40, 40, edges).unwrap();
        let t = bipartite_regularize(&g, 1.2, 0.6, 0.6, 0.01, 3).unwrap();
        assert!(t.certified_phi_growth && t.certified_halving);
        for w in t.steps.windows(2) {
            assert_eq!(w[1].left, w[0].left / 2);
        }
    }

    #[test]
    fn bipartite_regime_error() {
        let g = constructions::complete_bipartite(4, 4);
        assert!(bipartite_regularize(&g, 3.0, 0.6, 0.6, 0.05, 0).is_err());
    }
}
