//! Independent Cascade and Linear Threshold diffusion.
//!
//! Monte Carlo replicates draw from `(seed, replicate)` streams and are
//! reduced as integer activation counts, so estimates are bit-identical for
//! any rayon pool size.
//!
//! Linear Threshold thresholds are drawn uniformly from `{0, …, |pred(v)|}`.
//! The set includes 0, so a node may activate in round 2 with no active
//! predecessor at all; a node without predecessors always does.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::stream;

pub const DEFAULT_ACTIVATION_PROBABILITY: f64 = 0.15;
pub const DEFAULT_SAMPLES: usize = 10_000;

const REPLICATE_CHUNK: usize = 256;
const MAX_IC_COINS: usize = 20;
const MAX_LT_STATES: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    IndependentCascade,
    LinearThreshold,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InfluenceConfig {
    pub model: ModelKind,
    /// Uniform per-edge activation probability (Independent Cascade only).
    pub activation_probability: f64,
    pub samples: usize,
    pub seed: u64,
}

impl InfluenceConfig {
    pub fn ic(p: f64, samples: usize, seed: u64) -> Self {
        InfluenceConfig { model: ModelKind::IndependentCascade, activation_probability: p, samples, seed }
    }

    pub fn lt(samples: usize, seed: u64) -> Self {
        InfluenceConfig {
            model: ModelKind::LinearThreshold,
            activation_probability: DEFAULT_ACTIVATION_PROBABILITY,
            samples,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidParameter("samples must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.activation_probability) {
            return Err(Error::InvalidParameter(format!(
                "activation probability {} outside [0, 1]",
                self.activation_probability
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CascadeResult {
    /// Activated nodes in ascending order, seeds included.
    pub activated: Vec<NodeId>,
    /// Number of rounds until `I(t) = I(t-1)`; the seed round counts as 1.
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceEstimate {
    pub total: f64,
    pub per_node: Vec<f64>,
}

fn check_seeds(g: &Graph, seeds: &[NodeId]) -> Result<()> {
    if seeds.is_empty() {
        return Err(Error::InvalidParameter("seed set is empty".into()));
    }
    for &s in seeds {
        if s >= g.node_count() {
            return Err(Error::NodeOutOfRange(s, g.node_count()));
        }
    }
    Ok(())
}

fn ic_into<R: Rng + ?Sized>(g: &Graph, seeds: &[NodeId], p: f64, rng: &mut R, active: &mut [bool]) -> usize {
    let mut frontier: Vec<NodeId> = Vec::new();
    for &s in seeds {
        if !active[s] {
            active[s] = true;
            frontier.push(s);
        }
    }
    frontier.sort_unstable();
    let mut rounds = 1;
    let mut next = Vec::new();
    while !frontier.is_empty() {
        for &u in &frontier {
            for &w in g.successors(u) {
                if !active[w] && rng.gen_bool(p) {
                    active[w] = true;
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        rounds += 1;
        next.sort_unstable();
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    rounds
}

/// Deterministic Linear Threshold run for a fixed threshold vector.
fn lt_into(g: &Graph, seeds: &[NodeId], thresholds: &[usize], active: &mut [bool]) -> usize {
    let n = g.node_count();
    let mut hits = vec![0usize; n];
    let mut newly: Vec<NodeId> = Vec::new();
    for &s in seeds {
        if !active[s] {
            active[s] = true;
            newly.push(s);
        }
    }
    for &s in &newly {
        for &w in g.successors(s) {
            hits[w] += 1;
        }
    }
    let mut rounds = 1;
    // Round 2 checks every node so that zero thresholds fire.
    let mut candidates: Vec<NodeId> = (0..n).collect();
    loop {
        let mut fired: Vec<NodeId> = candidates
            .iter()
            .copied()
            .filter(|&v| !active[v] && hits[v] >= thresholds[v])
            .collect();
        fired.sort_unstable();
        fired.dedup();
        if fired.is_empty() {
            break;
        }
        rounds += 1;
        for &v in &fired {
            active[v] = true;
        }
        candidates.clear();
        for &v in &fired {
            for &w in g.successors(v) {
                hits[w] += 1;
                if !active[w] {
                    candidates.push(w);
                }
            }
        }
    }
    rounds
}

fn draw_thresholds<R: Rng + ?Sized>(g: &Graph, rng: &mut R, out: &mut Vec<usize>) {
    out.clear();
    out.extend(g.nodes().map(|v| rng.gen_range(0..=g.predecessors(v).len())));
}

fn collect_active(active: &[bool]) -> Vec<NodeId> {
    active.iter().enumerate().filter(|(_, &a)| a).map(|(v, _)| v).collect()
}

/// One diffusion run from `seeds` under `cfg`'s model.
pub fn simulate_cascade<R: Rng + ?Sized>(
    g: &Graph,
    seeds: &[NodeId],
    cfg: &InfluenceConfig,
    rng: &mut R,
) -> Result<CascadeResult> {
    check_seeds(g, seeds)?;
    cfg.validate()?;
    let mut active = vec![false; g.node_count()];
    let rounds = match cfg.model {
        ModelKind::IndependentCascade => ic_into(g, seeds, cfg.activation_probability, rng, &mut active),
        ModelKind::LinearThreshold => {
            let mut t = Vec::new();
            draw_thresholds(g, rng, &mut t);
            lt_into(g, seeds, &t, &mut active)
        }
    };
    Ok(CascadeResult { activated: collect_active(&active), rounds })
}

/// Linear Threshold run with caller-supplied thresholds (no sampling).
pub fn lt_cascade_fixed(g: &Graph, seeds: &[NodeId], thresholds: &[usize]) -> Result<CascadeResult> {
    check_seeds(g, seeds)?;
    if thresholds.len() != g.node_count() {
        return Err(Error::InvalidParameter("one threshold per node required".into()));
    }
    let mut active = vec![false; g.node_count()];
    let rounds = lt_into(g, seeds, thresholds, &mut active);
    Ok(CascadeResult { activated: collect_active(&active), rounds })
}

/// Monte Carlo estimate of `inf(v, w)` for every `w`, with `inf(v, v) = 0`.
pub fn estimate_influence(g: &Graph, v: NodeId, cfg: &InfluenceConfig) -> Result<InfluenceEstimate> {
    cfg.validate()?;
    check_seeds(g, &[v])?;
    let n = g.node_count();
    let chunks: Vec<(usize, usize)> = (0..cfg.samples)
        .step_by(REPLICATE_CHUNK)
        .map(|start| (start, (start + REPLICATE_CHUNK).min(cfg.samples)))
        .collect();
    let counts: Vec<Vec<u64>> = chunks
        .par_iter()
        .map(|&(start, end)| {
            let mut counts = vec![0u64; n];
            let mut active = vec![false; n];
            let mut thresholds = Vec::with_capacity(n);
            for r in start..end {
                let mut rng = stream(cfg.seed, r as u64);
                active.fill(false);
                match cfg.model {
                    ModelKind::IndependentCascade => {
                        ic_into(g, &[v], cfg.activation_probability, &mut rng, &mut active);
                    }
                    ModelKind::LinearThreshold => {
                        draw_thresholds(g, &mut rng, &mut thresholds);
                        lt_into(g, &[v], &thresholds, &mut active);
                    }
                }
                for (c, &a) in counts.iter_mut().zip(&active) {
                    *c += a as u64;
                }
            }
            counts
        })
        .collect();
    let mut total_counts = vec![0u64; n];
    for c in counts {
        for (t, x) in total_counts.iter_mut().zip(c) {
            *t += x;
        }
    }
    total_counts[v] = 0;
    let per_node: Vec<f64> = total_counts.iter().map(|&c| c as f64 / cfg.samples as f64).collect();
    let total = per_node.iter().sum();
    Ok(InfluenceEstimate { total, per_node })
}

/// A set of arcs that are live together with probability `p`.
struct Coin {
    arcs: Vec<(NodeId, NodeId)>,
    p: f64,
}

fn exact_ic_with_coins(g: &Graph, v: NodeId, sure: &[(NodeId, NodeId)], coins: &[Coin]) -> Result<Vec<f64>> {
    check_seeds(g, &[v])?;
    if coins.len() > MAX_IC_COINS {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{} uncertain edges exceed the limit of {MAX_IC_COINS}",
            coins.len()
        )));
    }
    let n = g.node_count();
    let mut base: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for &(a, b) in sure {
        base[a].push(b);
    }
    let mut per_node = vec![0.0; n];
    let mut adj = base.clone();
    let mut seen = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    for mask in 0u32..(1u32 << coins.len()) {
        let mut weight = 1.0;
        for (i, adj_row) in adj.iter_mut().enumerate() {
            adj_row.clear();
            adj_row.extend_from_slice(&base[i]);
        }
        for (i, coin) in coins.iter().enumerate() {
            if mask >> i & 1 == 1 {
                weight *= coin.p;
                for &(a, b) in &coin.arcs {
                    adj[a].push(b);
                }
            } else {
                weight *= 1.0 - coin.p;
            }
        }
        if weight == 0.0 {
            continue;
        }
        seen.fill(false);
        seen[v] = true;
        stack.push(v);
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        for (w, &s) in seen.iter().enumerate() {
            if s && w != v {
                per_node[w] += weight;
            }
        }
    }
    Ok(per_node)
}

/// Exact per-node IC influence by live-edge enumeration with uniform `p`.
///
/// Undirected edges get one coin each: a cascade only ever tries one
/// direction of an edge, so the seed's reachable set has the same law as
/// bond percolation.
pub fn exact_influence_ic_per_node(g: &Graph, v: NodeId, p: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("activation probability {p} outside [0, 1]")));
    }
    if g.edge_count() > MAX_IC_COINS {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{} edges exceed the limit of {MAX_IC_COINS}",
            g.edge_count()
        )));
    }
    let coins: Vec<Coin> = g
        .edges()
        .into_iter()
        .map(|(a, b)| Coin { arcs: if g.is_directed() { vec![(a, b)] } else { vec![(a, b), (b, a)] }, p })
        .collect();
    exact_ic_with_coins(g, v, &[], &coins)
}

pub fn exact_influence_ic(g: &Graph, v: NodeId, p: f64) -> Result<f64> {
    Ok(exact_influence_ic_per_node(g, v, p)?.iter().sum())
}

/// Exact per-node IC influence with a per-arc probability function.
///
/// Arcs with probability 1 are always live, arcs with probability 0 never;
/// only the remaining arcs are enumerated. On undirected graphs each edge
/// contributes both arcs with their own probabilities.
pub fn exact_influence_ic_arcs(
    g: &Graph,
    v: NodeId,
    prob: impl Fn(NodeId, NodeId) -> f64,
) -> Result<Vec<f64>> {
    let mut sure = Vec::new();
    let mut coins = Vec::new();
    for u in g.nodes() {
        for &w in g.successors(u) {
            let p = prob(u, w);
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("arc ({u}, {w}) probability {p}")));
            }
            if p >= 1.0 {
                sure.push((u, w));
            } else if p > 0.0 {
                coins.push(Coin { arcs: vec![(u, w)], p });
            }
        }
    }
    exact_ic_with_coins(g, v, &sure, &coins)
}

/// Exact per-node LT influence by enumerating every threshold vector.
pub fn exact_influence_lt_per_node(g: &Graph, v: NodeId) -> Result<Vec<f64>> {
    check_seeds(g, &[v])?;
    let n = g.node_count();
    let radix: Vec<usize> = g.nodes().map(|w| if w == v { 1 } else { g.predecessors(w).len() + 1 }).collect();
    let states = radix.iter().try_fold(1u128, |acc, &r| {
        let next = acc * r as u128;
        (next <= MAX_LT_STATES).then_some(next)
    });
    let Some(states) = states else {
        return Err(Error::SearchSpaceTooLarge(format!(
            "threshold state space exceeds {MAX_LT_STATES}"
        )));
    };
    let mut thresholds = vec![0usize; n];
    let mut counts = vec![0u64; n];
    let mut active = vec![false; n];
    for _ in 0..states {
        active.fill(false);
        lt_into(g, &[v], &thresholds, &mut active);
        for (c, &a) in counts.iter_mut().zip(&active) {
            *c += a as u64;
        }
        // Mixed-radix increment.
        for (t, &r) in thresholds.iter_mut().zip(&radix) {
            *t += 1;
            if *t < r {
                break;
            }
            *t = 0;
        }
    }
    counts[v] = 0;
    Ok(counts.iter().map(|&c| c as f64 / states as f64).collect())
}

pub fn exact_influence_lt(g: &Graph, v: NodeId) -> Result<f64> {
    Ok(exact_influence_lt_per_node(g, v)?.iter().sum())
}

/// Per-node LT influence for fixed thresholds: 1 if activated, else 0.
pub fn lt_influence_fixed(g: &Graph, v: NodeId, thresholds: &[usize]) -> Result<Vec<f64>> {
    let run = lt_cascade_fixed(g, &[v], thresholds)?;
    let mut out = vec![0.0; g.node_count()];
    for w in run.activated {
        if w != v {
            out[w] = 1.0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn g(n: usize, directed: bool, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, directed, edges).unwrap()
    }

    #[test]
    fn cascade_examples() {
        let e = g(2, true, &[(0, 1)]);
        let cfg = InfluenceConfig::ic(1.0, 1, 0);
        let r = simulate_cascade(&e, &[0], &cfg, &mut seeded(0)).unwrap();
        assert_eq!(r.activated, vec![0, 1]);
        assert_eq!(r.rounds, 2);

        let cycle = g(5, false, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let cfg = InfluenceConfig::ic(0.0, 1, 0);
        assert_eq!(simulate_cascade(&cycle, &[2], &cfg, &mut seeded(1)).unwrap().activated, vec![2]);

        let isolated = Graph::undirected(2);
        let r = simulate_cascade(&isolated, &[0], &InfluenceConfig::lt(1, 0), &mut seeded(2)).unwrap();
        assert_eq!(r.activated, vec![0, 1]);

        assert!(simulate_cascade(&cycle, &[], &cfg, &mut seeded(0)).is_err());
    }

    #[test]
    fn estimate_examples() {
        let e = g(2, true, &[(0, 1)]);
        let est = estimate_influence(&e, 0, &InfluenceConfig::ic(1.0, 50, 3)).unwrap();
        assert_eq!(est.total, 1.0);
        assert_eq!(est.per_node, vec![0.0, 1.0]);

        let est = estimate_influence(&e, 0, &InfluenceConfig::ic(0.15, 100_000, 3)).unwrap();
        assert!((est.total - 0.15).abs() < 0.01);

        let chain = g(3, true, &[(0, 1), (1, 2)]);
        let est = estimate_influence(&chain, 0, &InfluenceConfig::ic(0.15, 100_000, 9)).unwrap();
        assert!((est.total - 0.1725).abs() < 0.01);
    }

    #[test]
    fn exact_ic_examples() {
        let e = g(2, true, &[(0, 1)]);
        assert!((exact_influence_ic(&e, 0, 0.15).unwrap() - 0.15).abs() < 1e-15);
        let diamond = g(4, true, &[(0, 1), (1, 3), (0, 2), (2, 3)]);
        assert_eq!(exact_influence_ic(&diamond, 0, 1.0).unwrap(), 3.0);
        let chain = g(3, true, &[(0, 1), (1, 2)]);
        assert!((exact_influence_ic(&chain, 0, 0.15).unwrap() - 0.1725).abs() < 1e-15);

        let big = crate::oracles::random_gnp(10, 0.9, false, 1);
        assert!(matches!(exact_influence_ic(&big, 0, 0.5), Err(Error::SearchSpaceTooLarge(_))));
    }

    #[test]
    fn exact_ic_arcs_matches_uniform() {
        let tri = g(3, false, &[(0, 1), (1, 2), (0, 2)]);
        let a: f64 = exact_influence_ic_arcs(&tri, 0, |_, _| 0.3).unwrap().iter().sum();
        let b = exact_influence_ic(&tri, 0, 0.3).unwrap();
        assert!((a - b).abs() < 1e-12);
        // One-way arcs on an undirected edge.
        let e = g(2, false, &[(0, 1)]);
        let fwd = exact_influence_ic_arcs(&e, 1, |u, _| if u == 0 { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(fwd, vec![0.0, 0.0]);
    }

    #[test]
    fn exact_lt_examples() {
        let e = g(2, false, &[(0, 1)]);
        assert_eq!(exact_influence_lt(&e, 0).unwrap(), 1.0);

        // w = 2 has predecessors v = 0 and x = 1, where x has no predecessors of
        // its own and therefore always self-activates in round 2; w then sees two
        // active predecessors by round 3 whatever its threshold.
        let two_preds = g(3, true, &[(0, 2), (1, 2)]);
        assert_eq!(exact_influence_lt_per_node(&two_preds, 0).unwrap(), vec![0.0, 1.0, 1.0]);

        // With x fed only by w, x fires first only when t_x = 0 (prob 1/2), so
        // inf(v, w) = P(t_w ≤ 1) + P(t_w = 2)·P(t_x = 0) = 2/3 + 1/3 · 1/2.
        let fed = g(3, true, &[(0, 2), (1, 2), (2, 1)]);
        let per = exact_influence_lt_per_node(&fed, 0).unwrap();
        assert!((per[2] - 5.0 / 6.0).abs() < 1e-15);

        // Every predecessor-free node self-activates.
        assert_eq!(exact_influence_lt(&Graph::undirected(4), 0).unwrap(), 3.0);
        assert_eq!(exact_influence_lt(&Graph::undirected(1), 0).unwrap(), 0.0);
    }

    #[test]
    fn fixed_thresholds() {
        let e = g(3, true, &[(0, 1), (1, 2)]);
        assert_eq!(lt_influence_fixed(&e, 0, &[1, 1, 1]).unwrap(), vec![0.0, 1.0, 1.0]);
        assert_eq!(lt_influence_fixed(&e, 0, &[1, 1, 2]).unwrap(), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn estimates_are_pool_size_independent() {
        let graph = crate::generators::barabasi_albert(60, 2, 5).unwrap();
        for cfg in [InfluenceConfig::ic(0.15, 3000, 4), InfluenceConfig::lt(3000, 4)] {
            let run = |threads| {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .unwrap()
                    .install(|| estimate_influence(&graph, 0, &cfg).unwrap())
            };
            assert_eq!(run(1), run(3));
        }
    }

    #[test]
    fn estimate_bounds() {
        let graph = crate::generators::watts_strogatz(30, 4, 0.2, 8).unwrap();
        for cfg in [InfluenceConfig::ic(0.4, 500, 1), InfluenceConfig::lt(500, 1)] {
            let est = estimate_influence(&graph, 3, &cfg).unwrap();
            assert_eq!(est.per_node[3], 0.0);
            assert!(est.per_node.iter().all(|&x| (0.0..=1.0).contains(&x)));
            assert!(est.total <= 29.0);
        }
    }

    fn all_graphs(n: usize, directed: bool) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && (directed || u < v))
            .collect();
        (0u32..(1 << pairs.len())).map(move |mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, directed, &edges).unwrap()
        })
    }

    #[test]
    fn exact_ic_is_monotone_under_edge_addition() {
        for (n, directed) in [(4, false), (5, false), (3, true), (4, true)] {
            for graph in all_graphs(n, directed) {
                for v in 0..n {
                    let base = exact_influence_ic(&graph, v, 0.3).unwrap();
                    for a in 0..n {
                        for b in 0..n {
                            if a == b || graph.has_edge(a, b) || (!directed && b < a) {
                                continue;
                            }
                            let more = exact_influence_ic(&graph.with_edge(a, b).unwrap(), v, 0.3).unwrap();
                            assert!(more >= base - 1e-12);
                        }
                    }
                }
            }
        }
    }
}
