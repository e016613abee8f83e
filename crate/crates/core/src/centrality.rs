//! Degree, closeness and betweenness centrality, competition rankings, and
//! source-node selection by lowest rank sum.
//!
//! Closeness uses `(n-1)/Σd` on connected undirected graphs and the harmonic
//! form `(1/(n-1))·Σ 1/d` on directed graphs. A disconnected undirected graph
//! also gets the harmonic form, so rankings stay defined after a rewiring
//! splits the graph.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, brandes_pass, is_connected, Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CentralityKind {
    Degree,
    Closeness,
    Betweenness,
}

impl CentralityKind {
    pub const ALL: [CentralityKind; 3] =
        [CentralityKind::Degree, CentralityKind::Closeness, CentralityKind::Betweenness];
}

const SOURCE_CHUNK: usize = 64;

fn require_nodes(g: &Graph, min: usize) -> Result<()> {
    if g.node_count() < min {
        Err(Error::TooSmall(format!("need at least {min} nodes, got {}", g.node_count())))
    } else {
        Ok(())
    }
}

pub fn degree_centrality(g: &Graph, v: NodeId) -> Result<f64> {
    require_nodes(g, 2)?;
    let n = g.node_count() as f64;
    let denom = if g.is_directed() { 2.0 * (n - 1.0) } else { n - 1.0 };
    Ok(g.degree(v) as f64 / denom)
}

pub fn degree_all(g: &Graph) -> Result<Vec<f64>> {
    g.nodes().map(|v| degree_centrality(g, v)).collect()
}

fn closeness_from(g: &Graph, v: NodeId, harmonic: bool) -> f64 {
    let n = g.node_count();
    let dist = bfs_distances(g, v);
    if harmonic {
        let s: f64 = dist
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != v)
            .filter_map(|(_, d)| d.map(|d| 1.0 / d as f64))
            .sum();
        s / (n - 1) as f64
    } else {
        let total: usize = dist.iter().map(|d| d.expect("connected")).sum();
        (n - 1) as f64 / total as f64
    }
}

fn uses_harmonic(g: &Graph) -> bool {
    g.is_directed() || !is_connected(g)
}

pub fn closeness_centrality(g: &Graph, v: NodeId) -> Result<f64> {
    require_nodes(g, 2)?;
    Ok(closeness_from(g, v, uses_harmonic(g)))
}

pub fn closeness_all(g: &Graph) -> Result<Vec<f64>> {
    require_nodes(g, 2)?;
    let harmonic = uses_harmonic(g);
    Ok(g.nodes().map(|v| closeness_from(g, v, harmonic)).collect())
}

/// Normalized betweenness of every node.
///
/// Both orientations reduce to the ordered-pair dependency sum divided by
/// `(n-1)(n-2)`. Sources are processed in fixed chunks and reduced in chunk
/// order, so the result does not depend on the rayon pool size.
pub fn betweenness_centrality(g: &Graph) -> Result<Vec<f64>> {
    require_nodes(g, 3)?;
    let n = g.node_count();
    let sources: Vec<NodeId> = g.nodes().collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            for &s in chunk {
                let pass = brandes_pass(g, s);
                for (v, d) in pass.delta.iter().enumerate() {
                    if v != s {
                        acc[v] += d;
                    }
                }
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    let norm = ((n - 1) * (n - 2)) as f64;
    Ok(total.into_iter().map(|x| x / norm).collect())
}

pub fn centrality_all(g: &Graph, kind: CentralityKind) -> Result<Vec<f64>> {
    match kind {
        CentralityKind::Degree => degree_all(g),
        CentralityKind::Closeness => closeness_all(g),
        CentralityKind::Betweenness => betweenness_centrality(g),
    }
}

/// Centrality of a single node.
pub fn centrality_of(g: &Graph, kind: CentralityKind, v: NodeId) -> Result<f64> {
    match kind {
        CentralityKind::Degree => degree_centrality(g, v),
        CentralityKind::Closeness => closeness_centrality(g, v),
        CentralityKind::Betweenness => Ok(betweenness_centrality(g)?[v]),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankEntry {
    pub node: NodeId,
    pub value: f64,
    pub rank: usize,
}

/// Competition ranking ("1224"): highest value gets rank 1, ties share a rank.
#[derive(Clone, Debug, PartialEq)]
pub struct Ranking {
    pub entries: Vec<RankEntry>,
    ranks: Vec<usize>,
}

const TIE_TOLERANCE: f64 = 1e-9;

impl Ranking {
    pub fn from_values(values: &[f64]) -> Ranking {
        let mut order: Vec<NodeId> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
        let mut entries = Vec::with_capacity(values.len());
        let mut ranks = vec![0; values.len()];
        let mut group_value = f64::NAN;
        let mut group_rank = 0;
        for (i, &v) in order.iter().enumerate() {
            let value = values[v];
            if i == 0 || (group_value - value).abs() > TIE_TOLERANCE * group_value.abs().max(1.0) {
                group_value = value;
                group_rank = i + 1;
            }
            ranks[v] = group_rank;
            entries.push(RankEntry { node: v, value, rank: group_rank });
        }
        Ranking { entries, ranks }
    }

    pub fn rank_of(&self, v: NodeId) -> usize {
        self.ranks[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
}

pub fn ranking(g: &Graph, kind: CentralityKind) -> Result<Ranking> {
    require_nodes(g, 3)?;
    Ok(Ranking::from_values(&centrality_all(g, kind)?))
}

/// Ranks of `v` under degree, closeness and betweenness.
pub fn ranks_of(g: &Graph, v: NodeId) -> Result<[usize; 3]> {
    let mut out = [0; 3];
    for (slot, kind) in out.iter_mut().zip(CentralityKind::ALL) {
        *slot = ranking(g, kind)?.rank_of(v);
    }
    Ok(out)
}

/// Picks the node with the lowest sum of the three centrality ranks,
/// breaking ties uniformly at random.
pub fn select_source_node<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<NodeId> {
    require_nodes(g, 3)?;
    let mut sums = vec![0usize; g.node_count()];
    for kind in CentralityKind::ALL {
        let r = ranking(g, kind)?;
        for (s, &rk) in sums.iter_mut().zip(r.ranks()) {
            *s += rk;
        }
    }
    let best = *sums.iter().min().unwrap();
    let tied: Vec<NodeId> = g.nodes().filter(|&v| sums[v] == best).collect();
    Ok(tied[rng.gen_range(0..tied.len())])
}
