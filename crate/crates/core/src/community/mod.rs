//! Community structures, modularity, and the detectors used as adversaries.
//!
//! Every detector works on the undirected view of the graph: directed inputs
//! are symmetrized (an edge in either direction becomes one undirected edge).

mod cnm;
mod girvan_newman;
mod louvain;

pub use cnm::{greedy_cnm, greedy_cnm_with_quality};
pub use girvan_newman::{edge_betweenness, girvan_newman};
pub use louvain::{louvain, louvain_with_quality};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// A disjoint, exhaustive partition of the node set with no empty parts.
///
/// Communities are stored sorted internally and ordered by smallest member,
/// so two equal partitions compare equal regardless of how they were built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommunityStructure {
    communities: Vec<Vec<NodeId>>,
    node_count: usize,
}

impl CommunityStructure {
    pub fn new(n: usize, communities: Vec<Vec<NodeId>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(communities.len());
        for mut c in communities {
            if c.is_empty() {
                return Err(Error::InvalidPartition("empty community".into()));
            }
            for &v in &c {
                if v >= n {
                    return Err(Error::NodeOutOfRange(v, n));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("node {v} appears more than once")));
                }
            }
            c.sort_unstable();
            out.push(c);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!("node {missing} is not covered")));
        }
        out.sort_unstable_by_key(|c| c[0]);
        Ok(CommunityStructure { communities: out, node_count: n })
    }

    /// Builds a partition from per-node labels (any label values).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut by_label: std::collections::BTreeMap<usize, Vec<NodeId>> = Default::default();
        for (v, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(v);
        }
        Self::new(labels.len(), by_label.into_values().collect()).expect("labels form a partition")
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn whole(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    pub fn communities(&self) -> &[Vec<NodeId>] {
        &self.communities
    }

    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Community index of each node.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.node_count];
        for (i, c) in self.communities.iter().enumerate() {
            for &v in c {
                labels[v] = i;
            }
        }
        labels
    }
}

/// Newman modularity of an undirected graph: Σ_c e_c/|E| − (deg_c / 2|E|)².
pub fn modularity(g: &Graph, cs: &CommunityStructure) -> Result<f64> {
    let g = g.to_undirected();
    if cs.node_count() != g.node_count() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} nodes, graph has {}",
            cs.node_count(),
            g.node_count()
        )));
    }
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::InvalidParameter("modularity is undefined without edges".into()));
    }
    let labels = cs.labels();
    let k = cs.len();
    let mut internal = vec![0usize; k];
    let mut degree = vec![0usize; k];
    for (u, v) in g.edges() {
        degree[labels[u]] += 1;
        degree[labels[v]] += 1;
        if labels[u] == labels[v] {
            internal[labels[u]] += 1;
        }
    }
    let m = m as f64;
    Ok((0..k)
        .map(|c| internal[c] as f64 / m - (degree[c] as f64 / (2.0 * m)).powi(2))
        .sum())
}

#[derive(Clone, Debug, PartialEq)]
pub enum DetectorKind {
    Louvain { seed: u64 },
    GreedyCnm,
    GirvanNewman,
    /// A partition produced elsewhere and imported from a file.
    External(CommunityStructure),
}

impl DetectorKind {
    pub fn name(&self) -> &'static str {
        match self {
            DetectorKind::Louvain { .. } => "louvain",
            DetectorKind::GreedyCnm => "cnm",
            DetectorKind::GirvanNewman => "gn",
            DetectorKind::External(_) => "external",
        }
    }

    /// Same detector with a fresh seed (only Louvain is seeded).
    pub fn reseeded(&self, seed: u64) -> Self {
        match self {
            DetectorKind::Louvain { .. } => DetectorKind::Louvain { seed },
            other => other.clone(),
        }
    }
}

pub fn detect(g: &Graph, detector: &DetectorKind) -> Result<CommunityStructure> {
    match detector {
        DetectorKind::Louvain { seed } => Ok(louvain(g, *seed)),
        DetectorKind::GreedyCnm => Ok(greedy_cnm(g)),
        DetectorKind::GirvanNewman => Ok(girvan_newman(g)),
        DetectorKind::External(cs) => {
            if cs.node_count() != g.node_count() {
                return Err(Error::InvalidPartition(format!(
                    "external partition covers {} nodes, graph has {}",
                    cs.node_count(),
                    g.node_count()
                )));
            }
            Ok(cs.clone())
        }
    }
}
