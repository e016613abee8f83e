use std::collections::{BTreeMap, VecDeque};

use super::{modularity, CommunityStructure};
use crate::graph::{connected_components, Graph, NodeId};

/// Shortest-path edge betweenness (unnormalized, ordered source passes).
pub fn edge_betweenness(g: &Graph) -> BTreeMap<(NodeId, NodeId), f64> {
    let n = g.node_count();
    let mut scores: BTreeMap<(NodeId, NodeId), f64> = g.edges().into_iter().map(|e| (e, 0.0)).collect();
    let mut dist = vec![usize::MAX; n];
    let mut sigma = vec![0.0; n];
    let mut delta = vec![0.0; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        dist.fill(usize::MAX);
        sigma.fill(0.0);
        delta.fill(0.0);
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g.successors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[u] + 1 {
                    sigma[w] += sigma[u];
                }
            }
        }
        for &w in order.iter().rev() {
            for &v in g.predecessors(w) {
                if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                    let c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                    *scores.get_mut(&g.pair_key(v, w)).unwrap() += c;
                    delta[v] += c;
                }
            }
        }
    }
    scores
}

/// Girvan–Newman divisive clustering.
///
/// Removes the highest-betweenness edge (ties: lowest pair) until no edges
/// remain, scoring each new component split by modularity on the original
/// graph; the earliest best-scoring split wins.
pub fn girvan_newman(g: &Graph) -> CommunityStructure {
    let original = g.to_undirected();
    let n = original.node_count();
    if original.edge_count() == 0 {
        return CommunityStructure::singletons(n);
    }
    let score = |comps: &[Vec<NodeId>]| {
        let cs = CommunityStructure::new(n, comps.to_vec()).expect("components partition the nodes");
        let q = modularity(&original, &cs).expect("graph has edges");
        (cs, q)
    };
    let mut work = original.clone();
    let mut comps = connected_components(&work);
    let (mut best, mut best_q) = score(&comps);
    while work.edge_count() > 0 {
        let scores = edge_betweenness(&work);
        let top = scores.values().cloned().fold(f64::NEG_INFINITY, f64::max);
        let tol = 1e-9 * top.abs().max(1.0);
        let (&(u, v), _) = scores.iter().find(|(_, &s)| s >= top - tol).unwrap();
        work.remove_edge(u, v).unwrap();
        let next = connected_components(&work);
        if next.len() > comps.len() {
            comps = next;
            let (cs, q) = score(&comps);
            if q > best_q + 1e-12 {
                best = cs;
                best_q = q;
            }
        }
    }
    best
}
