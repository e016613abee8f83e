//! Definitional brute-force references for small graphs.
//!
//! Nothing here shares code with the fast paths it is compared against:
//! distances come from Floyd–Warshall over `has_edge`, shortest paths from
//! exhaustive simple-path enumeration, modularity optima from enumerating
//! every set partition.

use rand::Rng;

use crate::graph::{Graph, NodeId};
use crate::rng::seeded;

/// G(n, p) sample used by property tests and the verification suite.
pub fn random_gnp(n: usize, p: f64, directed: bool, seed: u64) -> Graph {
    let mut rng = seeded(seed);
    let mut g = Graph::new(n, directed);
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn degree(g: &Graph, v: NodeId) -> f64 {
    let n = g.node_count();
    let count = (0..n).filter(|&w| w != v && (g.has_edge(v, w) || g.has_edge(w, v))).count();
    let denom = if g.is_directed() { 2 * (n - 1) } else { n - 1 };
    count as f64 / denom as f64
}

/// All-pairs hop distances; `usize::MAX` marks unreachable pairs.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let inf = usize::MAX;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if g.has_edge(u, v) {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != inf && d[k][j] != inf && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn closeness(g: &Graph, v: NodeId) -> f64 {
    let n = g.node_count();
    let d = floyd_warshall(g);
    let all_reachable = d.iter().all(|row| row.iter().all(|&x| x != usize::MAX));
    if !g.is_directed() && all_reachable {
        let total: usize = d[v].iter().sum();
        (n - 1) as f64 / total as f64
    } else {
        let s: f64 = (0..n)
            .filter(|&j| j != v && d[v][j] != usize::MAX)
            .map(|j| 1.0 / d[v][j] as f64)
            .sum();
        s / (n - 1) as f64
    }
}

/// Every shortest path from `s` to `t`, found by enumerating simple paths.
pub fn shortest_paths(g: &Graph, s: NodeId, t: NodeId) -> Vec<Vec<NodeId>> {
    fn walk(g: &Graph, t: NodeId, path: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for w in 0..g.node_count() {
            if g.has_edge(u, w) && !path.contains(&w) {
                path.push(w);
                walk(g, t, path, out);
                path.pop();
            }
        }
    }
    let mut all = Vec::new();
    walk(g, t, &mut vec![s], &mut all);
    let best = all.iter().map(Vec::len).min();
    all.retain(|p| Some(p.len()) == best);
    all
}

/// Betweenness of every node, straight from the ordered-pair definition.
pub fn betweenness_all(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut acc = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let paths = shortest_paths(g, s, t);
            if paths.is_empty() {
                continue;
            }
            for (v, a) in acc.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count();
                *a += through as f64 / paths.len() as f64;
            }
        }
    }
    // Ordered pairs: undirected graphs count each unordered pair twice,
    // matching the 2/((n-1)(n-2)) prefactor on unordered pairs.
    let norm = ((n - 1) * (n - 2)) as f64;
    acc.into_iter().map(|x| x / norm).collect()
}

pub fn betweenness(g: &Graph, v: NodeId) -> f64 {
    betweenness_all(g)[v]
}

/// Every set partition of `0..n` as a label vector (restricted growth strings).
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(labels: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if labels.len() == n {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max + 1 {
            labels.push(l);
            grow(labels, n, max.max(l), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![Vec::new()];
    }
    grow(&mut vec![0], n, 0, &mut out);
    out
}

/// Newman modularity of a label assignment, computed pair by pair.
pub fn modularity_of_labels(g: &Graph, labels: &[usize]) -> f64 {
    let n = g.node_count();
    let m = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| g.has_edge(u, v)).count() as f64
        / 2.0;
    let deg: Vec<f64> = (0..n).map(|u| (0..n).filter(|&v| g.has_edge(u, v)).count() as f64).collect();
    let mut q = 0.0;
    for u in 0..n {
        for v in 0..n {
            if labels[u] == labels[v] {
                let a = if g.has_edge(u, v) { 1.0 } else { 0.0 };
                q += a - deg[u] * deg[v] / (2.0 * m);
            }
        }
    }
    q / (2.0 * m)
}

/// Maximum modularity over all partitions of an undirected graph (n ≤ 10).
pub fn max_modularity(g: &Graph) -> (f64, Vec<usize>) {
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for labels in set_partitions(g.node_count()) {
        let q = modularity_of_labels(g, &labels);
        if q > best.0 + 1e-12 {
            best = (q, labels);
        }
    }
    best
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of (strongly) connected graphs
/// on `n <= 6` nodes. The representative is the labeling whose edge bitmask
/// is smallest.
pub fn connected_graphs_up_to_isomorphism(n: usize, directed: bool) -> Vec<Graph> {
    assert!(n <= 6, "enumeration is exponential in n");
    let slots: Vec<(NodeId, NodeId)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| if directed { u != v } else { u < v })
        .collect();
    let index: std::collections::HashMap<(NodeId, NodeId), usize> =
        slots.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let perms = permutations(n);
    let key = |u: NodeId, v: NodeId| if directed || u < v { (u, v) } else { (v, u) };
    let mut out = Vec::new();
    for mask in 0u64..(1 << slots.len()) {
        let edges: Vec<(NodeId, NodeId)> = (0..slots.len()).filter(|i| mask >> i & 1 == 1).map(|i| slots[i]).collect();
        let canonical = perms.iter().all(|p| {
            let image: u64 = edges.iter().map(|&(u, v)| 1u64 << index[&key(p[u], p[v])]).sum();
            image >= mask
        });
        if !canonical {
            continue;
        }
        let g = Graph::from_edges(n, directed, &edges).expect("slots are simple");
        if crate::graph::is_connected(&g) {
            out.push(g);
        }
    }
    out
}
