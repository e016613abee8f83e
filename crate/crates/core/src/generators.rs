//! Seeded random graph families and a few deterministic fixtures.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::seeded;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeneratorFamily {
    /// Barabási–Albert: `n` nodes, `m` links added with each node.
    ScaleFree { n: usize, m: usize },
    /// Watts–Strogatz: ring lattice of even degree `k`, rewiring probability `beta`.
    SmallWorld { n: usize, k: usize, beta: f64 },
    /// Erdős–Rényi parameterized by expected average degree.
    RandomGraph { n: usize, avg_degree: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub family: GeneratorFamily,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Graph> {
        match self.family {
            GeneratorFamily::ScaleFree { n, m } => barabasi_albert(n, m, self.seed),
            GeneratorFamily::SmallWorld { n, k, beta } => watts_strogatz(n, k, beta, self.seed),
            GeneratorFamily::RandomGraph { n, avg_degree } => erdos_renyi(n, avg_degree, self.seed),
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GeneratorSpec { seed, ..self }
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

/// Preferential attachment grown from an `m`-clique.
///
/// Each new node picks `m` distinct targets with probability proportional to
/// current degree. When every existing node still has degree zero (only
/// possible for `m = 1`) the target is drawn uniformly.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 || m >= n {
        return Err(invalid(format!("scale-free needs 1 <= m < n (n={n}, m={m})")));
    }
    let mut rng = seeded(seed);
    let mut g = Graph::undirected(n);
    // Each edge endpoint appears once: sampling uniformly is degree-proportional.
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * m * n);
    for u in 0..m {
        for v in (u + 1)..m {
            g.add_edge(u, v)?;
            endpoints.extend([u, v]);
        }
    }
    let mut targets: Vec<NodeId> = Vec::with_capacity(m);
    for new in m..n {
        targets.clear();
        while targets.len() < m {
            let t = if endpoints.is_empty() {
                rng.gen_range(0..new)
            } else {
                endpoints[rng.gen_range(0..endpoints.len())]
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            g.add_edge(new, t)?;
            endpoints.extend([new, t]);
        }
    }
    Ok(g)
}

/// Ring lattice with each edge's far endpoint rewired with probability `beta`.
///
/// A rewired endpoint is redrawn until it avoids self-loops and existing
/// edges; nodes already adjacent to everything keep their edge.
pub fn watts_strogatz(n: usize, k: usize, beta: f64, seed: u64) -> Result<Graph> {
    if n < 3 || k % 2 != 0 || k >= n || !(0.0..=1.0).contains(&beta) {
        return Err(invalid(format!(
            "small-world needs n >= 3, even k < n, beta in [0,1] (n={n}, k={k}, beta={beta})"
        )));
    }
    let mut rng = seeded(seed);
    let mut g = Graph::undirected(n);
    for u in 0..n {
        for j in 1..=k / 2 {
            g.add_edge(u, (u + j) % n)?;
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.gen_bool(beta) || g.degree(u) >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !g.has_edge(u, w) {
                    break w;
                }
            };
            g.remove_edge(u, v)?;
            g.add_edge(u, w)?;
        }
    }
    Ok(g)
}

/// G(n, p) with `p = avg_degree / (n - 1)`.
pub fn erdos_renyi(n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
    if n < 2 || !(0.0..=(n - 1) as f64).contains(&avg_degree) {
        return Err(invalid(format!("random graph needs n >= 2 and 0 <= avg <= n-1 (n={n}, avg={avg_degree})")));
    }
    let p = (avg_degree / (n - 1) as f64).min(1.0);
    let mut rng = seeded(seed);
    let mut g = Graph::undirected(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, false, &edges).expect("path is simple")
}

pub fn cycle_graph(n: usize, directed: bool) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, directed, &edges).expect("cycle is simple")
}

pub fn star_graph(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
    Graph::from_edges(leaves + 1, false, &edges).expect("star is simple")
}

pub fn complete_graph(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, false, &edges).expect("complete graph is simple")
}

/// Two `k`-cliques on `0..k` and `k..2k`, optionally joined by the edge (k-1, k).
pub fn two_cliques(k: usize, bridge: bool) -> Graph {
    let mut g = Graph::undirected(2 * k);
    for offset in [0, k] {
        for u in 0..k {
            for v in (u + 1)..k {
                g.add_edge(offset + u, offset + v).unwrap();
            }
        }
    }
    if bridge {
        g.add_edge(k - 1, k).unwrap();
    }
    g
}

pub fn petersen_graph() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, false, &edges).expect("petersen is simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::connected_components;

    #[test]
    fn scale_free_counts() {
        assert_eq!(barabasi_albert(100, 3, 1).unwrap().edge_count(), 294);
        let k4 = barabasi_albert(4, 3, 1).unwrap();
        assert_eq!(k4.edge_count(), 6);
        let tree = barabasi_albert(40, 1, 2).unwrap();
        assert_eq!(tree.edge_count(), 39);
        assert_eq!(connected_components(&tree).len(), 1);
        assert!(barabasi_albert(3, 3, 0).is_err());
        assert!(barabasi_albert(3, 0, 0).is_err());
    }

    #[test]
    fn small_world_counts() {
        assert_eq!(watts_strogatz(10, 2, 0.0, 1).unwrap(), cycle_graph(10, false));
        assert_eq!(watts_strogatz(100, 10, 0.25, 1).unwrap().edge_count(), 500);
        let g = watts_strogatz(10, 4, 1.0, 3).unwrap();
        assert_eq!(g.edge_count(), 20);
        assert!(watts_strogatz(10, 3, 0.1, 0).is_err());
        assert!(watts_strogatz(10, 10, 0.1, 0).is_err());
    }

    #[test]
    fn random_graph_extremes() {
        assert_eq!(erdos_renyi(12, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(12, 11.0, 1).unwrap().edge_count(), 66);
        assert!(erdos_renyi(12, 12.0, 1).is_err());
    }

    #[test]
    fn random_graph_mean_edge_count() {
        let n = 100;
        let p = 10.0 / 99.0;
        let pairs = (n * (n - 1) / 2) as f64;
        let sigma = (pairs * p * (1.0 - p)).sqrt();
        let seeds = 1000;
        let mean = (0..seeds).map(|s| erdos_renyi(n, 10.0, s).unwrap().edge_count() as f64).sum::<f64>()
            / seeds as f64;
        // σ of the mean is σ/√1000; the 3σ band on the single-draw σ is far wider.
        assert!((mean - 500.0).abs() < 3.0 * sigma, "mean {mean}");
        assert!((mean - 500.0).abs() < 3.0 * sigma / (seeds as f64).sqrt(), "mean {mean}");
    }

    #[test]
    fn deterministic_and_simple() {
        for s in 0..5 {
            assert_eq!(barabasi_albert(50, 2, s).unwrap(), barabasi_albert(50, 2, s).unwrap());
            assert_eq!(watts_strogatz(50, 4, 0.3, s).unwrap(), watts_strogatz(50, 4, 0.3, s).unwrap());
            assert_eq!(erdos_renyi(50, 4.0, s).unwrap(), erdos_renyi(50, 4.0, s).unwrap());
        }
        // Simplicity is enforced by Graph::add_edge; reaching here means no rejections.
    }

    #[test]
    fn scale_free_is_heavier_tailed_than_random() {
        let max_deg = |g: &Graph| g.nodes().map(|v| g.degree(v)).max().unwrap();
        let wins = (0..50)
            .filter(|&s| {
                max_deg(&barabasi_albert(100, 3, s).unwrap()) > max_deg(&erdos_renyi(100, 6.0, 1000 + s).unwrap())
            })
            .count();
        assert!(wins >= 45, "wins {wins}");
    }

    #[test]
    fn fixtures() {
        assert_eq!(petersen_graph().edge_count(), 15);
        assert!(petersen_graph().nodes().all(|v| petersen_graph().degree(v) == 3));
        assert_eq!(two_cliques(5, true).edge_count(), 21);
    }
}
