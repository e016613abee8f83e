use rand::seq::SliceRandom;

use super::CommunityStructure;
use crate::graph::Graph;
use crate::rng::{derive_seed, seeded};

const GAIN_EPS: f64 = 1e-12;

/// Weighted undirected multigraph level used between aggregation phases.
#[derive(Clone, Debug)]
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    /// Weight of the loop on each node (internal weight of the merged community).
    loops: Vec<f64>,
}

impl Level {
    fn from_graph(g: &Graph) -> Level {
        let n = g.node_count();
        let adj = (0..n).map(|u| g.successors(u).iter().map(|&v| (v, 1.0)).collect()).collect();
        Level { adj, loops: vec![0.0; n] }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// k_i: incident weight, loops counted twice.
    fn strength(&self, i: usize) -> f64 {
        self.adj[i].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.loops[i]
    }

    fn modularity(&self, comm: &[usize]) -> f64 {
        let n = self.len();
        let two_m: f64 = (0..n).map(|i| self.strength(i)).sum();
        let k = comm.iter().max().map_or(0, |&c| c + 1);
        let mut inside = vec![0.0; k];
        let mut tot = vec![0.0; k];
        for i in 0..n {
            tot[comm[i]] += self.strength(i);
            inside[comm[i]] += 2.0 * self.loops[i];
            for &(j, w) in &self.adj[i] {
                if comm[j] == comm[i] {
                    inside[comm[i]] += w;
                }
            }
        }
        (0..k).map(|c| inside[c] / two_m - (tot[c] / two_m).powi(2)).sum()
    }

    fn aggregate(&self, comm: &[usize], k: usize) -> Level {
        let mut weights: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); k];
        let mut loops = vec![0.0; k];
        for i in 0..self.len() {
            let ci = comm[i];
            loops[ci] += self.loops[i];
            for &(j, w) in &self.adj[i] {
                let cj = comm[j];
                if ci == cj {
                    // Each internal edge is seen from both ends.
                    loops[ci] += w / 2.0;
                } else {
                    *weights[ci].entry(cj).or_default() += w;
                }
            }
        }
        let adj = weights.into_iter().map(|m| m.into_iter().collect()).collect();
        Level { adj, loops }
    }
}

/// Local moving phase; returns a dense community label per node and whether
/// anything moved.
fn move_nodes(level: &Level, seed: u64) -> (Vec<usize>, bool) {
    let n = level.len();
    let strength: Vec<f64> = (0..n).map(|i| level.strength(i)).collect();
    let two_m: f64 = strength.iter().sum();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot = strength.clone();
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = seeded(seed);
    let mut neigh_weight = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut moved_any = false;
    let mut pass = 0u64;
    loop {
        order.shuffle(&mut rng);
        let mut moved = false;
        for &i in &order {
            let own = comm[i];
            let ki = strength[i];
            touched.clear();
            for &(j, w) in &level.adj[i] {
                let c = comm[j];
                if neigh_weight[c] == 0.0 {
                    touched.push(c);
                }
                neigh_weight[c] += w;
            }
            tot[own] -= ki;
            let gain = |c: usize, w_in: f64| w_in - tot[c] * ki / two_m;
            let mut best = own;
            let mut best_gain = gain(own, neigh_weight[own]);
            touched.sort_unstable();
            for &c in &touched {
                let g = gain(c, neigh_weight[c]);
                if g > best_gain + GAIN_EPS {
                    best = c;
                    best_gain = g;
                }
            }
            tot[best] += ki;
            if best != own {
                comm[i] = best;
                moved = true;
            }
            for &c in &touched {
                neigh_weight[c] = 0.0;
            }
        }
        pass += 1;
        if !moved {
            break;
        }
        moved_any = true;
        if pass > 10_000 {
            break;
        }
    }
    // Relabel densely in order of first appearance.
    let mut remap = vec![usize::MAX; n];
    let mut next = 0;
    for c in comm.iter_mut() {
        if remap[*c] == usize::MAX {
            remap[*c] = next;
            next += 1;
        }
        *c = remap[*c];
    }
    (comm, moved_any)
}

/// Louvain detection plus the modularity tracked on the final aggregated level.
pub fn louvain_with_quality(g: &Graph, seed: u64) -> (CommunityStructure, f64) {
    let g = g.to_undirected();
    let n = g.node_count();
    if g.edge_count() == 0 {
        return (CommunityStructure::singletons(n), f64::NAN);
    }
    let mut level = Level::from_graph(&g);
    let mut membership: Vec<usize> = (0..n).collect();
    let mut round = 0u64;
    loop {
        let (comm, moved) = move_nodes(&level, derive_seed(seed, round));
        round += 1;
        if !moved {
            break;
        }
        let k = comm.iter().max().unwrap() + 1;
        for m in membership.iter_mut() {
            *m = comm[*m];
        }
        level = level.aggregate(&comm, k);
        if k == 1 {
            break;
        }
    }
    let identity: Vec<usize> = (0..level.len()).collect();
    let q = level.modularity(&identity);
    (CommunityStructure::from_labels(&membership), q)
}

/// Louvain modularity optimization; node visit order is shuffled by `seed`.
pub fn louvain(g: &Graph, seed: u64) -> CommunityStructure {
    louvain_with_quality(g, seed).0
}
