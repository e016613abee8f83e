use std::collections::BTreeMap;

use super::CommunityStructure;
use crate::graph::Graph;

/// Clauset–Newman–Moore agglomeration.
///
/// Starts from singletons and repeatedly merges the adjacent pair with the
/// largest modularity gain `2(e_ij − a_i a_j)` (ties: lowest index pair),
/// returning the first partition at which modularity peaked.
pub fn greedy_cnm(g: &Graph) -> CommunityStructure {
    greedy_cnm_with_quality(g).0
}

pub fn greedy_cnm_with_quality(g: &Graph) -> (CommunityStructure, f64) {
    let g = g.to_undirected();
    let n = g.node_count();
    let m = g.edge_count();
    if m == 0 {
        return (CommunityStructure::singletons(n), f64::NAN);
    }
    let two_m = 2.0 * m as f64;
    // e[i][j]: fraction of edge ends from i landing in j (symmetric, i != j).
    let mut e: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
    let mut a: Vec<f64> = (0..n).map(|v| g.degree(v) as f64 / two_m).collect();
    for (u, v) in g.edges() {
        *e[u].entry(v).or_default() += 1.0 / two_m;
        *e[v].entry(u).or_default() += 1.0 / two_m;
    }
    let mut alive = vec![true; n];
    let mut label: Vec<usize> = (0..n).collect();
    let mut q: f64 = -a.iter().map(|x| x * x).sum::<f64>();
    let mut best_q = q;
    let mut best_labels = label.clone();
    loop {
        let mut choice: Option<(f64, usize, usize)> = None;
        for i in (0..n).filter(|&i| alive[i]) {
            for (&j, &eij) in e[i].range(i + 1..) {
                let dq = 2.0 * (eij - a[i] * a[j]);
                if choice.map_or(true, |(best, _, _)| dq > best + 1e-14) {
                    choice = Some((dq, i, j));
                }
            }
        }
        let Some((dq, i, j)) = choice else { break };
        // Merge j into i.
        let ej = std::mem::take(&mut e[j]);
        for (k, w) in ej {
            if k == i {
                continue;
            }
            *e[i].entry(k).or_default() += w;
            let row = &mut e[k];
            row.remove(&j);
            *row.entry(i).or_default() += w;
        }
        e[i].remove(&j);
        a[i] += a[j];
        a[j] = 0.0;
        alive[j] = false;
        for l in label.iter_mut() {
            if *l == j {
                *l = i;
            }
        }
        q += dq;
        if q > best_q + 1e-12 {
            best_q = q;
            best_labels = label.clone();
        }
    }
    (CommunityStructure::from_labels(&best_labels), best_q)
}
