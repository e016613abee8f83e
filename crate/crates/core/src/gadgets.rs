//! Reduction gadgets from Hamiltonian Cycle and Set Cover, built as concrete
//! problem instances, plus tiny brute-force solvers for the source problems.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::centrality::CentralityKind;
use crate::error::{Error, Result};
use crate::exact::{DisguiseProblem, EdgeRule, RecoveryModel, RecoveryProblem, RecoveryTarget};
use crate::graph::{is_connected, Graph, NodeId};
use crate::rng::seeded;

pub const MAX_SET_COVER_SETS: usize = 15;
pub const MAX_HAMILTONIAN_NODES: usize = 10;

/// Universe `0..universe`, a family of subsets, and the cover size asked about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetCoverInstance {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        let mut covered = vec![false; universe];
        let mut clean = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::InvalidParameter("empty set in set-cover instance".into()));
            }
            for &u in &s {
                if u >= universe {
                    return Err(Error::InvalidParameter(format!("element {u} outside universe of {universe}")));
                }
                covered[u] = true;
            }
            clean.push(s);
        }
        if let Some(u) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidParameter(format!("element {u} is in no set")));
        }
        Ok(SetCoverInstance { universe, sets: clean, k })
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    /// Random instance with `l` elements and `m` sets whose union is the universe.
    pub fn random(l: usize, m: usize, seed: u64) -> Result<Self> {
        if l == 0 || m == 0 {
            return Err(Error::InvalidParameter("need at least one element and one set".into()));
        }
        let mut rng = seeded(seed);
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); m];
        for u in 0..l {
            sets[rng.gen_range(0..m)].push(u);
        }
        for s in sets.iter_mut() {
            for u in 0..l {
                if rng.gen_bool(0.3) && !s.contains(&u) {
                    s.push(u);
                }
            }
            if s.is_empty() {
                s.push(rng.gen_range(0..l));
            }
        }
        let mut inst = SetCoverInstance::new(l, sets, 0)?;
        inst.k = brute_force_set_cover(&inst)?;
        Ok(inst)
    }
}

/// Size of a smallest cover, by checking subsets in order of size.
pub fn brute_force_set_cover(sc: &SetCoverInstance) -> Result<usize> {
    let m = sc.set_count();
    if m > MAX_SET_COVER_SETS {
        return Err(Error::SearchSpaceTooLarge(format!("{m} sets exceed the limit of {MAX_SET_COVER_SETS}")));
    }
    let masks: Vec<u64> = sc.sets.iter().map(|s| s.iter().fold(0u64, |acc, &u| acc | 1 << u)).collect();
    let full = if sc.universe == 64 { u64::MAX } else { (1u64 << sc.universe) - 1 };
    let mut best = usize::MAX;
    for subset in 0u32..(1 << m) {
        let size = subset.count_ones() as usize;
        if size >= best {
            continue;
        }
        let union = (0..m).filter(|&j| subset >> j & 1 == 1).fold(0u64, |acc, j| acc | masks[j]);
        if union == full {
            best = size;
        }
    }
    if best == usize::MAX {
        return Err(Error::InvalidParameter("sets do not cover the universe".into()));
    }
    Ok(best)
}

/// Whether `g` has a Hamiltonian cycle (a directed one if `g` is directed).
pub fn brute_force_hamiltonian(g: &Graph) -> Result<bool> {
    let n = g.node_count();
    if n > MAX_HAMILTONIAN_NODES {
        return Err(Error::SearchSpaceTooLarge(format!("{n} nodes exceed the limit of {MAX_HAMILTONIAN_NODES}")));
    }
    if n < 3 {
        return Ok(false);
    }
    fn extend(g: &Graph, path: &mut Vec<NodeId>, used: &mut [bool]) -> bool {
        let last = *path.last().unwrap();
        if path.len() == g.node_count() {
            return g.has_edge(last, path[0]);
        }
        for &next in g.successors(last) {
            if !used[next] {
                used[next] = true;
                path.push(next);
                if extend(g, path, used) {
                    return true;
                }
                path.pop();
                used[next] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    used[0] = true;
    Ok(extend(g, &mut vec![0], &mut used))
}

/// A centrality-disguise instance with the threshold value `q` its reduction
/// asks about.
#[derive(Clone, Debug)]
pub struct DisguiseGadget {
    pub problem: DisguiseProblem,
    pub q: f64,
}

/// H_{n-1} / (n-1): closeness of any node on a directed n-cycle.
pub fn directed_cycle_closeness(n: usize) -> f64 {
    (1..n).map(|i| 1.0 / i as f64).sum::<f64>() / (n - 1) as f64
}

/// Closeness gadget over `g_prime` anchored at `w`.
///
/// Undirected: adds `v†` (id n′) hanging off `w`, and `v1` (n′+1) with a
/// pendant `v2` (n′+2) joined to every neighbor of `w`. Directed: adds `v†`
/// (n′) with `v† → w` and `v1` (n′+1) with `v1 → v†` and `v → v1` for every
/// predecessor `v` of `w`.
///
/// Only removals are searched: reaching `q` needs the result to have exactly
/// n−1 (undirected) or n (directed) edges, which costs exactly the budget in
/// removals, so any addition would overspend.
pub fn closeness_gadget(g_prime: &Graph, w: NodeId) -> Result<DisguiseGadget> {
    let np = g_prime.node_count();
    if np < 3 {
        return Err(Error::TooSmall(format!("gadget base needs at least 3 nodes, got {np}")));
    }
    if w >= np {
        return Err(Error::NodeOutOfRange(w, np));
    }
    if !is_connected(g_prime) {
        return Err(Error::InvalidParameter("gadget base must be connected".into()));
    }
    let directed = g_prime.is_directed();
    let v_dagger = np;
    let v1 = np + 1;
    let n = if directed { np + 2 } else { np + 3 };
    let mut g = Graph::new(n, directed);
    for (a, b) in g_prime.edges() {
        g.add_edge(a, b)?;
    }
    g.add_edge(v_dagger, w)?;
    if directed {
        g.add_edge(v1, v_dagger)?;
    } else {
        g.add_edge(v1, np + 2)?;
    }
    let preds = g_prime.predecessors(w);
    for &v in preds {
        g.add_edge(v, v1)?;
    }
    let budget = (g_prime.edge_count() + preds.len())
        .checked_sub(np)
        .ok_or_else(|| Error::InvalidParameter("negative gadget budget".into()))?;
    let q = if directed { directed_cycle_closeness(n) } else { 2.0 / n as f64 };
    let mut problem = DisguiseProblem::new(g, v_dagger, budget, CentralityKind::Closeness);
    problem.addable = EdgeRule::Nothing;
    Ok(DisguiseGadget { problem, q })
}

/// Node layout shared by the set-cover gadgets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverLayout {
    pub sets: Vec<NodeId>,
    pub elements: Vec<NodeId>,
    pub v_dagger: NodeId,
}

/// Betweenness gadget: set nodes `0..m`, element nodes `m..m+l`, then `v†`,
/// `v0`, `v1`. Only the links (S_j, v0) may be added and nothing removed.
pub fn betweenness_gadget(sc: &SetCoverInstance, directed: bool) -> Result<(DisguiseGadget, SetCoverLayout)> {
    let (l, m) = (sc.universe, sc.set_count());
    let v_dagger = m + l;
    let (v0, v1) = (v_dagger + 1, v_dagger + 2);
    let n = l + m + 3;
    let mut g = Graph::new(n, directed);
    g.add_edge(v_dagger, v0)?;
    g.add_edge(v1, v_dagger)?;
    let mut seen_u = BTreeSet::new();
    for (j, s) in sc.sets.iter().enumerate() {
        for &u in s {
            g.add_edge(j, m + u)?;
            if directed {
                g.add_edge(m + u, j)?;
            }
            if seen_u.insert(u) {
                g.add_edge(m + u, v1)?;
                if directed {
                    g.add_edge(v1, m + u)?;
                }
            }
        }
    }
    if directed {
        g.add_edge(v0, v1)?;
    }
    let nf = n as f64;
    let q = if directed { 1.0 } else { 2.0 } / ((nf - 1.0) * (nf - 2.0));
    let mut problem = DisguiseProblem::new(g, v_dagger, sc.k, CentralityKind::Betweenness);
    problem.removable = EdgeRule::Nothing;
    problem.addable = EdgeRule::Only((0..m).map(|j| (j, v0)).collect());
    let layout = SetCoverLayout { sets: (0..m).collect(), elements: (m..m + l).collect(), v_dagger };
    Ok((DisguiseGadget { problem, q }, layout))
}

/// An influence-recovery instance with both of its targets.
#[derive(Clone, Debug, PartialEq)]
pub struct RecoveryGadget {
    pub graph: Graph,
    pub layout: SetCoverLayout,
    pub model: RecoveryModel,
    pub addable: Vec<(NodeId, NodeId)>,
    /// 1 on every element node, 0 elsewhere.
    pub individual: Vec<f64>,
    pub global: f64,
}

impl RecoveryGadget {
    pub fn problem(&self, target: RecoveryTarget) -> RecoveryProblem {
        RecoveryProblem {
            graph: self.graph.clone(),
            v_dagger: self.layout.v_dagger,
            model: self.model.clone(),
            addable: self.addable.clone(),
            target,
        }
    }

    pub fn individual_problem(&self) -> RecoveryProblem {
        self.problem(RecoveryTarget::Individual(self.individual.clone()))
    }

    pub fn global_problem(&self) -> RecoveryProblem {
        self.problem(RecoveryTarget::Global(self.global))
    }
}

/// Sets `0..m`, elements `m..m+l`, `v†` last; arcs S_j → u_i (plus u_i → v†
/// when directed).
fn cascade_base(sc: &SetCoverInstance, directed: bool) -> Result<(Graph, SetCoverLayout)> {
    let (l, m) = (sc.universe, sc.set_count());
    let v_dagger = m + l;
    let mut g = Graph::new(m + l + 1, directed);
    for (j, s) in sc.sets.iter().enumerate() {
        for &u in s {
            g.add_edge(j, m + u)?;
        }
    }
    if directed {
        for u in 0..l {
            g.add_edge(m + u, v_dagger)?;
        }
    }
    let layout = SetCoverLayout { sets: (0..m).collect(), elements: (m..m + l).collect(), v_dagger };
    Ok((g, layout))
}

fn element_targets(n: usize, layout: &SetCoverLayout) -> Vec<f64> {
    let mut f = vec![0.0; n];
    for &u in &layout.elements {
        f[u] = 1.0;
    }
    f
}

/// Independent Cascade gadget. Arcs v† → S_j and S_j → u_i fire with
/// probability 1 and every other arc (both directions of undirected edges
/// included) with probability 0.
pub fn ic_setcover_gadget(sc: &SetCoverInstance, directed: bool) -> Result<RecoveryGadget> {
    let (g, layout) = cascade_base(sc, directed)?;
    let mut probabilities = BTreeMap::new();
    for (j, s) in sc.sets.iter().enumerate() {
        probabilities.insert((layout.v_dagger, j), 1.0);
        for &u in s {
            probabilities.insert((j, layout.sets.len() + u), 1.0);
        }
    }
    let addable = layout.sets.iter().map(|&j| (layout.v_dagger, j)).collect();
    Ok(RecoveryGadget {
        individual: element_targets(g.node_count(), &layout),
        global: (sc.k + sc.universe) as f64,
        model: RecoveryModel::IcArcs { probabilities, default: 0.0 },
        graph: g,
        layout,
        addable,
    })
}

/// Linear Threshold gadget with fixed thresholds.
///
/// Directed: the cascade graph with every threshold 1. Undirected: sets
/// `S_j` at `0..m`, `T_j` at `m..2m`, `s_{j,i}` at `2m + j·l + i`, elements
/// after those and `v†` last; `T_j` has threshold `l` and everything else 1.
pub fn lt_setcover_gadget(sc: &SetCoverInstance, directed: bool) -> Result<RecoveryGadget> {
    let (l, m) = (sc.universe, sc.set_count());
    if directed {
        let (g, layout) = cascade_base(sc, true)?;
        let addable = layout.sets.iter().map(|&j| (layout.v_dagger, j)).collect();
        return Ok(RecoveryGadget {
            individual: element_targets(g.node_count(), &layout),
            global: (sc.k + l) as f64,
            model: RecoveryModel::LtFixed(vec![1; g.node_count()]),
            graph: g,
            layout,
            addable,
        });
    }
    let t_node = |j: usize| m + j;
    let s_node = |j: usize, i: usize| 2 * m + j * l + i;
    let elem = |u: usize| 2 * m + m * l + u;
    let v_dagger = 2 * m + m * l + l;
    let n = v_dagger + 1;
    let mut g = Graph::undirected(n);
    for (j, s) in sc.sets.iter().enumerate() {
        for i in 0..l {
            g.add_edge(j, s_node(j, i))?;
            g.add_edge(s_node(j, i), t_node(j))?;
        }
        for &u in s {
            g.add_edge(t_node(j), elem(u))?;
        }
    }
    let mut thresholds = vec![1; n];
    for j in 0..m {
        thresholds[t_node(j)] = l;
    }
    let layout = SetCoverLayout { sets: (0..m).collect(), elements: (0..l).map(elem).collect(), v_dagger };
    let addable = layout.sets.iter().map(|&j| (v_dagger, j)).collect();
    Ok(RecoveryGadget {
        individual: element_targets(n, &layout),
        global: (sc.k * (l + 2) + l) as f64,
        model: RecoveryModel::LtFixed(thresholds),
        graph: g,
        layout,
        addable,
    })
}
