//! Simple directed or undirected graphs over dense integer node ids.
//!
//! Adjacency lists are kept sorted, so every "pick one" operation that does
//! not take an RNG has a deterministic lowest-id default.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    directed: bool,
    succ: Vec<Vec<NodeId>>,
    // Empty for undirected graphs; `predecessors` falls back to `succ`.
    pred: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize, directed: bool) -> Self {
        Graph {
            directed,
            succ: vec![Vec::new(); n],
            pred: if directed { vec![Vec::new(); n] } else { Vec::new() },
            edge_count: 0,
        }
    }

    pub fn undirected(n: usize) -> Self {
        Self::new(n, false)
    }

    pub fn directed(n: usize) -> Self {
        Self::new(n, true)
    }

    /// Builds a graph from an edge list, rejecting self-loops and duplicates.
    pub fn from_edges(n: usize, directed: bool, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut g = Graph::new(n, directed);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.succ.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count()
    }

    fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange(v, self.node_count()))
        }
    }

    pub fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: NodeId) -> &[NodeId] {
        if self.directed {
            &self.pred[v]
        } else {
            &self.succ[v]
        }
    }

    /// Neighbours in the union sense: predecessors ∪ successors, sorted.
    pub fn neighbors(&self, v: NodeId) -> Vec<NodeId> {
        if !self.directed {
            return self.succ[v].clone();
        }
        let (a, b) = (&self.succ[v], &self.pred[v]);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    x
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    x
                }
                (Some(_), Some(&y)) => {
                    j += 1;
                    y
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        out
    }

    /// |N(v)| with the union semantics used by degree centrality.
    pub fn degree(&self, v: NodeId) -> usize {
        if self.directed {
            self.neighbors(v).len()
        } else {
            self.succ[v].len()
        }
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && v < self.node_count() && self.succ[u].binary_search(&v).is_ok()
    }

    /// Adjacent in either direction.
    pub fn adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.has_edge(u, v) || (self.directed && self.has_edge(v, u))
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let pos = match self.succ[u].binary_search(&v) {
            Ok(_) => return Err(Error::DuplicateEdge(u, v)),
            Err(pos) => pos,
        };
        self.succ[u].insert(pos, v);
        let back = if self.directed { &mut self.pred[v] } else { &mut self.succ[v] };
        let pos = back.binary_search(&u).unwrap_err();
        back.insert(pos, u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.check_node(u)?;
        self.check_node(v)?;
        let pos = self.succ[u]
            .binary_search(&v)
            .map_err(|_| Error::MissingEdge(u, v))?;
        self.succ[u].remove(pos);
        let back = if self.directed { &mut self.pred[v] } else { &mut self.succ[v] };
        let pos = back.binary_search(&u).expect("adjacency out of sync");
        back.remove(pos);
        self.edge_count -= 1;
        Ok(())
    }

    /// Returns a copy with the edge added.
    pub fn with_edge(&self, u: NodeId, v: NodeId) -> Result<Graph> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    /// Returns a copy with the edge removed.
    pub fn without_edge(&self, u: NodeId, v: NodeId) -> Result<Graph> {
        let mut g = self.clone();
        g.remove_edge(u, v)?;
        Ok(g)
    }

    /// Every edge once; undirected edges are reported as (min, max).
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in self.nodes() {
            for &v in &self.succ[u] {
                if self.directed || u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Canonical key for a node pair: ordered for directed graphs, (min, max) otherwise.
    pub fn pair_key(&self, u: NodeId, v: NodeId) -> (NodeId, NodeId) {
        if self.directed || u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// Symmetrized undirected copy (edge present if either direction is).
    pub fn to_undirected(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut g = Graph::undirected(self.node_count());
        for (u, v) in self.edges() {
            if !g.has_edge(u, v) {
                g.add_edge(u, v).expect("valid edge");
            }
        }
        g
    }

    /// Relabels nodes so that node `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[NodeId]) -> Graph {
        let mut g = Graph::new(self.node_count(), self.directed);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permutation preserves simplicity");
        }
        g
    }
}

/// Hop distances from `src`; `None` marks unreachable nodes.
pub fn bfs_distances(g: &Graph, src: NodeId) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.node_count()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.successors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

fn reaches_all<'a>(n: usize, src: NodeId, next: impl Fn(NodeId) -> &'a [NodeId]) -> bool {
    let mut seen = vec![false; n];
    seen[src] = true;
    let mut stack = vec![src];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in next(u) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Connectivity, or strong connectivity for directed graphs.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.node_count();
    if n <= 1 {
        return true;
    }
    if !reaches_all(n, 0, |u| g.successors(u)) {
        return false;
    }
    !g.is_directed() || reaches_all(n, 0, |u| g.predecessors(u))
}

/// Weakly connected components, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<NodeId>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.successors(u).iter().chain(g.predecessors(u)) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Single-source shortest-path counting and dependency accumulation.
#[derive(Clone, Debug)]
pub struct BrandesPass {
    pub dist: Vec<Option<usize>>,
    /// Number of distinct shortest paths from the source.
    pub sigma: Vec<f64>,
    /// Dependency of the source on each node: Σ_t σ_st(v)/σ_st over targets t.
    pub delta: Vec<f64>,
    /// Nodes in non-decreasing distance order (reachable only).
    pub order: Vec<NodeId>,
}

pub fn brandes_pass(g: &Graph, src: NodeId) -> BrandesPass {
    let n = g.node_count();
    let mut dist = vec![None; n];
    let mut sigma = vec![0.0; n];
    let mut order = Vec::with_capacity(n);
    dist[src] = Some(0);
    sigma[src] = 1.0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        let du = dist[u].unwrap();
        for &w in g.successors(u) {
            match dist[w] {
                None => {
                    dist[w] = Some(du + 1);
                    sigma[w] = sigma[u];
                    queue.push_back(w);
                }
                Some(dw) if dw == du + 1 => sigma[w] += sigma[u],
                _ => {}
            }
        }
    }
    let mut delta = vec![0.0; n];
    for &w in order.iter().rev() {
        let dw = dist[w].unwrap();
        if dw == 0 {
            continue;
        }
        let coeff = (1.0 + delta[w]) / sigma[w];
        for &v in g.predecessors(w) {
            if dist[v] == Some(dw - 1) {
                delta[v] += sigma[v] * coeff;
            }
        }
    }
    BrandesPass { dist, sigma, delta, order }
}

/// An edge rewiring: additions are applied before removals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RewiringPlan {
    pub additions: Vec<(NodeId, NodeId)>,
    pub removals: Vec<(NodeId, NodeId)>,
}

impl RewiringPlan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cost(&self) -> usize {
        self.additions.len() + self.removals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cost() == 0
    }

    /// Checks the plan against `g` and an optional budget.
    pub fn validate(&self, g: &Graph, budget: Option<usize>) -> Result<()> {
        if let Some(b) = budget {
            if self.cost() > b {
                return Err(Error::InvalidParameter(format!(
                    "plan cost {} exceeds budget {b}",
                    self.cost()
                )));
            }
        }
        let adds: std::collections::BTreeSet<_> =
            self.additions.iter().map(|&(u, v)| g.pair_key(u, v)).collect();
        if adds.len() != self.additions.len() {
            return Err(Error::InvalidParameter("repeated addition".into()));
        }
        let mut rems = std::collections::BTreeSet::new();
        for &(u, v) in &self.removals {
            if !g.has_edge(u, v) {
                return Err(Error::MissingEdge(u, v));
            }
            if !rems.insert(g.pair_key(u, v)) {
                return Err(Error::InvalidParameter("repeated removal".into()));
            }
        }
        for &(u, v) in &self.additions {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            if rems.contains(&g.pair_key(u, v)) {
                return Err(Error::InvalidParameter(format!("({u}, {v}) both added and removed")));
            }
        }
        Ok(())
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        self.validate(g, None)?;
        let mut out = g.clone();
        for &(u, v) in &self.additions {
            out.add_edge(u, v)?;
        }
        for &(u, v) in &self.removals {
            out.remove_edge(u, v)?;
        }
        Ok(out)
    }
}
