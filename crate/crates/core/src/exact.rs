//! Exhaustive solvers for optimal centrality disguise and minimal influence
//! recovery. They only exist to check heuristics and reductions on toy
//! instances; every search has an explicit size cap.

use std::collections::{BTreeMap, BTreeSet};

use crate::centrality::{centrality_of, CentralityKind};
use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph, NodeId, RewiringPlan};
use crate::influence::{exact_influence_ic_arcs, exact_influence_ic_per_node, exact_influence_lt_per_node, lt_influence_fixed};

pub const DEFAULT_SEARCH_LIMIT: u128 = 1_000_000;
pub const MAX_RECOVERY_UNIVERSE: usize = 20;
const VALUE_EPS: f64 = 1e-12;

/// Which node pairs an operation may touch. Pairs use `Graph::pair_key` form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeRule {
    All,
    Nothing,
    Only(BTreeSet<(NodeId, NodeId)>),
    AllExcept(BTreeSet<(NodeId, NodeId)>),
}

impl EdgeRule {
    fn allows(&self, key: (NodeId, NodeId)) -> bool {
        match self {
            EdgeRule::All => true,
            EdgeRule::Nothing => false,
            EdgeRule::Only(s) => s.contains(&key),
            EdgeRule::AllExcept(s) => !s.contains(&key),
        }
    }
}

/// Minimize a centrality of `v_dagger` with at most `budget` additions plus
/// removals. `removable` is E minus the forbidden removals and `addable` the
/// non-edges minus the forbidden additions.
#[derive(Clone, Debug)]
pub struct DisguiseProblem {
    pub graph: Graph,
    pub v_dagger: NodeId,
    pub budget: usize,
    pub kind: CentralityKind,
    pub removable: EdgeRule,
    pub addable: EdgeRule,
    /// Keep only plans whose result is (strongly) connected.
    pub require_connected: bool,
    /// Upper bound on the number of plans the search may enumerate.
    pub search_limit: u128,
}

impl DisguiseProblem {
    pub fn new(graph: Graph, v_dagger: NodeId, budget: usize, kind: CentralityKind) -> Self {
        DisguiseProblem {
            graph,
            v_dagger,
            budget,
            kind,
            removable: EdgeRule::All,
            addable: EdgeRule::All,
            require_connected: true,
            search_limit: DEFAULT_SEARCH_LIMIT,
        }
    }

    fn candidates(&self) -> (Vec<(NodeId, NodeId)>, Vec<(NodeId, NodeId)>) {
        let g = &self.graph;
        let mut adds = Vec::new();
        for u in g.nodes() {
            for v in g.nodes() {
                if u == v || (!g.is_directed() && u > v) || g.has_edge(u, v) {
                    continue;
                }
                if self.addable.allows((u, v)) {
                    adds.push((u, v));
                }
            }
        }
        let rems = g.edges().into_iter().filter(|&e| self.removable.allows(e)).collect();
        (adds, rems)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DisguiseSolution {
    pub plan: RewiringPlan,
    pub value: f64,
    /// False when no plan (not even the empty one) met the connectivity filter;
    /// the empty plan and the current value are reported in that case.
    pub feasible: bool,
}

/// Σ_{i ≤ b} C(c, i), saturating.
pub fn plan_space_size(candidates: usize, budget: usize) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for i in 0..=budget.min(candidates) {
        total = total.saturating_add(term);
        term = term.saturating_mul((candidates - i) as u128) / (i as u128 + 1);
    }
    total
}

struct Search<'a> {
    problem: &'a DisguiseProblem,
    adds: Vec<(NodeId, NodeId)>,
    rems: Vec<(NodeId, NodeId)>,
    chosen_adds: Vec<(NodeId, NodeId)>,
    chosen_rems: Vec<(NodeId, NodeId)>,
    best: Option<(f64, RewiringPlan)>,
}

impl Search<'_> {
    fn consider(&mut self, g: &Graph) -> Result<()> {
        let value = centrality_of(g, self.problem.kind, self.problem.v_dagger)?;
        let better = match &self.best {
            None => true,
            Some((best, plan)) => {
                value < best - VALUE_EPS
                    || (value <= best + VALUE_EPS
                        && (self.chosen_adds.as_slice(), self.chosen_rems.as_slice())
                            < (plan.additions.as_slice(), plan.removals.as_slice()))
            }
        };
        if better {
            let plan = RewiringPlan { additions: self.chosen_adds.clone(), removals: self.chosen_rems.clone() };
            self.best = Some((value, plan));
        }
        Ok(())
    }

    fn removals(&mut self, g: &mut Graph, start: usize, left: usize) -> Result<()> {
        // Removing more edges never restores connectivity, so prune here.
        if self.problem.require_connected && !is_connected(g) {
            return Ok(());
        }
        self.consider(g)?;
        if left == 0 {
            return Ok(());
        }
        for i in start..self.rems.len() {
            let (u, v) = self.rems[i];
            g.remove_edge(u, v)?;
            self.chosen_rems.push((u, v));
            self.removals(g, i + 1, left - 1)?;
            self.chosen_rems.pop();
            g.add_edge(u, v)?;
        }
        Ok(())
    }

    fn additions(&mut self, g: &mut Graph, start: usize, left: usize) -> Result<()> {
        self.removals(g, 0, left)?;
        if left == 0 {
            return Ok(());
        }
        for i in start..self.adds.len() {
            let (u, v) = self.adds[i];
            g.add_edge(u, v)?;
            self.chosen_adds.push((u, v));
            self.additions(g, i + 1, left - 1)?;
            self.chosen_adds.pop();
            g.remove_edge(u, v)?;
        }
        Ok(())
    }
}

/// Exhaustive search over every plan within budget. Among plans of equal
/// value the lexicographically smallest (additions, then removals) wins.
pub fn optimal_disguise(problem: &DisguiseProblem) -> Result<DisguiseSolution> {
    let g = &problem.graph;
    if problem.v_dagger >= g.node_count() {
        return Err(Error::NodeOutOfRange(problem.v_dagger, g.node_count()));
    }
    let (adds, rems) = problem.candidates();
    let space = plan_space_size(adds.len() + rems.len(), problem.budget);
    if space > problem.search_limit {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{space} plans over {} candidate edges exceed the limit of {}",
            adds.len() + rems.len(),
            problem.search_limit
        )));
    }
    let mut search = Search { problem, adds, rems, chosen_adds: vec![], chosen_rems: vec![], best: None };
    let mut work = g.clone();
    search.additions(&mut work, 0, problem.budget)?;
    Ok(match search.best {
        Some((value, plan)) => DisguiseSolution { plan, value, feasible: true },
        None => DisguiseSolution {
            plan: RewiringPlan::new(),
            value: centrality_of(g, problem.kind, problem.v_dagger)?,
            feasible: false,
        },
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum RecoveryModel {
    /// Independent Cascade with one probability on every arc.
    IcUniform(f64),
    /// Independent Cascade with per-arc probabilities; arcs not listed use `default`.
    IcArcs { probabilities: BTreeMap<(NodeId, NodeId), f64>, default: f64 },
    /// Linear Threshold with thresholds drawn uniformly (exact expectation).
    LtUniform,
    /// Linear Threshold with the given thresholds.
    LtFixed(Vec<usize>),
}

impl RecoveryModel {
    pub fn per_node(&self, g: &Graph, v: NodeId) -> Result<Vec<f64>> {
        match self {
            RecoveryModel::IcUniform(p) => exact_influence_ic_per_node(g, v, *p),
            RecoveryModel::IcArcs { probabilities, default } => {
                exact_influence_ic_arcs(g, v, |a, b| *probabilities.get(&(a, b)).unwrap_or(default))
            }
            RecoveryModel::LtUniform => exact_influence_lt_per_node(g, v),
            RecoveryModel::LtFixed(t) => lt_influence_fixed(g, v, t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RecoveryTarget {
    /// Required influence on each node.
    Individual(Vec<f64>),
    /// Required total influence.
    Global(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecoveryProblem {
    pub graph: Graph,
    pub v_dagger: NodeId,
    pub model: RecoveryModel,
    /// Edges that may be added (the complement of the forbidden additions).
    pub addable: Vec<(NodeId, NodeId)>,
    pub target: RecoveryTarget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecoveryOutcome {
    Feasible(Vec<(NodeId, NodeId)>),
    Infeasible,
}

impl RecoveryOutcome {
    pub fn size(&self) -> Option<usize> {
        match self {
            RecoveryOutcome::Feasible(a) => Some(a.len()),
            RecoveryOutcome::Infeasible => None,
        }
    }
}

fn meets(target: &RecoveryTarget, influence: &[f64]) -> Result<bool> {
    const TOL: f64 = 1e-9;
    Ok(match target {
        RecoveryTarget::Individual(f) => {
            if f.len() != influence.len() {
                return Err(Error::InvalidParameter("one individual target per node required".into()));
            }
            influence.iter().zip(f).all(|(i, f)| *i >= f - TOL)
        }
        RecoveryTarget::Global(phi) => influence.iter().sum::<f64>() >= phi - TOL,
    })
}

/// Smallest set of additions meeting the target, trying sizes in increasing
/// order and subsets of one size in lexicographic order.
pub fn minimal_recovery(problem: &RecoveryProblem) -> Result<RecoveryOutcome> {
    let g = &problem.graph;
    // Ordered and deduplicated by pair key; reported in the caller's orientation.
    let mut universe: Vec<(NodeId, NodeId)> = problem.addable.clone();
    universe.sort_unstable_by_key(|&(u, v)| g.pair_key(u, v));
    universe.dedup_by_key(|&mut (u, v)| g.pair_key(u, v));
    if universe.len() > MAX_RECOVERY_UNIVERSE {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{} candidate additions exceed the limit of {MAX_RECOVERY_UNIVERSE}",
            universe.len()
        )));
    }
    for &(u, v) in &universe {
        if u == v || g.has_edge(u, v) {
            return Err(Error::InvalidParameter(format!("({u}, {v}) cannot be added")));
        }
    }
    match &problem.target {
        RecoveryTarget::Individual(f) if f.iter().any(|x| !(0.0..=1.0).contains(x)) => {
            return Err(Error::InvalidParameter("individual targets must lie in [0, 1]".into()));
        }
        RecoveryTarget::Global(phi) if *phi < 0.0 => {
            return Err(Error::InvalidParameter("global target must be non-negative".into()));
        }
        _ => {}
    }
    let m = universe.len();
    for size in 0..=m {
        // Lexicographic walk over index combinations of this size.
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let chosen: Vec<(NodeId, NodeId)> = idx.iter().map(|&i| universe[i]).collect();
            let mut h = g.clone();
            for &(u, v) in &chosen {
                h.add_edge(u, v)?;
            }
            if meets(&problem.target, &problem.model.per_node(&h, problem.v_dagger)?)? {
                return Ok(RecoveryOutcome::Feasible(chosen));
            }
            let Some(pos) = (0..size).rev().find(|&p| idx[p] < m - size + p) else { break };
            idx[pos] += 1;
            for p in pos + 1..size {
                idx[p] = idx[p - 1] + 1;
            }
        }
    }
    Ok(RecoveryOutcome::Infeasible)
}
