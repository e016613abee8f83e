//! ROAM ("Remove One, Add Many"): lower a node's centrality by dropping one
//! of its links and reconnecting the dropped neighbor to other neighbors.

use crate::centrality::ranks_of;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, RewiringPlan};
use crate::influence::{estimate_influence, InfluenceConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelectionStrategy {
    MaxDegree,
    MinDegree,
}

impl SelectionStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SelectionStrategy::MaxDegree => "max",
            SelectionStrategy::MinDegree => "min",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoamConfig {
    pub budget: usize,
    pub v0_strategy: SelectionStrategy,
    pub target_strategy: SelectionStrategy,
}

impl RoamConfig {
    /// ROAM-max-min with budget `b`.
    pub fn new(budget: usize) -> Result<Self> {
        let cfg = RoamConfig {
            budget,
            v0_strategy: SelectionStrategy::MaxDegree,
            target_strategy: SelectionStrategy::MinDegree,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidParameter("ROAM budget must be at least 1".into()));
        }
        Ok(())
    }
}

/// Sorts `candidates` so the preferred node comes first; ties go to the lowest id.
fn order_by_degree(g: &Graph, candidates: &mut [NodeId], strategy: SelectionStrategy) {
    candidates.sort_by(|&a, &b| {
        let by_degree = match strategy {
            SelectionStrategy::MaxDegree => g.degree(b).cmp(&g.degree(a)),
            SelectionStrategy::MinDegree => g.degree(a).cmp(&g.degree(b)),
        };
        by_degree.then(a.cmp(&b))
    });
}

/// Plans one ROAM step for `v_dagger` without applying it.
pub fn roam_plan(g: &Graph, v_dagger: NodeId, cfg: &RoamConfig) -> Result<RewiringPlan> {
    cfg.validate()?;
    if v_dagger >= g.node_count() {
        return Err(Error::NodeOutOfRange(v_dagger, g.node_count()));
    }
    let mut outs = g.successors(v_dagger).to_vec();
    if outs.is_empty() {
        return Err(Error::NoRemovableLink(v_dagger));
    }
    order_by_degree(g, &mut outs, cfg.v0_strategy);
    let v0 = outs[0];

    let mut plan = RewiringPlan::new();
    let mut targets: Vec<NodeId> = if g.is_directed() {
        g.predecessors(v_dagger).iter().copied().filter(|&w| w != v0 && !g.has_edge(w, v0)).collect()
    } else {
        g.successors(v_dagger).iter().copied().filter(|&w| w != v0 && !g.has_edge(v0, w)).collect()
    };
    order_by_degree(g, &mut targets, cfg.target_strategy);
    for &t in targets.iter().take(cfg.budget - 1) {
        plan.additions.push(if g.is_directed() { (t, v0) } else { (v0, t) });
    }
    plan.removals.push((v_dagger, v0));
    Ok(plan)
}

/// One ROAM step: the rewired graph and the plan that produced it.
pub fn roam_step(g: &Graph, v_dagger: NodeId, cfg: &RoamConfig) -> Result<(Graph, RewiringPlan)> {
    let plan = roam_plan(g, v_dagger, cfg)?;
    Ok((plan.apply(g)?, plan))
}

/// Influence models tracked along a ROAM run.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TrackedInfluence {
    pub ic: Option<InfluenceConfig>,
    pub lt: Option<InfluenceConfig>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoamRow {
    pub execution: usize,
    /// Degree, closeness and betweenness rank of the source.
    pub ranks: [usize; 3],
    pub ic_relative_influence: Option<f64>,
    pub lt_relative_influence: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RunStatus {
    Completed,
    /// The step for `execution` failed; rows up to `execution - 1` are valid.
    Stopped { execution: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoamTrajectory {
    pub source: NodeId,
    pub rows: Vec<RoamRow>,
    pub status: RunStatus,
    pub final_graph: Graph,
}

fn relative(current: f64, original: f64) -> f64 {
    if original == 0.0 {
        if current == 0.0 { 1.0 } else { f64::INFINITY }
    } else {
        current / original
    }
}

/// Applies ROAM `executions` times in a row, recording ranks and relative
/// influence of the source after each one. Row 0 is the untouched graph.
pub fn roam_run(
    g: &Graph,
    v_dagger: NodeId,
    cfg: &RoamConfig,
    executions: usize,
    influence: &TrackedInfluence,
) -> Result<RoamTrajectory> {
    cfg.validate()?;
    if executions == 0 {
        return Err(Error::InvalidParameter("executions must be at least 1".into()));
    }
    let total = |g: &Graph, c: &Option<InfluenceConfig>| -> Result<Option<f64>> {
        c.as_ref().map(|c| estimate_influence(g, v_dagger, c).map(|e| e.total)).transpose()
    };
    let base_ic = total(g, &influence.ic)?;
    let base_lt = total(g, &influence.lt)?;

    let mut rows = vec![RoamRow {
        execution: 0,
        ranks: ranks_of(g, v_dagger)?,
        ic_relative_influence: base_ic.map(|_| 1.0),
        lt_relative_influence: base_lt.map(|_| 1.0),
    }];
    let mut current = g.clone();
    let mut status = RunStatus::Completed;
    for execution in 1..=executions {
        let next = match roam_step(&current, v_dagger, cfg) {
            Ok((next, _)) => next,
            Err(e) => {
                status = RunStatus::Stopped { execution, reason: e.to_string() };
                break;
            }
        };
        current = next;
        let ic = total(&current, &influence.ic)?;
        let lt = total(&current, &influence.lt)?;
        rows.push(RoamRow {
            execution,
            ranks: ranks_of(&current, v_dagger)?,
            ic_relative_influence: ic.zip(base_ic).map(|(c, o)| relative(c, o)),
            lt_relative_influence: lt.zip(base_lt).map(|(c, o)| relative(c, o)),
        });
    }
    Ok(RoamTrajectory { source: v_dagger, rows, status, final_graph: current })
}
