//! DICE ("Disconnect Internally, Connect Externally"): hide a group from
//! community detection by cutting some of its internal links and adding
//! links from members to outsiders.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::community::{detect, CommunityStructure, DetectorKind};
use crate::concealment::{mu, ConcealmentParams, HiddenGroup};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, RewiringPlan};
use crate::rng::{seeded, stream};

/// External additions get this many uniform draws per requested edge before
/// the rest are skipped.
const RETRIES_PER_ADDITION: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiceConfig {
    pub budget: usize,
    pub internal_disconnects: usize,
    pub seed: u64,
}

impl DiceConfig {
    pub fn new(budget: usize, internal_disconnects: usize, seed: u64) -> Result<Self> {
        let cfg = DiceConfig { budget, internal_disconnects, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidParameter("DICE budget must be at least 1".into()));
        }
        if self.internal_disconnects > self.budget {
            return Err(Error::InvalidParameter(format!(
                "internal disconnects {} exceed budget {}",
                self.internal_disconnects, self.budget
            )));
        }
        Ok(())
    }

    fn additions(&self) -> usize {
        self.budget - self.internal_disconnects
    }
}

/// Plans one DICE round without applying it.
///
/// If the group has fewer than `d` internal links, all are removed and the
/// unused removals are not turned into additions.
pub fn dice_plan<R: Rng + ?Sized>(g: &Graph, c: &HiddenGroup, cfg: &DiceConfig, rng: &mut R) -> Result<RewiringPlan> {
    cfg.validate()?;
    let n = g.node_count();
    if let Some(&v) = c.members().iter().find(|&&v| v >= n) {
        return Err(Error::NodeOutOfRange(v, n));
    }
    let outsiders: Vec<NodeId> = g.nodes().filter(|&v| !c.contains(v)).collect();
    if outsiders.is_empty() && cfg.additions() > 0 {
        return Err(Error::InvalidParameter("hidden group covers every node; nothing to connect to".into()));
    }

    let internal: Vec<(NodeId, NodeId)> =
        g.edges().into_iter().filter(|&(u, v)| c.contains(u) && c.contains(v)).collect();
    let mut plan = RewiringPlan::new();
    plan.removals = internal.choose_multiple(rng, cfg.internal_disconnects.min(internal.len())).copied().collect();

    let wanted = cfg.additions();
    let mut added = BTreeSet::new();
    let mut attempts = 0;
    while added.len() < wanted && attempts < RETRIES_PER_ADDITION * wanted {
        attempts += 1;
        let m = *c.members().choose(rng).expect("group is non-empty");
        let o = *outsiders.choose(rng).expect("outsiders checked above");
        let (a, b) = if g.is_directed() && rng.gen_bool(0.5) { (o, m) } else { (m, o) };
        if !g.has_edge(a, b) && added.insert(g.pair_key(a, b)) {
            plan.additions.push((a, b));
        }
    }
    Ok(plan)
}

pub fn dice_round<R: Rng + ?Sized>(
    g: &Graph,
    c: &HiddenGroup,
    cfg: &DiceConfig,
    rng: &mut R,
) -> Result<(Graph, RewiringPlan)> {
    let plan = dice_plan(g, c, cfg, rng)?;
    Ok((plan.apply(g)?, plan))
}

/// A community of median size (lower median for an even count), uniform among ties.
pub fn select_target_community<R: Rng + ?Sized>(cs: &CommunityStructure, rng: &mut R) -> Result<HiddenGroup> {
    if cs.is_empty() {
        return Err(Error::InvalidPartition("no communities to choose from".into()));
    }
    let mut sizes: Vec<usize> = cs.communities().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let median = sizes[(sizes.len() - 1) / 2];
    let tied: Vec<&Vec<NodeId>> = cs.communities().iter().filter(|c| c.len() == median).collect();
    let chosen = tied[rng.gen_range(0..tied.len())];
    HiddenGroup::new(chosen.clone(), cs.node_count())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiceRow {
    pub round: usize,
    /// Share of the scheduled rounds completed, in percent.
    pub pct_rounds: f64,
    pub mu: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiceTrajectory {
    pub target: HiddenGroup,
    pub rows: Vec<DiceRow>,
    pub final_graph: Graph,
}

/// Number of rounds for a group of `size` members: ⌈size / b⌉.
pub fn round_count(size: usize, budget: usize) -> usize {
    size.div_ceil(budget)
}

/// Detects communities, picks the median-size one as the hidden group, then
/// alternates DICE rounds and re-detection, recording μ of the original group.
pub fn dice_run(g: &Graph, detector: &DetectorKind, cfg: &DiceConfig, params: ConcealmentParams) -> Result<DiceTrajectory> {
    cfg.validate()?;
    let cs0 = detect(g, detector)?;
    let target = select_target_community(&cs0, &mut seeded(cfg.seed))?;
    dice_run_with_target(g, detector, &target, &cs0, cfg, params)
}

/// Same as [`dice_run`] with the hidden group and initial partition supplied.
pub fn dice_run_with_target(
    g: &Graph,
    detector: &DetectorKind,
    target: &HiddenGroup,
    cs0: &CommunityStructure,
    cfg: &DiceConfig,
    params: ConcealmentParams,
) -> Result<DiceTrajectory> {
    cfg.validate()?;
    let rounds = round_count(target.len(), cfg.budget);
    let mut rows = vec![DiceRow { round: 0, pct_rounds: 0.0, mu: mu(target, cs0, params) }];
    let mut current = g.clone();
    for round in 1..=rounds {
        let mut rng = stream(cfg.seed, round as u64);
        current = dice_round(&current, target, cfg, &mut rng)?.0;
        let cs = detect(&current, detector)?;
        rows.push(DiceRow {
            round,
            pct_rounds: 100.0 * round as f64 / rounds as f64,
            mu: mu(target, &cs, params),
        });
    }
    Ok(DiceTrajectory { target: target.clone(), rows, final_graph: current })
}
