//! How well a node subset is hidden within a detected community structure.
//!
//! `μ′` rewards spreading the group's members over many communities, `μ″`
//! rewards members sharing communities with non-members, and `μ` blends the
//! two with weight `α`.
//!
//! `μ″` sums only over communities that contain at least one member. Summed
//! over every community the expression is identically 1, which cannot
//! distinguish an exposed group from a hidden one.

use crate::community::CommunityStructure;
use crate::error::{Error, Result};
use crate::graph::NodeId;

pub const DEFAULT_ALPHA: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcealmentParams {
    pub alpha: f64,
}

impl ConcealmentParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("alpha {alpha} outside [0, 1]")));
        }
        Ok(ConcealmentParams { alpha })
    }
}

impl Default for ConcealmentParams {
    fn default() -> Self {
        ConcealmentParams { alpha: DEFAULT_ALPHA }
    }
}

/// The group trying to stay undetected (C†).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HiddenGroup {
    members: Vec<NodeId>,
}

impl HiddenGroup {
    pub fn new(mut members: Vec<NodeId>, n: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::InvalidParameter("hidden group is empty".into()));
        }
        if let Some(&v) = members.iter().find(|&&v| v >= n) {
            return Err(Error::NodeOutOfRange(v, n));
        }
        Ok(HiddenGroup { members })
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// (|C_i ∩ C†|, |C_i \ C†|) for every community.
fn overlaps(c: &HiddenGroup, cs: &CommunityStructure) -> Vec<(usize, usize)> {
    cs.communities()
        .iter()
        .map(|comm| {
            let inside = comm.iter().filter(|&&v| c.contains(v)).count();
            (inside, comm.len() - inside)
        })
        .collect()
}

pub fn mu_prime(c: &HiddenGroup, cs: &CommunityStructure) -> f64 {
    let ov = overlaps(c, cs);
    let touched = ov.iter().filter(|(i, _)| *i > 0).count();
    let largest = ov.iter().map(|(i, _)| *i).max().unwrap_or(0);
    if touched == 0 {
        return 0.0;
    }
    (touched - 1) as f64 / ((cs.len().saturating_sub(1)).max(1) * largest) as f64
}

pub fn mu_double_prime(c: &HiddenGroup, cs: &CommunityStructure) -> f64 {
    let n = cs.node_count();
    let outsiders: usize = overlaps(c, cs).iter().filter(|(i, _)| *i > 0).map(|(_, o)| o).sum();
    outsiders as f64 / (n.saturating_sub(c.len())).max(1) as f64
}

/// `μ″` with the sum taken over every community; kept to show why the
/// restricted reading is needed (this variant is identically 1 whenever a
/// non-member exists).
pub fn mu_double_prime_unrestricted(c: &HiddenGroup, cs: &CommunityStructure) -> f64 {
    let n = cs.node_count();
    let outsiders: usize = overlaps(c, cs).iter().map(|(_, o)| o).sum();
    outsiders as f64 / (n.saturating_sub(c.len())).max(1) as f64
}

pub fn mu(c: &HiddenGroup, cs: &CommunityStructure, params: ConcealmentParams) -> f64 {
    params.alpha * mu_prime(c, cs) + (1.0 - params.alpha) * mu_double_prime(c, cs)
}
