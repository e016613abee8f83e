//! Lieutenant networks: a source shielded by two lieutenant groups so that
//! every lieutenant outranks it on degree, closeness and betweenness.
//!
//! Layout: source `0`, group L at `1..=k`, group L′ at `k+1..=2k`, members
//! after that. Member `j` links to lieutenants `(c·j + t) mod k` of both
//! groups for `t < c`, which keeps member counts per lieutenant within one.

use rayon::prelude::*;

use crate::centrality::{betweenness_centrality, closeness_all, degree_all};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::influence::{estimate_influence, InfluenceConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LieutenantSpec {
    pub n: usize,
    pub k: usize,
    pub c: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Source,
    LieutenantL,
    LieutenantLPrime,
    Member,
}

impl LieutenantSpec {
    pub fn new(n: usize, k: usize, c: usize) -> Result<Self> {
        let spec = LieutenantSpec { n, k, c };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let LieutenantSpec { n, k, c } = *self;
        if k == 0 || c == 0 || c > k || n < 2 * k + 2 {
            return Err(Error::InvalidParameter(format!(
                "lieutenant network needs 1 <= c <= k and n >= 2k + 2 (n={n}, k={k}, c={c})"
            )));
        }
        Ok(())
    }

    /// Number of members, λ = n − 2k − 1.
    pub fn members(&self) -> usize {
        self.n - 2 * self.k - 1
    }
}

pub fn build_lieutenant(spec: &LieutenantSpec) -> Result<(Graph, Vec<Role>)> {
    spec.validate()?;
    let LieutenantSpec { n, k, c } = *spec;
    let l = |i: usize| 1 + i;
    let lp = |i: usize| 1 + k + i;
    let mut g = Graph::undirected(n);
    for i in 0..k {
        g.add_edge(0, l(i))?;
        g.add_edge(0, lp(i))?;
        for j in 0..k {
            g.add_edge(l(i), lp(j))?;
        }
    }
    for j in 0..spec.members() {
        let m = 2 * k + 1 + j;
        for t in 0..c {
            let i = (c * j + t) % k;
            g.add_edge(m, l(i))?;
            g.add_edge(m, lp(i))?;
        }
    }
    let roles = (0..n)
        .map(|v| match v {
            0 => Role::Source,
            v if v <= k => Role::LieutenantL,
            v if v <= 2 * k => Role::LieutenantLPrime,
            _ => Role::Member,
        })
        .collect();
    Ok((g, roles))
}

/// f = ⌊cλ/k⌋ and whether f > k − 1 and f² > 4ck both hold.
pub fn check_dominance_precondition(spec: &LieutenantSpec) -> (usize, bool) {
    let f = spec.c * spec.members() / spec.k;
    (f, f + 1 > spec.k && f * f > 4 * spec.c * spec.k)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieutenantCell {
    pub k: usize,
    pub c: usize,
    /// None when (k, c) is not a valid spec for this n.
    pub result: Option<CellResult>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellResult {
    pub f: usize,
    pub precondition_holds: bool,
    /// min over lieutenants of (lieutenant − source) for degree, closeness, betweenness.
    pub gaps: [f64; 3],
    pub ic_influence: Option<f64>,
    pub lt_influence: Option<f64>,
}

/// Smallest lieutenant-minus-source difference for each centrality.
pub fn centrality_gaps(spec: &LieutenantSpec) -> Result<[f64; 3]> {
    let (g, roles) = build_lieutenant(spec)?;
    let measures = [degree_all(&g)?, closeness_all(&g)?, betweenness_centrality(&g)?];
    let lieutenants: Vec<NodeId> =
        g.nodes().filter(|&v| matches!(roles[v], Role::LieutenantL | Role::LieutenantLPrime)).collect();
    Ok(measures.map(|vals| lieutenants.iter().map(|&v| vals[v] - vals[0]).fold(f64::INFINITY, f64::min)))
}

pub fn evaluate_cell(spec: &LieutenantSpec, ic: Option<&InfluenceConfig>, lt: Option<&InfluenceConfig>) -> Result<CellResult> {
    let (f, precondition_holds) = check_dominance_precondition(spec);
    let gaps = centrality_gaps(spec)?;
    let (g, _) = build_lieutenant(spec)?;
    let infl = |c: Option<&InfluenceConfig>| c.map(|c| estimate_influence(&g, 0, c).map(|e| e.total)).transpose();
    Ok(CellResult { f, precondition_holds, gaps, ic_influence: infl(ic)?, lt_influence: infl(lt)? })
}

/// Evaluates every (k, c) pair; invalid pairs (c > k, or too few nodes) are
/// kept with no result. Cells come back in (k, c) order.
pub fn lieutenant_sweep(
    n: usize,
    ks: &[usize],
    cs: &[usize],
    ic: Option<&InfluenceConfig>,
    lt: Option<&InfluenceConfig>,
) -> Result<Vec<LieutenantCell>> {
    let pairs: Vec<(usize, usize)> = ks.iter().flat_map(|&k| cs.iter().map(move |&c| (k, c))).collect();
    pairs
        .par_iter()
        .map(|&(k, c)| {
            let result = match LieutenantSpec::new(n, k, c) {
                Ok(spec) => Some(evaluate_cell(&spec, ic, lt)?),
                Err(_) => None,
            };
            Ok(LieutenantCell { k, c, result })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_connected;

    #[test]
    fn small_construction() {
        let spec = LieutenantSpec::new(12, 2, 2).unwrap();
        assert_eq!(spec.members(), 7);
        let (g, roles) = build_lieutenant(&spec).unwrap();
        for v in 1..=4 {
            assert_eq!(g.degree(v), 10);
        }
        assert_eq!(g.degree(0), 4);
        for v in 5..12 {
            assert_eq!(roles[v], Role::Member);
            assert_eq!(g.degree(v), 4);
        }
        assert!(is_connected(&g));
    }

    #[test]
    fn round_robin_balance() {
        for (n, k, c) in [(40, 5, 3), (37, 4, 4), (100, 7, 2), (23, 3, 1)] {
            let spec = LieutenantSpec::new(n, k, c).unwrap();
            let (g, roles) = build_lieutenant(&spec).unwrap();
            for group in [Role::LieutenantL, Role::LieutenantLPrime] {
                let members: Vec<usize> = g
                    .nodes()
                    .filter(|&v| roles[v] == group)
                    .map(|v| g.neighbors(v).iter().filter(|&&w| roles[w] == Role::Member).count())
                    .collect();
                let spread = members.iter().max().unwrap() - members.iter().min().unwrap();
                assert!(spread <= 1);
            }
            for v in g.nodes().filter(|&v| roles[v] == Role::Member) {
                assert_eq!(g.degree(v), 2 * c);
            }
            assert_eq!(g.degree(0), 2 * k);
            assert_eq!(build_lieutenant(&spec).unwrap().0, g);
        }
    }

    #[test]
    fn saturated_members() {
        let spec = LieutenantSpec::new(20, 3, 3).unwrap();
        let (g, roles) = build_lieutenant(&spec).unwrap();
        for m in g.nodes().filter(|&v| roles[v] == Role::Member) {
            assert!((1..=6).all(|l| g.has_edge(m, l)));
        }
    }

    #[test]
    fn precondition_arithmetic() {
        assert_eq!(check_dominance_precondition(&LieutenantSpec::new(400, 10, 4).unwrap()), (151, true));
        assert_eq!(check_dominance_precondition(&LieutenantSpec::new(12, 5, 1).unwrap()), (0, false));
        assert_eq!(check_dominance_precondition(&LieutenantSpec::new(400, 100, 1).unwrap()), (1, false));
        assert!(LieutenantSpec::new(10, 2, 3).is_err());
        assert!(LieutenantSpec::new(5, 2, 1).is_err());
    }

    #[test]
    fn dominance_when_precondition_holds() {
        let spec = LieutenantSpec::new(120, 4, 2).unwrap();
        let (f, holds) = check_dominance_precondition(&spec);
        assert!(holds);
        let gaps = centrality_gaps(&spec).unwrap();
        assert!(gaps.iter().all(|&x| x > 0.0), "{gaps:?}");
        assert!(gaps[0] >= (f as f64 - 4.0 + 1.0) / 119.0 - 1e-12);
    }

    #[test]
    fn sweep_flags_invalid_cells() {
        let cells = lieutenant_sweep(60, &[2, 3], &[1, 3], None, None).unwrap();
        assert_eq!(cells.len(), 4);
        assert_eq!((cells[1].k, cells[1].c), (2, 3));
        assert!(cells[1].result.is_none());
        assert!(cells[3].result.is_some());
    }
}
