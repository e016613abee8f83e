//! Self-checks run by `netcloak verify`: every fast implementation against a
//! brute-force or closed-form counterpart.

use crate::centrality::{betweenness_centrality, closeness_all, closeness_centrality, degree_all};
use crate::community::CommunityStructure;
use crate::concealment::{mu_double_prime, HiddenGroup};
use crate::exact::{minimal_recovery, optimal_disguise};
use crate::gadgets::{
    betweenness_gadget, brute_force_hamiltonian, closeness_gadget, directed_cycle_closeness, ic_setcover_gadget,
    lt_setcover_gadget, SetCoverInstance,
};
use crate::generators::{cycle_graph, path_graph, star_graph};
use crate::graph::{is_connected, Graph};
use crate::influence::{estimate_influence, exact_influence_ic, exact_influence_lt, InfluenceConfig};
use crate::lieutenant::{centrality_gaps, check_dominance_precondition, LieutenantSpec};
use crate::oracles;
use crate::rng::derive_seed;
use crate::roam::{roam_step, RoamConfig};

pub type MuDoublePrime = fn(&HiddenGroup, &CommunityStructure) -> f64;

pub const CENTRALITY_TOLERANCE: f64 = 1e-12;
pub const MC_TOLERANCE: f64 = 0.06;
pub const MC_SAMPLES: usize = 20_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from(name: &'static str, outcome: Result<String, String>) -> Check {
        match outcome {
            Ok(detail) => Check { name, passed: true, detail },
            Err(detail) => Check { name, passed: false, detail },
        }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: crate::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run_all(seed: u64) -> Vec<Check> {
    vec![
        Check::from("centrality-oracle", centrality_oracle(seed)),
        Check::from("closed-form-centrality", closed_forms()),
        concealment_endpoints(mu_double_prime),
        Check::from("influence-oracle", influence_oracle(seed)),
        Check::from("closeness-reduction", closeness_reduction()),
        Check::from("set-cover-reductions", set_cover_reductions(seed)),
        Check::from("lieutenant-dominance", lieutenant_dominance()),
        Check::from("roam-invariants", roam_invariants(seed)),
    ]
}

fn centrality_oracle(seed: u64) -> Result<String, String> {
    let mut graphs = 0;
    for i in 0..60u64 {
        let n = 4 + (i % 5) as usize;
        let g = oracles::random_gnp(n, 0.45, i % 2 == 1, derive_seed(seed, i));
        let fast = [e2s(degree_all(&g))?, e2s(closeness_all(&g))?, e2s(betweenness_centrality(&g))?];
        let slow = [
            g.nodes().map(|v| oracles::degree(&g, v)).collect::<Vec<_>>(),
            g.nodes().map(|v| oracles::closeness(&g, v)).collect(),
            oracles::betweenness_all(&g),
        ];
        for (k, (f, s)) in fast.iter().zip(&slow).enumerate() {
            for v in g.nodes() {
                ensure((f[v] - s[v]).abs() <= CENTRALITY_TOLERANCE, || {
                    format!("graph {i}, measure {k}, node {v}: {} vs {}", f[v], s[v])
                })?;
            }
        }
        graphs += 1;
    }
    Ok(format!("{graphs} random graphs agree within {CENTRALITY_TOLERANCE:e}"))
}

fn closed_forms() -> Result<String, String> {
    for n in 3..=9 {
        let c = e2s(closeness_centrality(&cycle_graph(n, true), 0))?;
        ensure((c - directed_cycle_closeness(n)).abs() < 1e-12, || format!("directed {n}-cycle closeness {c}"))?;
        let b = e2s(betweenness_centrality(&star_graph(n)))?;
        ensure((b[0] - 1.0).abs() < 1e-12 && b[1] == 0.0, || format!("star betweenness {b:?}"))?;
        // A path endpoint sits at distances 1..n-1.
        let p = e2s(closeness_centrality(&path_graph(n), 0))?;
        ensure((p - 2.0 / n as f64).abs() < 1e-12, || format!("path endpoint closeness {p}"))?;
    }
    Ok("cycles, stars and paths for n in 3..=9".into())
}

/// The fully exposed group must score 0 and the fully scattered group 1.
pub fn concealment_endpoints(mu_dd: MuDoublePrime) -> Check {
    let outcome = (|| {
        let c = e2s(HiddenGroup::new(vec![0, 1, 2, 3], 8))?;
        let exposed = e2s(CommunityStructure::new(8, vec![vec![0, 1, 2, 3], vec![4, 5], vec![6, 7]]))?;
        let scattered = e2s(CommunityStructure::new(8, vec![vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]]))?;
        let (lo, hi) = (mu_dd(&c, &exposed), mu_dd(&c, &scattered));
        ensure(lo == 0.0 && hi == 1.0, || format!("exposed {lo}, scattered {hi}; expected 0 and 1"))?;
        Ok("exposed group 0, scattered group 1".to_string())
    })();
    Check::from("concealment-endpoints", outcome)
}

fn influence_oracle(seed: u64) -> Result<String, String> {
    let mut fixtures = vec![(path_graph(5), 0), (star_graph(4), 0), (cycle_graph(5, true), 0)];
    for i in 0..3 {
        fixtures.push((oracles::random_gnp(6, 0.4, i == 1, derive_seed(seed, 100 + i)), 0));
    }
    let mut worst: f64 = 0.0;
    for (i, (g, v)) in fixtures.iter().enumerate() {
        let s = derive_seed(seed, 200 + i as u64);
        for (exact, cfg) in [
            (e2s(exact_influence_ic(g, *v, 0.3))?, InfluenceConfig::ic(0.3, MC_SAMPLES, s)),
            (e2s(exact_influence_lt(g, *v))?, InfluenceConfig::lt(MC_SAMPLES, s)),
        ] {
            let mc = e2s(estimate_influence(g, *v, &cfg))?.total;
            worst = worst.max((mc - exact).abs());
            ensure((mc - exact).abs() <= MC_TOLERANCE, || format!("fixture {i}: estimate {mc} vs exact {exact}"))?;
        }
    }
    Ok(format!("{} fixtures, largest gap {worst:.4} (tolerance {MC_TOLERANCE})", fixtures.len()))
}

/// Gadget reaches its target closeness exactly when the base is Hamiltonian.
pub fn closeness_gadget_agrees(g: &Graph) -> Result<bool, String> {
    let ham = e2s(brute_force_hamiltonian(g))?;
    for w in g.nodes() {
        let mut gd = e2s(closeness_gadget(g, w))?;
        gd.problem.search_limit = u128::MAX;
        let sol = e2s(optimal_disguise(&gd.problem))?;
        if sol.value < gd.q - 1e-12 || ((sol.value - gd.q).abs() < 1e-12) != ham {
            return Ok(false);
        }
    }
    Ok(true)
}

fn closeness_reduction() -> Result<String, String> {
    let mut count = 0;
    for (n, directed) in [(3, false), (4, false), (3, true)] {
        for g in oracles::connected_graphs_up_to_isomorphism(n, directed) {
            ensure(closeness_gadget_agrees(&g)?, || format!("gadget disagrees on {:?}", g.edges()))?;
            count += 1;
        }
    }
    Ok(format!("{count} base graphs"))
}

/// Checks every gadget against the brute-force cover size of `sc`.
pub fn set_cover_gadgets_agree(sc: &SetCoverInstance, directed: bool) -> Result<(), String> {
    let (bg, _) = e2s(betweenness_gadget(sc, directed))?;
    let at_k = e2s(optimal_disguise(&bg.problem))?.value;
    ensure((at_k - bg.q).abs() < 1e-12, || format!("betweenness gadget misses q with budget k={}", sc.k))?;
    if sc.k > 0 {
        let mut short = bg.problem.clone();
        short.budget = sc.k - 1;
        let below = e2s(optimal_disguise(&short))?.value;
        ensure(below > bg.q + 1e-12, || "betweenness gadget reaches q below k".to_string())?;
    }
    for gd in [e2s(ic_setcover_gadget(sc, directed))?, e2s(lt_setcover_gadget(sc, directed))?] {
        for p in [gd.individual_problem(), gd.global_problem()] {
            let size = e2s(minimal_recovery(&p))?.size();
            ensure(size == Some(sc.k), || format!("recovery size {size:?}, cover size {}", sc.k))?;
        }
    }
    Ok(())
}

fn set_cover_reductions(seed: u64) -> Result<String, String> {
    for i in 0..12u64 {
        let sc = e2s(SetCoverInstance::random(1 + (i % 4) as usize, 1 + (i / 4 % 3) as usize, derive_seed(seed, 300 + i)))?;
        for directed in [false, true] {
            set_cover_gadgets_agree(&sc, directed).map_err(|e| format!("instance {i} directed={directed}: {e}"))?;
        }
    }
    Ok("12 random instances, both orientations".into())
}

fn lieutenant_dominance() -> Result<String, String> {
    let mut checked = 0;
    for (n, k, c) in [(60, 2, 1), (120, 4, 2), (200, 5, 3), (400, 10, 4), (150, 3, 3), (300, 6, 1)] {
        let spec = e2s(LieutenantSpec::new(n, k, c))?;
        if !check_dominance_precondition(&spec).1 {
            continue;
        }
        let gaps = e2s(centrality_gaps(&spec))?;
        ensure(gaps.iter().all(|&x| x > 0.0), || format!("(n={n}, k={k}, c={c}) gaps {gaps:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} networks meeting the precondition"))
}

fn roam_invariants(seed: u64) -> Result<String, String> {
    let cfg = e2s(RoamConfig::new(3))?;
    let mut runs = 0;
    for i in 0..100u64 {
        let g = oracles::random_gnp(8 + (i % 8) as usize, 0.35, false, derive_seed(seed, 400 + i));
        let Some(v) = g.nodes().find(|&v| g.degree(v) > 0) else { continue };
        let (h, plan) = e2s(roam_step(&g, v, &cfg))?;
        e2s(plan.validate(&g, Some(cfg.budget)))?;
        ensure(h.degree(v) + 1 == g.degree(v), || format!("instance {i}: degree did not drop by one"))?;
        if is_connected(&h) || !is_connected(&g) {
            let (before, after) = (e2s(closeness_centrality(&g, v))?, e2s(closeness_centrality(&h, v))?);
            ensure(after <= before + 1e-12, || format!("instance {i}: closeness rose {before} -> {after}"))?;
        }
        runs += 1;
    }
    Ok(format!("{runs} random instances"))
}
