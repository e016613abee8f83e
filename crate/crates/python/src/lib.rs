//! Python bindings. Node ids are plain integers; library errors surface as
//! `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use netcloak_core::centrality::{self as core_centrality, CentralityKind};
use netcloak_core::community::{detect, CommunityStructure, DetectorKind};
use netcloak_core::concealment::{self, ConcealmentParams, HiddenGroup};
use netcloak_core::dice::{dice_run as core_dice_run, DiceConfig};
use netcloak_core::exact::{optimal_disguise as core_optimal_disguise, DisguiseProblem};
use netcloak_core::generators::{GeneratorFamily, GeneratorSpec};
use netcloak_core::harness::verify;
use netcloak_core::influence::{self, InfluenceConfig};
use netcloak_core::lieutenant::{build_lieutenant, centrality_gaps, check_dominance_precondition, LieutenantSpec};
use netcloak_core::rng::seeded;
use netcloak_core::roam::{self, RoamConfig, SelectionStrategy, TrackedInfluence};
use netcloak_core::{Error, NodeId};

type Edges = Vec<(NodeId, NodeId)>;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", module = "netcloak", from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: netcloak_core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new(), directed = false))]
    fn new(n: usize, edges: Edges, directed: bool) -> PyResult<Self> {
        Ok(PyGraph { inner: netcloak_core::Graph::from_edges(n, directed, &edges).map_err(err)? })
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.is_directed()
    }

    fn edges(&self) -> Edges {
        self.inner.edges()
    }

    fn add_edge(&mut self, u: NodeId, v: NodeId) -> PyResult<()> {
        self.inner.add_edge(u, v).map_err(err)
    }

    fn remove_edge(&mut self, u: NodeId, v: NodeId) -> PyResult<()> {
        self.inner.remove_edge(u, v).map_err(err)
    }

    fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.inner.has_edge(u, v)
    }

    fn degree(&self, v: NodeId) -> PyResult<usize> {
        if v >= self.inner.node_count() {
            return Err(err(Error::NodeOutOfRange(v, self.inner.node_count())));
        }
        Ok(self.inner.degree(v))
    }

    fn is_connected(&self) -> bool {
        netcloak_core::graph::is_connected(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={}, directed={})",
            self.inner.node_count(),
            self.inner.edge_count(),
            if self.inner.is_directed() { "True" } else { "False" }
        )
    }
}

fn graph(g: netcloak_core::Graph) -> PyGraph {
    PyGraph { inner: g }
}

fn strategy(name: &str) -> PyResult<SelectionStrategy> {
    match name {
        "max" => Ok(SelectionStrategy::MaxDegree),
        "min" => Ok(SelectionStrategy::MinDegree),
        other => Err(PyValueError::new_err(format!("strategy must be 'max' or 'min', got {other:?}"))),
    }
}

fn kind(name: &str) -> PyResult<CentralityKind> {
    match name {
        "degree" => Ok(CentralityKind::Degree),
        "closeness" => Ok(CentralityKind::Closeness),
        "betweenness" => Ok(CentralityKind::Betweenness),
        other => Err(PyValueError::new_err(format!("unknown centrality {other:?}"))),
    }
}

fn detector(name: &str, seed: u64) -> PyResult<DetectorKind> {
    match name {
        "louvain" => Ok(DetectorKind::Louvain { seed }),
        "cnm" => Ok(DetectorKind::GreedyCnm),
        "gn" => Ok(DetectorKind::GirvanNewman),
        other => Err(PyValueError::new_err(format!("detector must be louvain, cnm or gn, got {other:?}"))),
    }
}

/// Random network: family is "scale-free", "small-world" or "random".
#[pyfunction]
#[pyo3(signature = (family, n, seed = 0, m = 3, k = 6, avg = 6.0, beta = 0.25))]
fn generate(family: &str, n: usize, seed: u64, m: usize, k: usize, avg: f64, beta: f64) -> PyResult<PyGraph> {
    let family = match family {
        "scale-free" | "ba" => GeneratorFamily::ScaleFree { n, m },
        "small-world" | "ws" => GeneratorFamily::SmallWorld { n, k, beta },
        "random" | "er" => GeneratorFamily::RandomGraph { n, avg_degree: avg },
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    };
    GeneratorSpec { family, seed }.generate().map(graph).map_err(err)
}

/// Centrality of every node: "degree", "closeness" or "betweenness".
#[pyfunction]
fn centrality(g: &PyGraph, measure: &str) -> PyResult<Vec<f64>> {
    core_centrality::centrality_all(&g.inner, kind(measure)?).map_err(err)
}

/// Degree, closeness and betweenness rank of `v` (1 = most central).
#[pyfunction]
fn ranks_of(g: &PyGraph, v: NodeId) -> PyResult<[usize; 3]> {
    core_centrality::ranks_of(&g.inner, v).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, seed = 0))]
fn select_source_node(g: &PyGraph, seed: u64) -> PyResult<NodeId> {
    core_centrality::select_source_node(&g.inner, &mut seeded(seed)).map_err(err)
}

/// One ROAM step; returns (new graph, additions, removals).
#[pyfunction]
#[pyo3(signature = (g, v, budget, v0_strategy = "max", target_strategy = "min"))]
fn roam_step(g: &PyGraph, v: NodeId, budget: usize, v0_strategy: &str, target_strategy: &str) -> PyResult<(PyGraph, Edges, Edges)> {
    let cfg = RoamConfig { budget, v0_strategy: strategy(v0_strategy)?, target_strategy: strategy(target_strategy)? };
    let (h, plan) = roam::roam_step(&g.inner, v, &cfg).map_err(err)?;
    Ok((graph(h), plan.additions, plan.removals))
}

/// Repeated ROAM; returns one (execution, [degree, closeness, betweenness] ranks) per row.
#[pyfunction]
#[pyo3(signature = (g, v, budget, executions))]
fn roam_run(g: &PyGraph, v: NodeId, budget: usize, executions: usize) -> PyResult<Vec<(usize, [usize; 3])>> {
    let cfg = RoamConfig::new(budget).map_err(err)?;
    let t = roam::roam_run(&g.inner, v, &cfg, executions, &TrackedInfluence::default()).map_err(err)?;
    Ok(t.rows.into_iter().map(|r| (r.execution, r.ranks)).collect())
}

fn influence_cfg(model: &str, p: f64, samples: usize, seed: u64) -> PyResult<InfluenceConfig> {
    match model {
        "ic" => Ok(InfluenceConfig::ic(p, samples, seed)),
        "lt" => Ok(InfluenceConfig::lt(samples, seed)),
        other => Err(PyValueError::new_err(format!("model must be 'ic' or 'lt', got {other:?}"))),
    }
}

/// Monte Carlo influence of `v`; returns (total, per-node activation probability).
#[pyfunction]
#[pyo3(signature = (g, v, model = "ic", p = 0.15, samples = 10_000, seed = 0))]
fn estimate_influence(g: &PyGraph, v: NodeId, model: &str, p: f64, samples: usize, seed: u64) -> PyResult<(f64, Vec<f64>)> {
    let e = influence::estimate_influence(&g.inner, v, &influence_cfg(model, p, samples, seed)?).map_err(err)?;
    Ok((e.total, e.per_node))
}

/// Exact influence by enumeration (small graphs only).
#[pyfunction]
#[pyo3(signature = (g, v, model = "ic", p = 0.15))]
fn exact_influence(g: &PyGraph, v: NodeId, model: &str, p: f64) -> PyResult<f64> {
    match model {
        "ic" => influence::exact_influence_ic(&g.inner, v, p),
        "lt" => influence::exact_influence_lt(&g.inner, v),
        other => return Err(PyValueError::new_err(format!("model must be 'ic' or 'lt', got {other:?}"))),
    }
    .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, detector_name = "louvain", seed = 0))]
fn detect_communities(g: &PyGraph, detector_name: &str, seed: u64) -> PyResult<Vec<Vec<NodeId>>> {
    Ok(detect(&g.inner, &detector(detector_name, seed)?).map_err(err)?.communities().to_vec())
}

/// Concealment of `members` within `communities` (a partition of 0..n).
#[pyfunction]
#[pyo3(signature = (members, communities, n, alpha = 0.5))]
fn mu(members: Vec<NodeId>, communities: Vec<Vec<NodeId>>, n: usize, alpha: f64) -> PyResult<f64> {
    let c = HiddenGroup::new(members, n).map_err(err)?;
    let cs = CommunityStructure::new(n, communities).map_err(err)?;
    Ok(concealment::mu(&c, &cs, ConcealmentParams::new(alpha).map_err(err)?))
}

/// Full DICE run; returns (hidden group, [(round, pct_rounds, mu)]).
#[pyfunction]
#[pyo3(signature = (g, budget, d, seed = 0, detector_name = "louvain", alpha = 0.5))]
fn dice_run(
    g: &PyGraph,
    budget: usize,
    d: usize,
    seed: u64,
    detector_name: &str,
    alpha: f64,
) -> PyResult<(Vec<NodeId>, Vec<(usize, f64, f64)>)> {
    let cfg = DiceConfig::new(budget, d, seed).map_err(err)?;
    let params = ConcealmentParams::new(alpha).map_err(err)?;
    let t = core_dice_run(&g.inner, &detector(detector_name, seed)?, &cfg, params).map_err(err)?;
    Ok((t.target.members().to_vec(), t.rows.into_iter().map(|r| (r.round, r.pct_rounds, r.mu)).collect()))
}

/// Exhaustive optimum; returns (value, additions, removals, feasible).
#[pyfunction]
fn optimal_disguise(g: &PyGraph, v: NodeId, budget: usize, measure: &str) -> PyResult<(f64, Edges, Edges, bool)> {
    let p = DisguiseProblem::new(g.inner.clone(), v, budget, kind(measure)?);
    let s = core_optimal_disguise(&p).map_err(err)?;
    Ok((s.value, s.plan.additions, s.plan.removals, s.feasible))
}

/// Lieutenant network; returns (graph, f, precondition holds, [degree, closeness, betweenness] gaps).
#[pyfunction]
fn lieutenant(n: usize, k: usize, c: usize) -> PyResult<(PyGraph, usize, bool, [f64; 3])> {
    let spec = LieutenantSpec::new(n, k, c).map_err(err)?;
    let (g, _) = build_lieutenant(&spec).map_err(err)?;
    let (f, holds) = check_dominance_precondition(&spec);
    Ok((graph(g), f, holds, centrality_gaps(&spec).map_err(err)?))
}

/// Self-check suites; returns (name, passed, detail) per suite.
#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn run_verify(seed: u64) -> Vec<(String, bool, String)> {
    verify::run_all(seed).into_iter().map(|c| (c.name.to_string(), c.passed, c.detail)).collect()
}

#[pymodule]
fn netcloak(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(centrality, m)?)?;
    m.add_function(wrap_pyfunction!(ranks_of, m)?)?;
    m.add_function(wrap_pyfunction!(select_source_node, m)?)?;
    m.add_function(wrap_pyfunction!(roam_step, m)?)?;
    m.add_function(wrap_pyfunction!(roam_run, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_influence, m)?)?;
    m.add_function(wrap_pyfunction!(exact_influence, m)?)?;
    m.add_function(wrap_pyfunction!(detect_communities, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(dice_run, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_disguise, m)?)?;
    m.add_function(wrap_pyfunction!(lieutenant, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
