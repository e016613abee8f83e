//! Experiment drivers behind the command-line tool. Every command is a
//! deterministic function of its configuration and seed.

pub mod config;
pub mod stats;
pub mod verify;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::centrality::select_source_node;
use crate::community::DetectorKind;
use crate::concealment::ConcealmentParams;
use crate::dice::{dice_run, DiceConfig, DiceRow, DiceTrajectory};
use crate::error::{Error, Result};
use crate::generators::{GeneratorFamily, GeneratorSpec};
use crate::graph::Graph;
use crate::influence::InfluenceConfig;
use crate::io::{parse_edge_list, parse_partition, write_dice_csv, write_roam_csv, LabelMap};
use crate::lieutenant::lieutenant_sweep;
use crate::rng::{derive_seed, stream};
use crate::roam::{roam_run, RoamConfig, RoamRow, RoamTrajectory, RunStatus, TrackedInfluence};

pub use config::{DetectorChoice, ExperimentConfig, InputSource, Settings};
use stats::Summary;

// Sub-seed slots under each replicate seed.
const SLOT_GRAPH: u64 = 0;
const SLOT_SOURCE: u64 = 1;
const SLOT_IC: u64 = 2;
const SLOT_LT: u64 = 3;
const SLOT_DETECTOR: u64 = 4;
const SLOT_DICE: u64 = 5;

pub const PCT_BUCKETS: [u32; 11] = [0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100];

/// Files written by a command, in write order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CommandOutput {
    pub files: Vec<PathBuf>,
}

impl CommandOutput {
    fn write(&mut self, path: PathBuf, contents: &str) -> Result<()> {
        fs::write(&path, contents)?;
        self.files.push(path);
        Ok(())
    }
}

pub struct LoadedInput {
    pub graph: Graph,
    pub labels: LabelMap,
}

pub fn load_graph(path: &Path, directed: bool) -> Result<LoadedInput> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let el = parse_edge_list(&text, directed)?;
    Ok(LoadedInput { graph: el.graph, labels: el.labels })
}

fn replicate_graph(input: &InputSource, loaded: Option<&LoadedInput>, seed: u64) -> Result<Graph> {
    match (input, loaded) {
        (_, Some(l)) => Ok(l.graph.clone()),
        (InputSource::Generated(family), None) => GeneratorSpec { family: *family, seed }.generate(),
        (InputSource::File(_), None) => unreachable!("file inputs are loaded up front"),
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

fn push_summary(line: &mut String, s: &Summary) {
    if s.count == 0 {
        line.push_str(",,,");
    } else {
        let _ = write!(line, ",{},{},{}", fmt(s.mean), fmt(s.low()), fmt(s.high()));
    }
}

/// Writes a generated network as an edge list.
pub fn cmd_generate(family: GeneratorFamily, seed: u64) -> Result<String> {
    let g = GeneratorSpec { family, seed }.generate()?;
    Ok(crate::io::write_edge_list(&g, None))
}

/// One result per replicate, in replicate order. Setup errors that affect
/// every replicate (unreadable input, bad budget) are returned directly.
pub fn run_roam_replicates(cfg: &ExperimentConfig) -> Result<Vec<Result<RoamTrajectory>>> {
    let loaded = match &cfg.input {
        InputSource::File(p) => Some(load_graph(p, cfg.directed)?),
        InputSource::Generated(_) => None,
    };
    let roam_cfg = RoamConfig { budget: cfg.budget, v0_strategy: cfg.v0_strategy, target_strategy: cfg.target_strategy };
    roam_cfg.validate()?;
    Ok((0..cfg.replicates as u64)
        .into_par_iter()
        .map(|r| {
            let rs = derive_seed(cfg.seed, r);
            let g = replicate_graph(&cfg.input, loaded.as_ref(), derive_seed(rs, SLOT_GRAPH))?;
            let source = select_source_node(&g, &mut stream(rs, SLOT_SOURCE))?;
            let tracked = if cfg.mc_samples == 0 {
                TrackedInfluence::default()
            } else {
                TrackedInfluence {
                    ic: Some(InfluenceConfig::ic(cfg.ic_p, cfg.mc_samples, derive_seed(rs, SLOT_IC))),
                    lt: Some(InfluenceConfig::lt(cfg.mc_samples, derive_seed(rs, SLOT_LT))),
                }
            };
            roam_run(&g, source, &roam_cfg, cfg.executions, &tracked)
        })
        .collect())
}

fn all_failed<T>(runs: &[Result<T>]) -> Result<()> {
    match runs.iter().find_map(|r| r.as_ref().err()) {
        Some(e) if runs.iter().all(Result::is_err) => Err(Error::InvalidParameter(format!("every replicate failed; first error: {e}"))),
        _ => Ok(()),
    }
}

pub const ROAM_AGGREGATE_HEADER: &str = "execution,replicates,\
degree_rank_mean,degree_rank_ci_low,degree_rank_ci_high,\
closeness_rank_mean,closeness_rank_ci_low,closeness_rank_ci_high,\
betweenness_rank_mean,betweenness_rank_ci_low,betweenness_rank_ci_high,\
ic_rel_influence_mean,ic_rel_influence_ci_low,ic_rel_influence_ci_high,\
lt_rel_influence_mean,lt_rel_influence_ci_low,lt_rel_influence_ci_high";

/// Mean and interval per execution over the replicates that reached it.
pub fn aggregate_roam(runs: &[Vec<RoamRow>], executions: usize) -> String {
    let mut out = String::from(ROAM_AGGREGATE_HEADER);
    out.push('\n');
    for e in 0..=executions {
        let rows: Vec<&RoamRow> = runs.iter().filter_map(|r| r.get(e)).collect();
        if rows.is_empty() {
            break;
        }
        let mut line = format!("{e},{}", rows.len());
        for i in 0..3 {
            let vals: Vec<f64> = rows.iter().map(|r| r.ranks[i] as f64).collect();
            push_summary(&mut line, &Summary::of(&vals));
        }
        let ic: Vec<f64> = rows.iter().filter_map(|r| r.ic_relative_influence).collect();
        let lt: Vec<f64> = rows.iter().filter_map(|r| r.lt_relative_influence).collect();
        push_summary(&mut line, &Summary::of(&ic));
        push_summary(&mut line, &Summary::of(&lt));
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn cmd_roam(cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let runs = run_roam_replicates(cfg)?;
    all_failed(&runs)?;
    fs::create_dir_all(&cfg.out)?;
    let mut out = CommandOutput::default();
    let mut status = String::from("replicate,source,status\n");
    let mut rows = Vec::new();
    for (r, run) in runs.into_iter().enumerate() {
        match run {
            Ok(run) => {
                out.write(cfg.out.join(format!("replicate_{r:03}.csv")), &write_roam_csv(&run.rows))?;
                let s = match &run.status {
                    RunStatus::Completed => "completed".to_string(),
                    RunStatus::Stopped { execution, .. } => format!("stopped at execution {execution}"),
                };
                let _ = writeln!(status, "{r},{},{s}", run.source);
                rows.push(run.rows);
            }
            Err(e) => {
                let _ = writeln!(status, "{r},,failed: {}", e.to_string().replace(',', ";"));
            }
        }
    }
    out.write(cfg.out.join("replicates.csv"), &status)?;
    out.write(cfg.out.join("aggregate.csv"), &aggregate_roam(&rows, cfg.executions))?;
    Ok(out)
}

fn detector_for(choice: &DetectorChoice, labels: &LabelMap, seed: u64) -> Result<DetectorKind> {
    Ok(match choice {
        DetectorChoice::Louvain => DetectorKind::Louvain { seed },
        DetectorChoice::Cnm => DetectorKind::GreedyCnm,
        DetectorChoice::GirvanNewman => DetectorKind::GirvanNewman,
        DetectorChoice::External(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            DetectorKind::External(parse_partition(&text, labels)?)
        }
    })
}

pub fn run_dice_replicates(
    cfg: &ExperimentConfig,
    input: &InputSource,
    detector: &DetectorChoice,
    d: usize,
) -> Result<Vec<Result<DiceTrajectory>>> {
    let loaded = match input {
        InputSource::File(p) => Some(load_graph(p, cfg.directed)?),
        InputSource::Generated(_) => None,
    };
    let params = ConcealmentParams::new(cfg.alpha)?;
    DiceConfig::new(cfg.budget, d, 0)?;
    Ok((0..cfg.replicates as u64)
        .into_par_iter()
        .map(|r| {
            let rs = derive_seed(cfg.seed, r);
            let g = replicate_graph(input, loaded.as_ref(), derive_seed(rs, SLOT_GRAPH))?;
            let labels = loaded.as_ref().map_or_else(|| LabelMap::identity(g.node_count()), |l| l.labels.clone());
            let det = detector_for(detector, &labels, derive_seed(rs, SLOT_DETECTOR))?;
            let dice_cfg = DiceConfig::new(cfg.budget, d, derive_seed(rs, SLOT_DICE))?;
            dice_run(&g, &det, &dice_cfg, params)
        })
        .collect())
}

/// μ at `pct` percent of rounds, holding the last recorded value.
pub fn mu_at(rows: &[DiceRow], pct: f64) -> f64 {
    rows.iter().take_while(|r| r.pct_rounds <= pct + 1e-9).last().map_or(f64::NAN, |r| r.mu)
}

pub const DICE_AGGREGATE_HEADER: &str = "pct_rounds,replicates,mu_mean,mu_ci_low,mu_ci_high";

pub fn aggregate_dice(runs: &[Vec<DiceRow>]) -> String {
    let mut out = String::from(DICE_AGGREGATE_HEADER);
    out.push('\n');
    for pct in PCT_BUCKETS {
        let vals: Vec<f64> = runs.iter().map(|r| mu_at(r, pct as f64)).collect();
        let mut line = format!("{pct},{}", vals.len());
        push_summary(&mut line, &Summary::of(&vals));
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn cmd_dice(cfg: &ExperimentConfig) -> Result<CommandOutput> {
    fs::create_dir_all(&cfg.out)?;
    let mut out = CommandOutput::default();
    if cfg.heatmap {
        out.write(cfg.out.join("heatmap.csv"), &dice_heatmap(cfg)?)?;
        return Ok(out);
    }
    let ds: Vec<usize> = if cfg.sweep_d { (0..=cfg.budget).collect() } else { vec![cfg.d] };
    for d in ds {
        let runs = run_dice_replicates(cfg, &cfg.input, &cfg.detector, d)?;
        all_failed(&runs)?;
        let mut status = String::from("replicate,target_size,status\n");
        let mut rows = Vec::new();
        for (r, run) in runs.into_iter().enumerate() {
            match run {
                Ok(run) => {
                    out.write(cfg.out.join(format!("replicate_d{d}_{r:03}.csv")), &write_dice_csv(&run.rows))?;
                    let _ = writeln!(status, "{r},{},completed", run.target.len());
                    rows.push(run.rows);
                }
                Err(e) => {
                    let _ = writeln!(status, "{r},,failed: {}", e.to_string().replace(',', ";"));
                }
            }
        }
        out.write(cfg.out.join(format!("replicates_d{d}.csv")), &status)?;
        out.write(cfg.out.join(format!("aggregate_d{d}.csv")), &aggregate_dice(&rows))?;
    }
    Ok(out)
}

/// Mean final μ for every detector × network pair. Networks are the three
/// generated families, or the input file alone when one is given.
pub fn dice_heatmap(cfg: &ExperimentConfig) -> Result<String> {
    let networks: Vec<(String, InputSource)> = match &cfg.input {
        InputSource::File(p) => vec![(
            p.file_stem().map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned()),
            cfg.input.clone(),
        )],
        InputSource::Generated(_) => cfg
            .heatmap_networks
            .iter()
            .map(|f| (config::family_name(&f).to_string(), InputSource::Generated(*f)))
            .collect(),
    };
    let detectors = match &cfg.detector {
        DetectorChoice::External(_) => vec![cfg.detector.clone()],
        _ => vec![DetectorChoice::Louvain, DetectorChoice::Cnm, DetectorChoice::GirvanNewman],
    };
    let mut out = String::from("detector");
    for (name, _) in &networks {
        let _ = write!(out, ",{name}");
    }
    out.push('\n');
    for det in &detectors {
        out.push_str(det.name());
        for (_, input) in &networks {
            let runs = run_dice_replicates(cfg, input, det, cfg.d)?;
            all_failed(&runs)?;
            let finals: Vec<f64> =
                runs.iter().flatten().map(|r| r.rows.last().map_or(f64::NAN, |x| x.mu)).collect();
            let _ = write!(out, ",{}", fmt(Summary::of(&finals).mean));
        }
        out.push('\n');
    }
    Ok(out)
}

pub const LIEUTENANT_HEADER: &str =
    "k,c,feasible,f,precondition_holds,gap_degree,gap_closeness,gap_betweenness,ic_influence,lt_influence";

/// Sweeps lieutenant networks of `n` nodes over `ks` × `cs`.
pub fn cmd_lieutenant(n: usize, ks: &[usize], cs: &[usize], ic_p: f64, mc_samples: usize, seed: u64) -> Result<String> {
    let (ic, lt) = if mc_samples == 0 {
        (None, None)
    } else {
        (
            Some(InfluenceConfig::ic(ic_p, mc_samples, derive_seed(seed, SLOT_IC))),
            Some(InfluenceConfig::lt(mc_samples, derive_seed(seed, SLOT_LT))),
        )
    };
    let cells = lieutenant_sweep(n, ks, cs, ic.as_ref(), lt.as_ref())?;
    let opt = |x: Option<f64>| x.map(fmt).unwrap_or_default();
    let mut out = String::from(LIEUTENANT_HEADER);
    out.push('\n');
    for cell in cells {
        match cell.result {
            None => {
                let _ = writeln!(out, "{},{},false,,,,,,,", cell.k, cell.c);
            }
            Some(r) => {
                let _ = writeln!(
                    out,
                    "{},{},true,{},{},{},{},{},{},{}",
                    cell.k,
                    cell.c,
                    r.f,
                    r.precondition_holds,
                    fmt(r.gaps[0]),
                    fmt(r.gaps[1]),
                    fmt(r.gaps[2]),
                    opt(r.ic_influence),
                    opt(r.lt_influence)
                );
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(pairs: &[(&str, &str)], budget: usize) -> ExperimentConfig {
        let s: Settings = pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        ExperimentConfig::from_settings(&s, None, budget).unwrap()
    }

    #[test]
    fn step_interpolation() {
        let rows = vec![
            DiceRow { round: 0, pct_rounds: 0.0, mu: 0.1 },
            DiceRow { round: 1, pct_rounds: 100.0 / 3.0, mu: 0.2 },
            DiceRow { round: 2, pct_rounds: 200.0 / 3.0, mu: 0.3 },
            DiceRow { round: 3, pct_rounds: 100.0, mu: 0.4 },
        ];
        assert_eq!(mu_at(&rows, 0.0), 0.1);
        assert_eq!(mu_at(&rows, 30.0), 0.1);
        assert_eq!(mu_at(&rows, 40.0), 0.2);
        assert_eq!(mu_at(&rows, 70.0), 0.3);
        assert_eq!(mu_at(&rows, 100.0), 0.4);
        let agg = aggregate_dice(&[rows.clone(), rows]);
        assert_eq!(agg.lines().count(), 12);
        assert!(agg.lines().nth(5).unwrap().starts_with("40,2,0.200000,0.200000,0.200000"));
    }

    #[test]
    fn roam_aggregate_counts_surviving_replicates() {
        let row = |e, r| RoamRow { execution: e, ranks: [r, r, r], ic_relative_influence: None, lt_relative_influence: None };
        let runs = vec![vec![row(0, 1), row(1, 3)], vec![row(0, 1)]];
        let agg = aggregate_roam(&runs, 4);
        let lines: Vec<&str> = agg.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0,2,1.000000,1.000000,1.000000"));
        assert!(lines[2].starts_with("1,1,3.000000"));
        assert!(lines[2].ends_with(",,,,,,"));
    }

    #[test]
    fn roam_command_is_reproducible() {
        let dir = tempfile::tempdir().unwrap();
        let run = |sub: &str| {
            let out = dir.path().join(sub);
            let c = cfg(
                &[("n", "30"), ("replicates", "3"), ("executions", "3"), ("mc-samples", "50"), ("seed", "4"), ("out", out.to_str().unwrap())],
                3,
            );
            let files = cmd_roam(&c).unwrap().files;
            assert_eq!(files.len(), 5);
            assert!(fs::read_to_string(&files[3]).unwrap().lines().skip(1).all(|l| l.ends_with(",completed")));
            files.iter().map(|f| fs::read(f).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(run("a"), run("b"));
    }

    #[test]
    fn dice_sweep_writes_one_aggregate_per_d() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg(
            &[("gen", "random"), ("n", "30"), ("replicates", "2"), ("sweep-d", "true"), ("budget", "2"), ("out", dir.path().to_str().unwrap())],
            4,
        );
        let files = cmd_dice(&c).unwrap().files;
        let aggregates: Vec<_> = files.iter().filter(|f| f.to_string_lossy().contains("aggregate_d")).collect();
        assert_eq!(aggregates.len(), 3);
        for f in aggregates {
            assert_eq!(fs::read_to_string(f).unwrap().lines().count(), 12);
        }
    }

    #[test]
    fn every_replicate_failing_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("pair.txt");
        fs::write(&input, "a b\n").unwrap();
        let out = dir.path().join("out");
        let c = cfg(&[("input", input.to_str().unwrap()), ("replicates", "2"), ("out", out.to_str().unwrap())], 3);
        let err = cmd_roam(&c).unwrap_err();
        assert!(err.to_string().contains("every replicate failed"));
        assert!(!out.exists());
    }

    #[test]
    fn lieutenant_csv_shape() {
        let csv = cmd_lieutenant(40, &[2, 3], &[1, 4], 0.15, 0, 0).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], LIEUTENANT_HEADER);
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[2], "2,4,false,,,,,,,");
        assert!(lines[1].starts_with("2,1,true,"));
        assert!(lines.iter().all(|l| l.split(',').count() == 10));
    }
}
