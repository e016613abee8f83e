//! Experiment settings. CLI flags and config files both arrive as flat
//! string maps (flags win), and are resolved here with defaults.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::generators::GeneratorFamily;
use crate::influence::{DEFAULT_ACTIVATION_PROBABILITY, DEFAULT_SAMPLES};
use crate::roam::SelectionStrategy;

pub const SEED_ENV: &str = "NETCLOAK_SEED";
pub const DEFAULT_REPLICATES: usize = 50;

pub type Settings = BTreeMap<String, String>;

/// Overlays `flags` on top of `file`.
pub fn merge(file: Settings, flags: Settings) -> Settings {
    let mut out = file;
    out.extend(flags);
    out
}

fn bad(key: &str, value: &str) -> Error {
    Error::InvalidParameter(format!("invalid value {value:?} for {key}"))
}

fn get<T: FromStr>(s: &Settings, key: &str) -> Result<Option<T>> {
    s.get(key).map(|v| v.parse().map_err(|_| bad(key, v))).transpose()
}

fn get_or<T: FromStr>(s: &Settings, key: &str, default: T) -> Result<T> {
    Ok(get(s, key)?.unwrap_or(default))
}

fn flag(s: &Settings, key: &str) -> Result<bool> {
    match s.get(key).map(String::as_str) {
        None | Some("false") => Ok(false),
        Some("true") | Some("") => Ok(true),
        Some(v) => Err(bad(key, v)),
    }
}

/// Seed from settings, then the environment, then 0.
pub fn resolve_seed(s: &Settings, env: Option<&str>) -> Result<u64> {
    if let Some(seed) = get(s, "seed")? {
        return Ok(seed);
    }
    match env {
        Some(v) => v.trim().parse().map_err(|_| bad(SEED_ENV, v)),
        None => Ok(0),
    }
}

/// Generator family named `family` with size flags from `s`.
pub fn generator_family(family: &str, s: &Settings) -> Result<GeneratorFamily> {
    let n = get_or(s, "n", 100)?;
    Ok(match family {
        "scale-free" | "ba" => GeneratorFamily::ScaleFree { n, m: get_or(s, "m", 3)? },
        "small-world" | "ws" => GeneratorFamily::SmallWorld { n, k: get_or(s, "k", 6)?, beta: get_or(s, "beta", 0.25)? },
        "random" | "er" => GeneratorFamily::RandomGraph { n, avg_degree: get_or(s, "avg", 6.0)? },
        other => return Err(Error::InvalidParameter(format!("unknown generator family {other:?}"))),
    })
}

pub fn family_name(f: &GeneratorFamily) -> &'static str {
    match f {
        GeneratorFamily::ScaleFree { .. } => "scale-free",
        GeneratorFamily::SmallWorld { .. } => "small-world",
        GeneratorFamily::RandomGraph { .. } => "random",
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InputSource {
    File(PathBuf),
    Generated(GeneratorFamily),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetectorChoice {
    Louvain,
    Cnm,
    GirvanNewman,
    External(PathBuf),
}

impl FromStr for DetectorChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "louvain" => DetectorChoice::Louvain,
            "cnm" => DetectorChoice::Cnm,
            "gn" => DetectorChoice::GirvanNewman,
            _ => match s.strip_prefix("external:") {
                Some(path) if !path.is_empty() => DetectorChoice::External(path.into()),
                _ => return Err(bad("detector", s)),
            },
        })
    }
}

impl DetectorChoice {
    pub fn name(&self) -> &'static str {
        match self {
            DetectorChoice::Louvain => "louvain",
            DetectorChoice::Cnm => "cnm",
            DetectorChoice::GirvanNewman => "gn",
            DetectorChoice::External(_) => "external",
        }
    }
}

fn strategy(s: &Settings, key: &str, default: SelectionStrategy) -> Result<SelectionStrategy> {
    match s.get(key).map(String::as_str) {
        None => Ok(default),
        Some("max") => Ok(SelectionStrategy::MaxDegree),
        Some("min") => Ok(SelectionStrategy::MinDegree),
        Some(v) => Err(bad(key, v)),
    }
}

/// Everything a ROAM or DICE experiment needs.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub input: InputSource,
    pub directed: bool,
    pub budget: usize,
    pub d: usize,
    pub sweep_d: bool,
    pub heatmap: bool,
    /// One network per generator family, sized from the same flags.
    pub heatmap_networks: Vec<GeneratorFamily>,
    pub executions: usize,
    pub v0_strategy: SelectionStrategy,
    pub target_strategy: SelectionStrategy,
    pub detector: DetectorChoice,
    pub alpha: f64,
    pub ic_p: f64,
    /// 0 disables influence tracking.
    pub mc_samples: usize,
    pub replicates: usize,
    pub seed: u64,
    pub out: PathBuf,
}

impl ExperimentConfig {
    /// `default_budget` differs per command (3 for ROAM, 4 for DICE).
    pub fn from_settings(s: &Settings, env_seed: Option<&str>, default_budget: usize) -> Result<Self> {
        let known = [
            "input", "gen", "n", "m", "k", "avg", "beta", "directed", "budget", "d", "sweep-d", "heatmap",
            "executions", "v0-strategy", "target-strategy", "detector", "alpha", "ic-p", "mc-samples",
            "replicates", "seed", "out",
        ];
        if let Some(unknown) = s.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::InvalidParameter(format!("unknown setting {unknown:?}")));
        }
        let directed = flag(s, "directed")?;
        let input = match (s.get("input"), s.get("gen")) {
            (Some(_), Some(_)) => return Err(Error::InvalidParameter("give either input or gen, not both".into())),
            (Some(path), None) => InputSource::File(path.into()),
            (None, gen) => {
                if directed {
                    return Err(Error::InvalidParameter("generated networks are undirected".into()));
                }
                InputSource::Generated(generator_family(gen.map_or("scale-free", String::as_str), s)?)
            }
        };
        let budget = get_or(s, "budget", default_budget)?;
        let cfg = ExperimentConfig {
            input,
            directed,
            budget,
            d: get_or(s, "d", budget / 2)?,
            sweep_d: flag(s, "sweep-d")?,
            heatmap: flag(s, "heatmap")?,
            heatmap_networks: ["scale-free", "small-world", "random"]
                .iter()
                .map(|f| generator_family(f, s))
                .collect::<Result<_>>()?,
            executions: get_or(s, "executions", 10)?,
            v0_strategy: strategy(s, "v0-strategy", SelectionStrategy::MaxDegree)?,
            target_strategy: strategy(s, "target-strategy", SelectionStrategy::MinDegree)?,
            detector: get_or(s, "detector", DetectorChoice::Louvain)?,
            alpha: get_or(s, "alpha", 0.5)?,
            ic_p: get_or(s, "ic-p", DEFAULT_ACTIVATION_PROBABILITY)?,
            mc_samples: get_or(s, "mc-samples", DEFAULT_SAMPLES)?,
            replicates: get_or(s, "replicates", DEFAULT_REPLICATES)?,
            seed: resolve_seed(s, env_seed)?,
            out: get_or(s, "out", PathBuf::from("out"))?,
        };
        if cfg.replicates == 0 {
            return Err(Error::InvalidParameter("replicates must be at least 1".into()));
        }
        if cfg.budget == 0 {
            return Err(Error::InvalidParameter("budget must be at least 1".into()));
        }
        if cfg.d > cfg.budget {
            return Err(Error::InvalidParameter(format!("d = {} exceeds budget {}", cfg.d, cfg.budget)));
        }
        if !(0.0..=1.0).contains(&cfg.alpha) || !(0.0..=1.0).contains(&cfg.ic_p) {
            return Err(Error::InvalidParameter("alpha and ic-p must lie in [0, 1]".into()));
        }
        Ok(cfg)
    }
}

/// `a:b` (inclusive) or a comma-separated list.
pub fn parse_range(text: &str) -> Result<Vec<usize>> {
    let err = || Error::InvalidParameter(format!("invalid range {text:?}"));
    if let Some((a, b)) = text.split_once(':') {
        let a: usize = a.trim().parse().map_err(|_| err())?;
        let b: usize = b.trim().parse().map_err(|_| err())?;
        if a > b {
            return Err(err());
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(|t| t.trim().parse().map_err(|_| err())).collect()
}
