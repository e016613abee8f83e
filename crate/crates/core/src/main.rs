use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use netcloak::harness::config::{self, generator_family, merge, parse_range, resolve_seed, Settings, SEED_ENV};
use netcloak::harness::{cmd_dice, cmd_generate, cmd_lieutenant, cmd_roam, verify, ExperimentConfig};
use netcloak::io::parse_config;
use netcloak::{Error, Result};

#[derive(Parser)]
#[command(name = "netcloak", version, about = "Hide individuals and communities from social network analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded random network as an edge list.
    Generate(GenerateArgs),
    /// Repeated ROAM runs against the source node of each network.
    Roam(ExperimentArgs),
    /// DICE runs hiding a detected community.
    Dice(ExperimentArgs),
    /// Sweep lieutenant networks over k and c.
    Lieutenant(LieutenantArgs),
    /// Run the oracle and reduction self-checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SizeArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Links per new node (scale-free).
    #[arg(long)]
    m: Option<usize>,
    /// Lattice degree (small-world).
    #[arg(long)]
    k: Option<usize>,
    /// Expected average degree (random).
    #[arg(long)]
    avg: Option<f64>,
    /// Rewiring probability (small-world).
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Args)]
struct GenerateArgs {
    /// scale-free, small-world or random (aliases: ba, ws, er).
    family: String,
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Flat key=value file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge-list file.
    #[arg(long, conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Generator family for a fresh network per replicate.
    #[arg(long)]
    gen: Option<String>,
    #[command(flatten)]
    size: SizeArgs,
    /// Read the input as a directed graph.
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    budget: Option<usize>,
    /// Internal disconnections per DICE round.
    #[arg(long)]
    d: Option<usize>,
    /// DICE: run every d from 0 to the budget.
    #[arg(long)]
    sweep_d: bool,
    /// DICE: mean final μ per detector and network.
    #[arg(long)]
    heatmap: bool,
    #[arg(long)]
    executions: Option<usize>,
    /// max or min.
    #[arg(long)]
    v0_strategy: Option<String>,
    /// max or min.
    #[arg(long)]
    target_strategy: Option<String>,
    /// louvain, cnm, gn or external:PATH.
    #[arg(long)]
    detector: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    ic_p: Option<f64>,
    /// 0 turns influence tracking off.
    #[arg(long)]
    mc_samples: Option<usize>,
    #[arg(long)]
    replicates: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LieutenantArgs {
    #[arg(long, default_value_t = 400)]
    n: usize,
    /// Inclusive range `a:b` or list `a,b,c`.
    #[arg(long, default_value = "1:10")]
    k_range: String,
    #[arg(long, default_value = "1:10")]
    c_range: String,
    #[arg(long, default_value_t = 0.15)]
    ic_p: f64,
    #[arg(long, default_value_t = 10_000)]
    mc_samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn put<T: ToString>(s: &mut Settings, key: &str, value: &Option<T>) {
    if let Some(v) = value {
        s.insert(key.to_string(), v.to_string());
    }
}

fn size_settings(size: &SizeArgs, s: &mut Settings) {
    put(s, "n", &size.n);
    put(s, "m", &size.m);
    put(s, "k", &size.k);
    put(s, "avg", &size.avg);
    put(s, "beta", &size.beta);
}

fn env_seed() -> Option<String> {
    std::env::var(SEED_ENV).ok()
}

fn experiment_config(a: &ExperimentArgs, default_budget: usize) -> Result<ExperimentConfig> {
    let mut flags = Settings::new();
    put(&mut flags, "input", &a.input.as_ref().map(|p| p.display()));
    put(&mut flags, "gen", &a.gen);
    size_settings(&a.size, &mut flags);
    for (key, on) in [("directed", a.directed), ("sweep-d", a.sweep_d), ("heatmap", a.heatmap)] {
        if on {
            flags.insert(key.into(), "true".into());
        }
    }
    put(&mut flags, "budget", &a.budget);
    put(&mut flags, "d", &a.d);
    put(&mut flags, "executions", &a.executions);
    put(&mut flags, "v0-strategy", &a.v0_strategy);
    put(&mut flags, "target-strategy", &a.target_strategy);
    put(&mut flags, "detector", &a.detector);
    put(&mut flags, "alpha", &a.alpha);
    put(&mut flags, "ic-p", &a.ic_p);
    put(&mut flags, "mc-samples", &a.mc_samples);
    put(&mut flags, "replicates", &a.replicates);
    put(&mut flags, "seed", &a.seed);
    put(&mut flags, "out", &a.out.as_ref().map(|p| p.display()));
    let file = match &a.config {
        Some(path) => parse_config(&fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?)?,
        None => Settings::new(),
    };
    // The input source is a single choice: a flag for one replaces the file's other.
    let mut file = file;
    if flags.contains_key("input") {
        file.remove("gen");
    }
    if flags.contains_key("gen") {
        file.remove("input");
    }
    ExperimentConfig::from_settings(&merge(file, flags), env_seed().as_deref(), default_budget)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn seed_or_env(seed: Option<u64>) -> Result<u64> {
    let mut s = Settings::new();
    put(&mut s, "seed", &seed);
    resolve_seed(&s, env_seed().as_deref())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Generate(a) => {
            let mut s = Settings::new();
            size_settings(&a.size, &mut s);
            let family = generator_family(&a.family, &s)?;
            let text = cmd_generate(family, seed_or_env(a.seed)?)?;
            emit(&a.out, &text)?;
            if a.out.is_some() {
                eprintln!("{} network, {} links", config::family_name(&family), text.lines().count());
            }
        }
        Command::Roam(a) => {
            let cfg = experiment_config(&a, 3)?;
            let out = cmd_roam(&cfg)?;
            eprintln!("wrote {} files to {}", out.files.len(), cfg.out.display());
        }
        Command::Dice(a) => {
            let cfg = experiment_config(&a, 4)?;
            let out = cmd_dice(&cfg)?;
            eprintln!("wrote {} files to {}", out.files.len(), cfg.out.display());
        }
        Command::Lieutenant(a) => {
            let ks = parse_range(&a.k_range)?;
            let cs = parse_range(&a.c_range)?;
            let csv = cmd_lieutenant(a.n, &ks, &cs, a.ic_p, a.mc_samples, seed_or_env(a.seed)?)?;
            emit(&a.out, &csv)?;
        }
        Command::Verify(a) => {
            let checks = verify::run_all(seed_or_env(a.seed)?);
            let mut report = String::new();
            for c in &checks {
                report.push_str(&c.line());
                report.push('\n');
            }
            let passed = checks.iter().filter(|c| c.passed).count();
            report.push_str(&format!("{passed}/{} suites passed\n", checks.len()));
            print!("{report}");
            if let Some(path) = &a.out {
                fs::write(path, &report)?;
            }
            return Ok(passed == checks.len());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
