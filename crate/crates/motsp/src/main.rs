use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use motsp::ops::TwoOptMode;
use motsp::runner;
use motsp::{LsVariant, Rounding, RunConfig};

#[derive(Parser)]
#[command(
    name = "motsp",
    version,
    about = "Multi-objective TSP benchmark: NSGA-II with jumping-gene and 2-opt operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration and write front.csv, run.json, and front.svg.
    Run(RunArgs),
    /// Run several local-search variants over a set of seeds and compare
    /// their final fronts.
    Compare(CompareArgs),
}

/// Flags shared by both subcommands. Every value is optional here; the
/// effective configuration is built as defaults, overlaid by the --config
/// file, overlaid by explicit flags.
#[derive(Args)]
struct CommonArgs {
    /// TSPLIB instance file; repeat the flag once per objective.
    #[arg(long = "tsp")]
    tsp: Vec<PathBuf>,

    /// JSON file supplying any of the other flags (keys use the flag names);
    /// explicit flags win over file entries.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Distance rounding: raw Euclidean or TSPLIB nearest-integer.
    #[arg(long, value_enum)]
    rounding: Option<Rounding>,

    /// Population size N.
    #[arg(long)]
    pop: Option<usize>,

    /// Number of generations.
    #[arg(long)]
    gens: Option<usize>,

    /// Crossover probability.
    #[arg(long)]
    pc: Option<f64>,

    /// Jumping-gene probability per child.
    #[arg(long)]
    pjg: Option<f64>,

    /// Local-search probability per child.
    #[arg(long)]
    pls: Option<f64>,

    /// Which scalarizations the local search draws.
    #[arg(long = "ls-variant", value_enum)]
    ls_variant: Option<LsVariant>,

    /// One 2-opt sweep per application, or descent to a local optimum.
    #[arg(long = "ls-mode", value_enum)]
    ls_mode: Option<TwoOptMode>,

    /// RNG seed; a (configuration, seed) pair reproduces a run exactly.
    #[arg(long)]
    seed: Option<u64>,

    /// Hypervolume reference point as comma-separated values, one per
    /// objective (default 200000 per objective).
    #[arg(long = "hv-ref")]
    hv_ref: Option<String>,

    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Variant to include; repeatable (default: method-a and modified).
    #[arg(long = "variant", value_enum)]
    variants: Vec<LsVariant>,

    /// Comma-separated seeds, one run per seed (default: 1,2,3,4,5).
    #[arg(long)]
    seeds: Option<String>,
}

/// The --config file schema: every key matches the flag it replaces.
#[derive(Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileConfig {
    tsp: Option<Vec<PathBuf>>,
    rounding: Option<Rounding>,
    pop: Option<usize>,
    gens: Option<usize>,
    pc: Option<f64>,
    pjg: Option<f64>,
    pls: Option<f64>,
    ls_variant: Option<LsVariant>,
    ls_mode: Option<TwoOptMode>,
    seed: Option<u64>,
    hv_ref: Option<Vec<f64>>,
    out: Option<PathBuf>,
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Run(args) => cmd_run(args),
        Command::Compare(args) => cmd_compare(args),
    }
}

fn cmd_run(args: RunArgs) -> anyhow::Result<()> {
    let cfg = resolve_config(args.common)?;
    if cfg.output_dir.is_none() {
        bail!("run needs an output directory; pass --out <dir>");
    }
    for warning in cfg.validate()? {
        eprintln!("warning: {warning}");
    }
    let record = runner::run(cfg)?;
    let last = record
        .per_generation
        .last()
        .expect("series always has the initial entry");
    print!(
        "final front: {} points, spacing {:.3}",
        last.size, last.spacing
    );
    if let Some(hv) = last.hypervolume {
        print!(", hypervolume {hv:.6e}");
    }
    println!(
        " ({:.1}s, artifacts in {})",
        record.duration_seconds,
        record.config.output_dir.as_deref().unwrap().display()
    );
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> anyhow::Result<()> {
    let base = resolve_config(args.common)?;
    for warning in base.validate()? {
        eprintln!("warning: {warning}");
    }
    let mut variants = if args.variants.is_empty() {
        vec![LsVariant::MethodA, LsVariant::Modified]
    } else {
        args.variants
    };
    // Repeated flags would rerun a variant and overwrite its artifacts.
    let mut seen = Vec::new();
    variants.retain(|v| {
        let fresh = !seen.contains(v);
        seen.push(*v);
        fresh
    });
    let seeds = match &args.seeds {
        Some(s) => parse_list::<u64>(s).context("parsing --seeds")?,
        None => vec![1, 2, 3, 4, 5],
    };
    let comparison = runner::compare_variants(&base, &variants, &seeds)?;
    print!("{comparison}");
    if let Some(dir) = &base.output_dir {
        println!("artifacts in {}", dir.display());
    }
    Ok(())
}

fn resolve_config(common: CommonArgs) -> anyhow::Result<RunConfig> {
    let file = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            serde_json::from_str::<FileConfig>(&text)
                .with_context(|| format!("parsing config file {}", path.display()))?
        }
        None => FileConfig::default(),
    };
    let defaults = RunConfig::default();

    let instance_paths = if common.tsp.is_empty() {
        file.tsp.unwrap_or_default()
    } else {
        common.tsp
    };
    let hv_flag = common
        .hv_ref
        .as_deref()
        .map(|s| parse_list::<f64>(s).context("parsing --hv-ref"))
        .transpose()?;
    let hv_reference = hv_flag
        .or(file.hv_ref)
        .unwrap_or_else(|| vec![200_000.0; instance_paths.len().max(1)]);

    Ok(RunConfig {
        instance_paths,
        rounding: common
            .rounding
            .or(file.rounding)
            .unwrap_or(defaults.rounding),
        pop: common.pop.or(file.pop).unwrap_or(defaults.pop),
        generations: common.gens.or(file.gens).unwrap_or(defaults.generations),
        p_crossover: common.pc.or(file.pc).unwrap_or(defaults.p_crossover),
        p_jg: common.pjg.or(file.pjg).unwrap_or(defaults.p_jg),
        p_local_search: common.pls.or(file.pls).unwrap_or(defaults.p_local_search),
        ls_variant: common
            .ls_variant
            .or(file.ls_variant)
            .unwrap_or(defaults.ls_variant),
        ls_mode: common.ls_mode.or(file.ls_mode).unwrap_or(defaults.ls_mode),
        seed: common.seed.or(file.seed).unwrap_or(defaults.seed),
        hv_reference,
        output_dir: common.out.or(file.out),
    })
}

fn parse_list<T: std::str::FromStr>(s: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<T>()
                .map_err(|e| anyhow::anyhow!("bad list entry `{t}`: {e}"))
        })
        .collect()
}
