//! Orchestration around the generational loop: instance loading, full runs
//! with artifact output (front.csv, run.json, front.svg), and multi-seed
//! variant comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{LsVariant, RunConfig};
use crate::error::{Error, Result};
use crate::metrics::{front_summary, FrontSummary};
use crate::nsga2::{rank_and_crowd, run_generation, Population};
use crate::problem::{FitnessVector, Individual, MotspInstance, Tour};
use crate::tsplib::{build_matrix, parse_tsplib, Rounding};

/// One member of a final front: its objective values and its tour as
/// 0-based city indices in visiting order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrontMember {
    pub fitness: FitnessVector,
    pub tour: Vec<usize>,
}

/// Everything a finished run produced. Serializes to the run.json schema:
/// the configuration echo, the per-generation front summaries (entry 0 is
/// the initial population, so the series has `generations + 1` entries), and
/// the wall-clock duration. The tours live in front.csv, not in the JSON.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub config: RunConfig,
    pub per_generation: Vec<FrontSummary>,
    #[serde(skip)]
    pub final_front: Vec<FrontMember>,
    pub duration_seconds: f64,
}

/// Parses one TSPLIB file per objective and assembles the instance.
pub fn load_instance(paths: &[PathBuf], rounding: Rounding) -> Result<MotspInstance> {
    if paths.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one TSPLIB instance file is required".into(),
        ));
    }
    let mut matrices = Vec::with_capacity(paths.len());
    for path in paths {
        let text = fs::read_to_string(path).map_err(|source| Error::ReadFile {
            path: path.clone(),
            source,
        })?;
        let city_file = parse_tsplib(&text)?;
        matrices.push(build_matrix(&city_file, rounding));
    }
    MotspInstance::new(matrices)
}

/// Runs the full generational loop on an already-loaded instance.
///
/// A single ChaCha8 stream seeded from `cfg.seed` drives every random
/// decision, so a (config, seed) pair fixes the run exactly.
pub fn run_on_instance(cfg: &RunConfig, inst: &MotspInstance) -> Result<RunRecord> {
    cfg.validate()?;
    if cfg.hv_reference.len() != inst.m() {
        return Err(Error::InvalidConfig(format!(
            "hypervolume reference has {} entries but the instance has {} objectives",
            cfg.hv_reference.len(),
            inst.m()
        )));
    }

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let members: Vec<Individual> = (0..cfg.pop)
        .map(|_| Individual::new(Tour::random(inst.n(), &mut rng), inst))
        .collect();
    let mut pop = Population::new(members, cfg.pop);
    rank_and_crowd(&mut pop);

    let mut per_generation = Vec::with_capacity(cfg.generations + 1);
    per_generation.push(summarize(&pop, &cfg.hv_reference)?);
    for _ in 0..cfg.generations {
        pop = run_generation(pop, cfg, inst, &mut rng);
        per_generation.push(summarize(&pop, &cfg.hv_reference)?);
    }

    let mut final_front: Vec<FrontMember> = pop
        .first_front()
        .into_iter()
        .map(|ind| FrontMember {
            fitness: ind.fitness().to_vec(),
            tour: ind.tour().order().to_vec(),
        })
        .collect();
    // Deterministic artifact order: fitness lexicographically, ties broken
    // by the tour itself.
    final_front.sort_by(|a, b| lex_cmp(&a.fitness, &b.fitness).then_with(|| a.tour.cmp(&b.tour)));

    Ok(RunRecord {
        config: cfg.clone(),
        per_generation,
        final_front,
        duration_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Loads the configured instance, runs it, and writes artifacts when an
/// output directory is set.
pub fn run(cfg: RunConfig) -> Result<RunRecord> {
    let inst = load_instance(&cfg.instance_paths, cfg.rounding)?;
    let record = run_on_instance(&cfg, &inst)?;
    if let Some(dir) = cfg.output_dir.as_deref() {
        write_artifacts(dir, &record)?;
    }
    Ok(record)
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn summarize(pop: &Population, reference: &[f64]) -> Result<FrontSummary> {
    let points: Vec<FitnessVector> = pop
        .first_front()
        .into_iter()
        .map(|ind| ind.fitness().to_vec())
        .collect();
    front_summary(&points, reference)
}

fn write_artifacts(dir: &Path, record: &RunRecord) -> Result<()> {
    fs::create_dir_all(dir)?;
    export_front_csv(&dir.join("front.csv"), &record.final_front)?;
    export_run_json(&dir.join("run.json"), record)?;
    let bi_objective = record.final_front.iter().all(|mb| mb.fitness.len() == 2);
    if bi_objective && !record.final_front.is_empty() {
        export_scatter_svg(&dir.join("front.svg"), &record.final_front)?;
    }
    Ok(())
}

/// Writes the front as CSV: header `f1,...,fm,tour`, one row per member,
/// the tour serialized as space-separated 0-based indices.
pub fn export_front_csv(path: &Path, front: &[FrontMember]) -> Result<()> {
    let m = front.first().map_or(0, |mb| mb.fitness.len());
    let mut header: Vec<String> = (1..=m).map(|k| format!("f{k}")).collect();
    header.push("tour".into());

    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(&header)?;
    for mb in front {
        let mut row: Vec<String> = mb.fitness.iter().map(|v| format!("{v}")).collect();
        row.push(
            mb.tour
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a file produced by [`export_front_csv`] back into memory.
pub fn parse_front_csv(path: &Path) -> Result<Vec<FrontMember>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.len() < 2 || headers.iter().next_back() != Some("tour") {
        return Err(Error::MalformedFrontCsv {
            row: 0,
            message: format!("expected header `f1,...,fm,tour`, got {headers:?}"),
        });
    }
    let m = headers.len() - 1;

    let mut front = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record?;
        let row = idx + 1;
        let bad = |message: String| Error::MalformedFrontCsv { row, message };
        if record.len() != m + 1 {
            return Err(bad(format!(
                "expected {} fields, got {}",
                m + 1,
                record.len()
            )));
        }
        let fitness = (0..m)
            .map(|k| {
                record[k]
                    .parse::<f64>()
                    .map_err(|e| bad(format!("objective {}: {e}", k + 1)))
            })
            .collect::<Result<FitnessVector>>()?;
        let tour = record[m]
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| bad(format!("tour: {e}"))))
            .collect::<Result<Vec<usize>>>()?;
        front.push(FrontMember { fitness, tour });
    }
    Ok(front)
}

/// Writes the run record as pretty-printed JSON.
pub fn export_run_json(path: &Path, record: &RunRecord) -> Result<()> {
    let mut text = serde_json::to_string_pretty(record)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Renders a bi-objective front as an SVG scatter plot with objective 2 on
/// the x axis and objective 1 on the y axis, ticks labeling the data minima
/// and maxima on both axes.
pub fn export_scatter_svg(path: &Path, front: &[FrontMember]) -> Result<()> {
    if let Some(mb) = front.iter().find(|mb| mb.fitness.len() != 2) {
        return Err(Error::NotBiObjective(mb.fitness.len()));
    }
    let xs: Vec<f64> = front.iter().map(|mb| mb.fitness[1]).collect();
    let ys: Vec<f64> = front.iter().map(|mb| mb.fitness[0]).collect();
    let data_range = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo.is_finite() {
            (lo, hi)
        } else {
            (0.0, 1.0)
        }
    };
    let (x_min, x_max) = data_range(&xs);
    let (y_min, y_max) = data_range(&ys);
    // Pad the drawing range so boundary markers stay inside the plot; a
    // degenerate (single-value) range gets a unit of slack instead.
    let padded = |lo: f64, hi: f64| {
        if hi - lo <= 0.0 {
            (lo - 1.0, hi + 1.0)
        } else {
            (lo - 0.05 * (hi - lo), hi + 0.05 * (hi - lo))
        }
    };
    let (x_lo, x_hi) = padded(x_min, x_max);
    let (y_lo, y_hi) = padded(y_min, y_max);

    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const ML: f64 = 90.0;
    const MR: f64 = 20.0;
    const MT: f64 = 20.0;
    const MB: f64 = 56.0;
    let map_x = |v: f64| ML + (v - x_lo) / (x_hi - x_lo) * (W - ML - MR);
    let map_y = |v: f64| (H - MB) - (v - y_lo) / (y_hi - y_lo) * (H - MT - MB);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{ML}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MB,
        W - MR,
        H - MB
    ));
    svg.push_str(&format!(
        "  <line x1=\"{ML}\" y1=\"{MT}\" x2=\"{ML}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MB
    ));
    for v in [x_min, x_max] {
        let x = map_x(v);
        svg.push_str(&format!(
            "  <line x1=\"{x:.2}\" y1=\"{}\" x2=\"{x:.2}\" y2=\"{}\" stroke=\"black\"/>\n",
            H - MB,
            H - MB + 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{}\" text-anchor=\"middle\">{v}</text>\n",
            H - MB + 20.0
        ));
    }
    for v in [y_min, y_max] {
        let y = map_y(v);
        svg.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{y:.2}\" x2=\"{ML}\" y2=\"{y:.2}\" stroke=\"black\"/>\n",
            ML - 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{v}</text>\n",
            ML - 9.0,
            y + 4.0
        ));
    }
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\">objective 2</text>\n",
        ML + (W - ML - MR) / 2.0,
        H - 12.0
    ));
    svg.push_str(&format!(
        "  <text x=\"16\" y=\"{0:.2}\" text-anchor=\"middle\" transform=\"rotate(-90, 16, {0:.2})\">objective 1</text>\n",
        MT + (H - MT - MB) / 2.0
    ));
    for (x, y) in xs.iter().zip(&ys) {
        svg.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#1f77b4\"/>\n",
            map_x(*x),
            map_y(*y)
        ));
    }
    svg.push_str("</svg>\n");
    fs::write(path, svg)?;
    Ok(())
}

/// Sample mean and standard deviation (n - 1 denominator; 0 for a single
/// observation).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub mean: f64,
    pub sd: f64,
}

impl Aggregate {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let values: Vec<f64> = values.into_iter().collect();
        assert!(!values.is_empty(), "aggregate of no observations");
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let sd = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        Aggregate { mean, sd }
    }
}

impl fmt::Display for Aggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.3} +/- {:.3}", self.mean, self.sd)
    }
}

/// Per-seed result of one variant inside a comparison.
#[derive(Clone, Debug, Serialize)]
pub struct SeedOutcome {
    pub seed: u64,
    pub final_front: FrontSummary,
    pub duration_seconds: f64,
}

/// Seed-aggregated front statistics of one local-search variant.
#[derive(Clone, Debug, Serialize)]
pub struct VariantStats {
    pub variant: LsVariant,
    pub spacing: Aggregate,
    /// Absent when the instance is not bi-objective.
    pub hypervolume: Option<Aggregate>,
    /// Per objective: max - min over the final front.
    pub extent_width: Vec<Aggregate>,
    pub duration_seconds: Aggregate,
    pub per_seed: Vec<SeedOutcome>,
}

/// Result of running several variants over the same seeds on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub entries: Vec<VariantStats>,
}

impl Comparison {
    pub fn entry(&self, variant: LsVariant) -> Option<&VariantStats> {
        self.entries.iter().find(|e| e.variant == variant)
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<10} {:>4}  {:<24} {:<28} extent width (mean)",
            "variant", "runs", "spacing (mean +/- sd)", "hypervolume (mean +/- sd)",
        )?;
        for e in &self.entries {
            let hv = match &e.hypervolume {
                Some(a) => format!("{:.6e} +/- {:.3e}", a.mean, a.sd),
                None => "n/a".to_string(),
            };
            let extent = e
                .extent_width
                .iter()
                .enumerate()
                .map(|(k, a)| format!("f{} {:.1}", k + 1, a.mean))
                .collect::<Vec<_>>()
                .join("  ");
            writeln!(
                f,
                "{:<10} {:>4}  {:<24} {:<28} {}",
                e.variant.to_string(),
                e.per_seed.len(),
                e.spacing.to_string(),
                hv,
                extent
            )?;
        }
        Ok(())
    }
}

/// Runs every (variant, seed) pair sequentially on the instance named by
/// `base` and aggregates the final-front statistics per variant. All runs
/// share every other configuration field.
///
/// When `base.output_dir` is set, each run writes its artifacts into the
/// subdirectory `<variant>-s<seed>` and the comparison itself is written to
/// compare.json.
pub fn compare_variants(
    base: &RunConfig,
    variants: &[LsVariant],
    seeds: &[u64],
) -> Result<Comparison> {
    if variants.is_empty() || seeds.is_empty() {
        return Err(Error::InvalidConfig(
            "comparison needs at least one variant and one seed".into(),
        ));
    }
    let inst = load_instance(&base.instance_paths, base.rounding)?;

    let mut entries = Vec::with_capacity(variants.len());
    for &variant in variants {
        let mut per_seed = Vec::with_capacity(seeds.len());
        for &seed in seeds {
            let mut cfg = base.clone();
            cfg.ls_variant = variant;
            cfg.seed = seed;
            cfg.output_dir = base
                .output_dir
                .as_ref()
                .map(|d| d.join(format!("{variant}-s{seed}")));
            let record = run_on_instance(&cfg, &inst)?;
            if let Some(dir) = cfg.output_dir.as_deref() {
                write_artifacts(dir, &record)?;
            }
            let summary = record
                .per_generation
                .last()
                .expect("series always has the initial entry")
                .clone();
            per_seed.push(SeedOutcome {
                seed,
                final_front: summary,
                duration_seconds: record.duration_seconds,
            });
        }
        let finals: Vec<&FrontSummary> = per_seed.iter().map(|o| &o.final_front).collect();
        let spacing = Aggregate::of(finals.iter().map(|s| s.spacing));
        let hypervolume = finals
            .iter()
            .map(|s| s.hypervolume)
            .collect::<Option<Vec<f64>>>()
            .map(Aggregate::of);
        let m = finals[0].extent.len();
        let extent_width = (0..m)
            .map(|k| Aggregate::of(finals.iter().map(|s| s.extent[k].1 - s.extent[k].0)))
            .collect();
        let duration_seconds = Aggregate::of(per_seed.iter().map(|o| o.duration_seconds));
        entries.push(VariantStats {
            variant,
            spacing,
            hypervolume,
            extent_width,
            duration_seconds,
            per_seed,
        });
    }

    let comparison = Comparison { entries };
    if let Some(dir) = &base.output_dir {
        fs::create_dir_all(dir)?;
        let mut text = serde_json::to_string_pretty(&comparison)?;
        text.push('\n');
        fs::write(dir.join("compare.json"), text)?;
    }
    Ok(comparison)
}
