//! Experiment runner behind the `colsel` binary.
//!
//! Every run is described by an [`ExperimentConfig`] (built from command-line
//! flags or read from JSON) and produces a [`Report`]. Rerunning a config
//! reproduces its report byte for byte apart from `wall_time_seconds`.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args as ClapArgs, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{self, bounds_row};
use crate::constructions::{generate, Coloring, GeneratorKind, GeneratorSpec};
use crate::depth::{self, HeuristicStrategy, VerifyMode};
use crate::error::{Error, Result};
use crate::geometry::{ColoredPointSet, Point};
use crate::io;
use crate::measures::{self, MeasureFamily, MeasureSpec};
use crate::rational::{self, format_rational};
use crate::rng::derive_seed;

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit status for a failed run.
pub const EXIT_INVALID: i32 = 2;
/// Reserved for an exact maximum below the selection bound.
pub const EXIT_THEOREM_VIOLATION: i32 = 3;

const TAG_VERIFY: u64 = 0x30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceSource {
    Dataset(PathBuf),
    Generate(GeneratorSpec),
}

impl InstanceSource {
    fn load(&self) -> Result<ColoredPointSet> {
        match self {
            InstanceSource::Dataset(path) => io::read_dataset(path),
            InstanceSource::Generate(spec) => generate(spec),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySource {
    File(PathBuf),
    Inline(MeasureFamily),
    /// `d + 1` copies of one measure.
    Iid { dim: usize, measure: MeasureSpec },
    Mollified { instance: InstanceSource, width_inverse: u64 },
}

impl FamilySource {
    fn load(&self) -> Result<MeasureFamily> {
        match self {
            FamilySource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::DatasetUnreadable(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| Error::DatasetUnreadable(e.to_string()))
            }
            FamilySource::Inline(f) => Ok(f.clone()),
            FamilySource::Iid { dim, measure } => MeasureFamily::iid(*dim, measure.clone()),
            FamilySource::Mollified { instance, width_inverse } => measures::mollify(&instance.load()?, *width_inverse),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum DepthChoice {
    /// Sweep in the plane, brute force elsewhere.
    Auto,
    BruteForce,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum StrategyChoice {
    Exact,
    Centroid,
    Local,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Depth {
        instance: InstanceSource,
        query: Vec<String>,
        method: DepthChoice,
    },
    Maxdepth {
        instance: InstanceSource,
        strategy: StrategyChoice,
        budget: u64,
        seed: u64,
    },
    Estimate {
        family: FamilySource,
        query: Vec<f64>,
        samples: u64,
        seed: u64,
    },
    Search {
        family: FamilySource,
        grid_resolution: u32,
        refine_rounds: u32,
        samples_per_eval: u64,
        seed: u64,
    },
    MollifyCheck {
        instance: InstanceSource,
        query: Vec<String>,
        samples: u64,
        seed: u64,
    },
    Generate {
        spec: GeneratorSpec,
        output: Option<PathBuf>,
    },
    Bounds {
        d_min: u32,
        d_max: u32,
    },
    /// `trials` instances from `generator`, trial `i` reseeded from `seed`.
    Verify {
        generator: GeneratorSpec,
        trials: u64,
        seed: u64,
        strategy: StrategyChoice,
        budget: u64,
        plot_csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    #[serde(flatten)]
    pub command: Command,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig { schema_version: SCHEMA_VERSION, command }
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |m: &str| Err(Error::ConfigInvalid(m.to_string()));
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::ConfigInvalid(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        match &self.command {
            Command::Estimate { samples: 0, .. } | Command::MollifyCheck { samples: 0, .. } => invalid("samples must be positive"),
            Command::Search { grid_resolution: 0, .. } => invalid("grid_resolution must be positive"),
            Command::Search { samples_per_eval: 0, .. } => invalid("samples_per_eval must be positive"),
            Command::Bounds { d_min, d_max } if *d_min == 0 || d_min > d_max => invalid("bounds needs 1 <= d_min <= d_max"),
            Command::Verify { trials: 0, .. } => invalid("trials must be positive"),
            Command::Maxdepth { strategy, budget: 0, .. } | Command::Verify { strategy, budget: 0, .. }
                if *strategy != StrategyChoice::Exact =>
            {
                invalid("heuristic budget must be positive")
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub artifact: String,
    pub version: String,
    pub config: ExperimentConfig,
    pub results: Value,
    pub wall_time_seconds: f64,
}

fn parse_query(query: &[String]) -> Result<Point> {
    Point::parse(query)
}

fn heuristic_strategy(s: StrategyChoice) -> Option<HeuristicStrategy> {
    match s {
        StrategyChoice::Exact => None,
        StrategyChoice::Centroid => Some(HeuristicStrategy::CentroidHeuristic),
        StrategyChoice::Local => Some(HeuristicStrategy::LocalSearch),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn monte_carlo(estimate: &measures::EstimateResult) -> Value {
    json!({ "method": "monte_carlo", "estimate": to_value(estimate) })
}

#[derive(Serialize)]
struct VerifyRow {
    trial: u64,
    seed: u64,
    d: usize,
    n: usize,
    method: String,
    max_found: u64,
    total: u64,
    max_fraction: f64,
    bound_value: String,
    satisfied: bool,
}

fn run_verify(
    generator: &GeneratorSpec,
    trials: u64,
    seed: u64,
    strategy: StrategyChoice,
    budget: u64,
    plot_csv: Option<&PathBuf>,
) -> Result<Value> {
    let mut records = Vec::new();
    let mut rows = Vec::new();
    for trial in 0..trials {
        let trial_seed = derive_seed(seed, TAG_VERIFY, trial);
        let spec = GeneratorSpec { seed: trial_seed, ..generator.clone() };
        let cps = generate(&spec)?;
        let mode = match heuristic_strategy(strategy) {
            None => VerifyMode::Exact2D,
            Some(strategy) => VerifyMode::Heuristic { strategy, budget, seed: trial_seed },
        };
        let report = depth::verify_selection_bound(&cps, mode)?;
        rows.push(VerifyRow {
            trial,
            seed: trial_seed,
            d: cps.dim(),
            n: spec.n_per_color,
            method: format!("{:?}", report.witness.method),
            max_found: report.max_found,
            total: report.witness.depth.total,
            max_fraction: rational::to_f64(&report.witness.depth.fraction),
            bound_value: format_rational(&report.bound_value),
            satisfied: report.satisfied,
        });
        records.push(json!({ "trial": trial, "seed": trial_seed, "report": to_value(&report) }));
    }
    if let Some(path) = plot_csv {
        std::fs::write(path, io::to_tidy_csv(&rows)?)
            .map_err(|e| Error::ConfigInvalid(format!("cannot write {}: {e}", path.display())))?;
    }
    let satisfied = rows.iter().filter(|r| r.satisfied).count();
    Ok(json!({ "trials": records, "satisfied": satisfied, "all_satisfied": satisfied as u64 == trials }))
}

fn execute(command: &Command) -> Result<Value> {
    Ok(match command {
        Command::Depth { instance, query, method } => {
            let cps = instance.load()?;
            let q = parse_query(query)?;
            let r = match method {
                DepthChoice::Sweep => depth::colorful_depth_sweep2d(&cps, &q)?,
                DepthChoice::Auto if cps.dim() == 2 => depth::colorful_depth_sweep2d(&cps, &q)?,
                _ => depth::colorful_depth_bruteforce(&cps, &q)?,
            };
            to_value(&r)
        }
        Command::Maxdepth { instance, strategy, budget, seed } => {
            let cps = instance.load()?;
            let r = match heuristic_strategy(*strategy) {
                None => depth::max_depth_exact2d(&cps)?,
                Some(s) => depth::max_depth_heuristic(&cps, s, *budget, *seed)?,
            };
            to_value(&r)
        }
        Command::Estimate { family, query, samples, seed } => {
            monte_carlo(&measures::containment_probability(&family.load()?, query, *samples, *seed)?)
        }
        Command::Search { family, grid_resolution, refine_rounds, samples_per_eval, seed } => {
            let fam = family.load()?;
            let r = measures::deep_point_search(&fam, *grid_resolution, *refine_rounds, *samples_per_eval, *seed)?;
            let bound = rational::to_f64(&bounds::gromov(fam.dim() as u32));
            let mut v = monte_carlo(&r);
            v["bound"] = json!(bound);
            v["meets_bound_within_4_sigma"] = json!(r.p_hat >= bound - 4.0 * r.std_error);
            v
        }
        Command::MollifyCheck { instance, query, samples, seed } => {
            let r = measures::mollification_convergence_check(&instance.load()?, &parse_query(query)?, *samples, *seed)?;
            let mut v = to_value(&r);
            v["method"] = json!("exact_vs_monte_carlo");
            v
        }
        Command::Generate { spec, output } => {
            let cps = generate(spec)?;
            if let Some(path) = output {
                io::write_dataset(path, &cps)?;
            }
            json!({ "dataset": to_value(&cps) })
        }
        Command::Bounds { d_min, d_max } => {
            let rows = (*d_min..=*d_max).map(bounds_row).collect::<Result<Vec<_>>>()?;
            json!({ "method": "exact", "rows": to_value(&rows) })
        }
        Command::Verify { generator, trials, seed, strategy, budget, plot_csv } => {
            run_verify(generator, *trials, *seed, *strategy, *budget, plot_csv.as_ref())?
        }
    })
}

/// Validates and runs one experiment.
pub fn run(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let results = execute(&config.command)?;
    Ok(Report {
        artifact: ARTIFACT.to_string(),
        version: VERSION.to_string(),
        config: config.clone(),
        results,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SelectionBoundViolated { .. } => EXIT_THEOREM_VIOLATION,
        _ => EXIT_INVALID,
    }
}

// ---------------------------------------------------------------------------
// command line
// ---------------------------------------------------------------------------

#[derive(Debug, Parser)]
#[command(name = "colsel", version, about = "Colored point selection experiments")]
pub struct Args {
    #[command(subcommand)]
    pub command: CliCommand,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Uniform,
    Gaussian,
    StretchedGrid,
    MomentCurve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColoringArg {
    RoundRobin,
    RandomBalanced,
}

#[derive(Debug, Clone, ClapArgs)]
pub struct GeneratorArgs {
    /// Instance generator.
    #[arg(long = "generate", value_enum)]
    pub kind: Option<KindArg>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Growth base of the stretched grid.
    #[arg(long, default_value = "10")]
    pub gamma: String,
    /// Box for uniform instances, as `lo,hi`.
    #[arg(long = "box", default_value = "0,1")]
    pub unit_box: String,
    #[arg(long, value_enum, default_value_t = ColoringArg::RoundRobin)]
    pub coloring: ColoringArg,
}

impl GeneratorArgs {
    fn spec(&self, kind: KindArg, seed: u64) -> Result<GeneratorSpec> {
        let kind = match kind {
            KindArg::Uniform => {
                let (lo, hi) = self
                    .unit_box
                    .split_once(',')
                    .ok_or_else(|| Error::ConfigInvalid(format!("--box expects lo,hi, got {:?}", self.unit_box)))?;
                GeneratorKind::UniformRandom { lo: rational::parse_rational(lo)?, hi: rational::parse_rational(hi)? }
            }
            KindArg::Gaussian => GeneratorKind::GaussianRandom,
            KindArg::StretchedGrid => GeneratorKind::StretchedGrid { gamma: rational::parse_rational(&self.gamma)? },
            KindArg::MomentCurve => GeneratorKind::MomentCurve,
        };
        let coloring = match self.coloring {
            ColoringArg::RoundRobin => Coloring::RoundRobin,
            ColoringArg::RandomBalanced => Coloring::RandomBalanced,
        };
        Ok(GeneratorSpec { kind, n_per_color: self.n, dim: self.d, seed, coloring })
    }
}

#[derive(Debug, Clone, ClapArgs)]
pub struct InstanceArgs {
    /// CSV or JSON dataset.
    #[arg(long, conflicts_with = "kind")]
    pub dataset: Option<PathBuf>,
    #[command(flatten)]
    pub generator: GeneratorArgs,
}

impl InstanceArgs {
    fn source(&self, seed: u64) -> Result<InstanceSource> {
        match (&self.dataset, self.generator.kind) {
            (Some(path), _) => Ok(InstanceSource::Dataset(path.clone())),
            (None, Some(kind)) => Ok(InstanceSource::Generate(self.generator.spec(kind, seed)?)),
            (None, None) => Err(Error::ConfigInvalid("give --dataset or --generate".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IidArg {
    /// Uniform on the unit cube.
    Uniform,
    /// Standard normal.
    Gaussian,
}

#[derive(Debug, Clone, ClapArgs)]
pub struct FamilyArgs {
    /// MeasureFamily JSON file.
    #[arg(long, conflicts_with = "iid")]
    pub family: Option<PathBuf>,
    /// Use d+1 copies of a standard measure.
    #[arg(long, value_enum)]
    pub iid: Option<IidArg>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
}

impl FamilyArgs {
    fn source(&self) -> Result<FamilySource> {
        match (&self.family, self.iid) {
            (Some(path), _) => Ok(FamilySource::File(path.clone())),
            (None, Some(IidArg::Uniform)) => Ok(FamilySource::Iid {
                dim: self.d,
                measure: MeasureSpec::uniform_box(vec![0.0; self.d], vec![1.0; self.d]),
            }),
            (None, Some(IidArg::Gaussian)) => {
                Ok(FamilySource::Iid { dim: self.d, measure: MeasureSpec::standard_gaussian(self.d) })
            }
            (None, None) => Err(Error::ConfigInvalid("give --family or --iid".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Colorful depth of one query point.
    Depth {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Comma-separated coordinates, e.g. `6.2,6.2`.
        #[arg(long)]
        query: String,
        #[arg(long, value_enum, default_value_t = DepthChoice::Auto)]
        method: DepthChoice,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Deepest point: exact in the plane, heuristic otherwise.
    Maxdepth {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = StrategyChoice::Exact)]
        strategy: StrategyChoice,
        #[arg(long, default_value_t = 200)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo containment probability at one point.
    Estimate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        query: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Grid-and-refine search for a deep point of a measure family.
    Search {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 9)]
        grid: u32,
        #[arg(long, default_value_t = 3)]
        rounds: u32,
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Exact depth versus the probability under the smoothed point set.
    MollifyCheck {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        query: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Generate an instance and optionally write it as CSV or JSON.
    Generate {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Table of selection constants.
    Bounds {
        /// A dimension or an inclusive range such as `1..5`.
        #[arg(long, default_value = "1..5")]
        d: String,
        /// Emit the JSON report instead of the text table.
        #[arg(long)]
        json: bool,
    },
    /// Check the selection bound on generated instances.
    Verify {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StrategyChoice::Exact)]
        strategy: StrategyChoice,
        #[arg(long, default_value_t = 200)]
        budget: u64,
        /// Tidy CSV with one row per trial.
        #[arg(long)]
        plot_csv: Option<PathBuf>,
    },
    /// Run a JSON experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn split_query(q: &str) -> Vec<String> {
    q.split(',').map(|s| s.trim().to_string()).collect()
}

fn parse_range(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::ConfigInvalid(format!("bad dimension range {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

impl CliCommand {
    /// The experiment config these flags describe.
    pub fn to_config(&self) -> Result<ExperimentConfig> {
        let command = match self {
            CliCommand::Depth { instance, query, method, seed } => {
                Command::Depth { instance: instance.source(*seed)?, query: split_query(query), method: *method }
            }
            CliCommand::Maxdepth { instance, strategy, budget, seed } => {
                Command::Maxdepth { instance: instance.source(*seed)?, strategy: *strategy, budget: *budget, seed: *seed }
            }
            CliCommand::Estimate { family, query, samples, seed } => {
                let query = split_query(query)
                    .iter()
                    .map(|c| c.parse::<f64>().map_err(|_| Error::Parse(c.clone())))
                    .collect::<Result<_>>()?;
                Command::Estimate { family: family.source()?, query, samples: *samples, seed: *seed }
            }
            CliCommand::Search { family, grid, rounds, samples, seed } => Command::Search {
                family: family.source()?,
                grid_resolution: *grid,
                refine_rounds: *rounds,
                samples_per_eval: *samples,
                seed: *seed,
            },
            CliCommand::MollifyCheck { instance, query, samples, seed } => Command::MollifyCheck {
                instance: instance.source(*seed)?,
                query: split_query(query),
                samples: *samples,
                seed: *seed,
            },
            CliCommand::Generate { generator, seed, output } => {
                let kind = generator.kind.ok_or_else(|| Error::ConfigInvalid("give --generate".into()))?;
                Command::Generate { spec: generator.spec(kind, *seed)?, output: output.clone() }
            }
            CliCommand::Bounds { d, .. } => {
                let (d_min, d_max) = parse_range(d)?;
                Command::Bounds { d_min, d_max }
            }
            CliCommand::Verify { generator, trials, seed, strategy, budget, plot_csv } => {
                let kind = generator.kind.ok_or_else(|| Error::ConfigInvalid("give --generate".into()))?;
                Command::Verify {
                    generator: generator.spec(kind, *seed)?,
                    trials: *trials,
                    seed: *seed,
                    strategy: *strategy,
                    budget: *budget,
                    plot_csv: plot_csv.clone(),
                }
            }
            CliCommand::Run { config } => {
                let text = std::fs::read_to_string(config)
                    .map_err(|e| Error::ConfigInvalid(format!("{}: {e}", config.display())))?;
                return serde_json::from_str(&text).map_err(|e| Error::ConfigInvalid(e.to_string()));
            }
        };
        Ok(ExperimentConfig::new(command))
    }
}

/// Runs the parsed command line; returns the text to print.
pub fn run_args(args: &Args) -> Result<String> {
    let config = args.command.to_config()?;
    let report = run(&config)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = &args.out {
        std::fs::write(path, &json).map_err(|e| Error::ConfigInvalid(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match (&args.command, &config.command) {
        (CliCommand::Bounds { json: false, .. }, Command::Bounds { d_min, d_max }) => {
            let rows = (*d_min..=*d_max).map(bounds_row).collect::<Result<Vec<_>>>()?;
            bounds::format_table(&rows)
        }
        _ => json,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..5").unwrap(), (1, 5));
        assert_eq!(parse_range("1..=12").unwrap(), (1, 12));
        assert_eq!(parse_range("3").unwrap(), (3, 3));
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn validation() {
        let bad = ExperimentConfig::new(Command::Bounds { d_min: 3, d_max: 2 });
        assert!(matches!(run(&bad), Err(Error::ConfigInvalid(_))));
        let mut old = ExperimentConfig::new(Command::Bounds { d_min: 1, d_max: 2 });
        old.schema_version = 0;
        assert!(matches!(run(&old), Err(Error::ConfigInvalid(_))));
        assert_eq!(exit_code(&Error::ConfigInvalid(String::new())), EXIT_INVALID);
        assert_eq!(exit_code(&Error::SelectionBoundViolated { max_found: 0, bound: "1/1".into() }), EXIT_THEOREM_VIOLATION);
    }
}
