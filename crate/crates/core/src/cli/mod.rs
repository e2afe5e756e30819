//! The `multilru` command line: `coverage`, `simulate`, `analyze` and
//! `compare`.
//!
//! Exit codes: 0 on success, 1 for usage and parameter errors, 2 for
//! failures while running.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytics::{che_multi_all, che_multi_one, che_single_hit, two_cache, TwoCachePolicy};
use crate::engine::{self, ExperimentConfig, SweepVariable, TrafficKind};
use crate::error::{invalid, Error, Result};
use crate::geometry::{CoverageProfile, StationKind};
use crate::io::{self, AnalysisRow, SimulationRow};
use crate::policies::{hit_upper_bound, PolicyKind};

#[derive(Debug, Parser)]
#[command(
    name = "multilru",
    version,
    about = "Spatial multi-LRU caching: simulation and Che-like analytics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coverage-number distribution for a radius (or several).
    Coverage(CoverageArgs),
    /// Run replicated simulations, optionally over a sweep.
    Simulate(SimulateArgs),
    /// Evaluate analytical hit probabilities.
    Analyze(AnalyzeArgs),
    /// Join a simulation table with an analytical one.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output directory.
    #[arg(long, env = "MULTILRU_OUT", default_value = ".")]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub replications: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CoverageArgs {
    #[arg(long, default_value = "ppp")]
    pub kind: StationKind,
    #[arg(long = "lambda-b", default_value_t = 0.5)]
    pub lambda_b: f64,
    /// Coverage radius in km; comma-separated for several.
    #[arg(long = "rb", value_delimiter = ',', required = true)]
    pub radius: Vec<f64>,
    #[arg(long, default_value_t = 50)]
    pub max_count: usize,
    /// Monte Carlo probes (lattice).
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 12.0)]
    pub width: f64,
    #[arg(long, default_value_t = 12.0)]
    pub height: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// TOML experiment file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub kind: Option<StationKind>,
    #[arg(long = "lambda-b")]
    pub lambda_b: Option<f64>,
    #[arg(long = "rb")]
    pub radius: Option<f64>,
    #[arg(long)]
    pub margin: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub height: Option<f64>,
    #[arg(long)]
    pub traffic: Option<TrafficArg>,
    /// Request intensity per km² per second (IRM).
    #[arg(long = "lambda-u")]
    pub lambda_u: Option<f64>,
    /// Horizon in seconds (IRM).
    #[arg(long)]
    pub duration: Option<f64>,
    #[arg(long = "catalogue-size")]
    pub catalogue_size: Option<usize>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub warmup: Option<f64>,
    /// Comma-separated policy names, e.g. `multi-lru-one,q-multi-lru-all:0.5`.
    #[arg(long, value_delimiter = ',')]
    pub policies: Option<Vec<PolicyKind>>,
    #[arg(long)]
    pub sweep: Option<SweepVariable>,
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<f64>>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TrafficArg {
    Irm,
    Temporal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AnalysisPolicy {
    Single,
    Lfu,
    MultiOne,
    MultiAll,
    TwoCacheOne,
    TwoCacheAll,
    Bound,
}

impl AnalysisPolicy {
    /// Name used in output tables, matching simulation policy names.
    pub fn label(self) -> &'static str {
        match self {
            AnalysisPolicy::Single => "single-lru",
            AnalysisPolicy::Lfu => "lfu",
            AnalysisPolicy::MultiOne => "multi-lru-one",
            AnalysisPolicy::MultiAll => "multi-lru-all",
            AnalysisPolicy::TwoCacheOne => "two-cache-one",
            AnalysisPolicy::TwoCacheAll => "two-cache-all",
            AnalysisPolicy::Bound => "bound",
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub policy: Vec<AnalysisPolicy>,
    #[arg(long, default_value = "ppp")]
    pub kind: StationKind,
    #[arg(long = "lambda-b", default_value_t = 0.5)]
    pub lambda_b: f64,
    #[arg(long = "rb", default_value_t = 1.13)]
    pub radius: f64,
    #[arg(long = "lambda-u", default_value_t = 0.023)]
    pub lambda_u: f64,
    #[arg(long = "catalogue-size", default_value_t = 10_000)]
    pub catalogue_size: usize,
    #[arg(long, default_value_t = 0.78)]
    pub gamma: f64,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Explicit coverage pmf `p_0,p_1,…` instead of the geometry.
    #[arg(long, value_delimiter = ',')]
    pub pmf: Option<Vec<f64>>,
    /// Voronoi area `|V|` of the two-cache network (default `1/λ_b`).
    #[arg(long = "voronoi-area")]
    pub voronoi_area: Option<f64>,
    #[arg(long, default_value_t = 50)]
    pub max_count: usize,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value = "radius")]
    pub sweep: SweepVariable,
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<f64>>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub simulation: PathBuf,
    #[arg(long)]
    pub analysis: PathBuf,
    #[arg(long, env = "MULTILRU_OUT", default_value = ".")]
    pub out: PathBuf,
}

impl std::str::FromStr for AnalysisPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <AnalysisPolicy as ValueEnum>::from_str(s, true)
    }
}

/// Everything needed to reproduce a result set.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: &'static str,
    pub config: serde_json::Value,
    pub seeds: Vec<u64>,
    pub started_unix_seconds: u64,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<PathBuf>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } | Error::Config(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    match cli.command {
        Command::Coverage(args) => cmd_coverage(&args)?,
        Command::Simulate(args) => cmd_simulate(&args)?,
        Command::Analyze(args) => cmd_analyze(&args)?,
        Command::Compare(args) => cmd_compare(&args)?,
    }
    Ok(())
}

fn write_manifest(
    out: &Path,
    command: &str,
    config: &impl Serialize,
    seeds: Vec<u64>,
    started: (SystemTime, Instant),
    outputs: Vec<PathBuf>,
) -> Result<()> {
    let manifest = RunManifest {
        command: command.to_string(),
        tool_version: env!("CARGO_PKG_VERSION"),
        config: serde_json::to_value(config)?,
        seeds,
        started_unix_seconds: started.0.duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        wall_clock_seconds: started.1.elapsed().as_secs_f64(),
        outputs,
    };
    io::write_json(&out.join(format!("{command}.manifest.json")), &manifest)
}

fn now() -> (SystemTime, Instant) {
    (SystemTime::now(), Instant::now())
}

#[derive(Serialize)]
struct CoverageRow {
    kind: StationKind,
    radius: f64,
    m: usize,
    p_m: f64,
}

#[derive(Serialize)]
struct CoverageSummary {
    kind: StationKind,
    radius: f64,
    #[serde(rename = "N_bs_mean")]
    n_bs_mean: f64,
}

fn cmd_coverage(args: &CoverageArgs) -> Result<()> {
    let started = now();
    let seed = args.common.seed.unwrap_or(1);
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &radius in &args.radius {
        let profile = geometry_profile(
            args.kind,
            args.lambda_b,
            radius,
            (args.width, args.height),
            args.max_count,
            args.samples,
            seed,
        )?;
        println!("kind={} rb={radius} mean={:.4}", args.kind, profile.mean());
        rows.extend(io::profile_rows(&profile).into_iter().map(|r| CoverageRow {
            kind: args.kind,
            radius,
            m: r.m,
            p_m: r.p_m,
        }));
        summary.push(CoverageSummary {
            kind: args.kind,
            radius,
            n_bs_mean: profile.mean(),
        });
    }
    let out = &args.common.out;
    let pmf_path = out.join("coverage.csv");
    let summary_path = out.join("coverage_summary.csv");
    io::write_csv(&pmf_path, &rows)?;
    io::write_csv(&summary_path, &summary)?;
    let config = serde_json::json!({
        "kind": args.kind,
        "lambda_b": args.lambda_b,
        "radius": args.radius,
        "max_count": args.max_count,
        "samples": args.samples,
        "width": args.width,
        "height": args.height,
    });
    write_manifest(
        out,
        "coverage",
        &config,
        vec![seed],
        started,
        vec![pmf_path, summary_path],
    )
}

fn geometry_profile(
    kind: StationKind,
    lambda_b: f64,
    radius: f64,
    (width, height): (f64, f64),
    max_count: usize,
    samples: usize,
    seed: u64,
) -> Result<CoverageProfile> {
    let mut config = ExperimentConfig::default();
    config.geometry.kind = kind;
    config.geometry.lambda_b = lambda_b;
    config.geometry.radius = radius;
    config.geometry.width = width;
    config.geometry.height = height;
    config.geometry.max_count = max_count;
    config.geometry.coverage_samples = samples;
    config.run.seed = seed;
    config.validate()?;
    engine::coverage_profile(&config, seed)
}

fn simulation_config(args: &SimulateArgs) -> Result<ExperimentConfig> {
    let mut c = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            let parsed: ExperimentConfig =
                toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            parsed
        }
        None => ExperimentConfig::default(),
    };
    let g = &mut c.geometry;
    if let Some(v) = args.kind {
        g.kind = v;
    }
    if let Some(v) = args.lambda_b {
        g.lambda_b = v;
    }
    if let Some(v) = args.radius {
        g.radius = v;
    }
    if let Some(v) = args.margin {
        g.margin = Some(v);
    }
    if let Some(v) = args.width {
        g.width = v;
    }
    if let Some(v) = args.height {
        g.height = v;
    }
    let t = &mut c.traffic;
    if let Some(v) = args.traffic {
        t.kind = match v {
            TrafficArg::Irm => TrafficKind::Irm,
            TrafficArg::Temporal => TrafficKind::Temporal,
        };
    }
    if let Some(v) = args.lambda_u {
        t.lambda_u = v;
    }
    if let Some(v) = args.duration {
        t.duration = v;
    }
    if let Some(v) = args.catalogue_size {
        t.catalogue_size = v;
    }
    if let Some(v) = args.gamma {
        t.zipf_exponent = v;
    }
    if let Some(v) = args.warmup {
        t.warmup_fraction = v;
    }
    if let Some(v) = args.k {
        c.cache.k = Some(v);
    }
    if let Some(v) = args.alpha {
        c.cache.k = None;
        c.cache.alpha = Some(v);
    }
    if let Some(v) = &args.policies {
        c.run.policies = v.clone();
    }
    if let Some(v) = args.common.replications {
        c.run.replications = v;
    }
    if let Some(v) = args.common.seed {
        c.run.seed = v;
    }
    match (args.sweep, &args.values) {
        (Some(variable), Some(values)) => {
            c.sweep = Some(engine::SweepSpec {
                variable,
                values: values.clone(),
            })
        }
        (None, None) => {}
        _ => return Err(invalid("sweep", "--sweep and --values go together")),
    }
    c.validate()?;
    Ok(c)
}

fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let started = now();
    let config = simulation_config(args)?;
    let (variable, values) = match &config.sweep {
        Some(s) => (Some(s.variable), s.values.clone()),
        None => (None, vec![config.geometry.radius]),
    };
    let points = match variable {
        Some(v) => engine::run_sweep(&config, v, &values)?,
        None => vec![engine::SweepPoint {
            value: config.geometry.radius,
            report: engine::run_experiment(&config)?,
        }],
    };
    let mut rows = Vec::new();
    for point in &points {
        for r in &point.report.reports {
            rows.push(SimulationRow {
                sweep_value: point.value,
                n_bs_mean: point.report.mean_coverage,
                policy: r.policy.to_string(),
                p_hit_mean: r.mean,
                ci95: r.ci95,
                n_replications: r.n_replications(),
                seed: point.report.base_seed,
            });
            println!(
                "{}={} N_bs={:.3} {:<18} p_hit={:.4} ±{:.4}",
                variable.map_or("rb".to_string(), |v| v.to_string()),
                point.value,
                point.report.mean_coverage,
                r.policy.to_string(),
                r.mean,
                r.ci95
            );
        }
    }
    let out = &args.common.out;
    let csv_path = out.join("simulation.csv");
    let json_path = out.join("simulation.json");
    io::write_csv(&csv_path, &rows)?;
    io::write_json(&json_path, &points)?;
    let seeds = (0..config.run.replications as u64)
        .map(|i| config.run.seed.wrapping_add(i))
        .collect();
    write_manifest(out, "simulate", &config, seeds, started, vec![csv_path, json_path])
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<()> {
    let started = now();
    let seed = args.common.seed.unwrap_or(1);
    let values = match &args.values {
        Some(v) if !v.is_empty() => v.clone(),
        Some(_) => return Err(invalid("values", "empty sweep")),
        None => vec![match args.sweep {
            SweepVariable::Radius => args.radius,
            SweepVariable::Gamma => args.gamma,
            SweepVariable::Alpha => args.alpha.unwrap_or(0.01),
            SweepVariable::Q => return Err(invalid("sweep", "no analytical model depends on q")),
        }],
    };
    let mut rows = Vec::new();
    for &value in &values {
        let (mut radius, mut gamma, mut alpha) = (args.radius, args.gamma, args.alpha);
        let mut k = args.k;
        match args.sweep {
            SweepVariable::Radius => radius = value,
            SweepVariable::Gamma => gamma = value,
            SweepVariable::Alpha => {
                alpha = Some(value);
                k = None;
            }
            SweepVariable::Q => return Err(invalid("sweep", "no analytical model depends on q")),
        }
        let catalogue = crate::traffic::Catalogue::zipf(args.catalogue_size, gamma)?;
        let k = match (k, alpha) {
            (Some(k), _) => k,
            (None, Some(a)) if a > 0.0 && a <= 1.0 => (a * args.catalogue_size as f64).round() as usize,
            (None, Some(a)) => return Err(invalid("alpha", format!("must lie in (0, 1], got {a}"))),
            (None, None) => (0.01 * args.catalogue_size as f64).round() as usize,
        };
        if k == 0 {
            return Err(invalid("k", "cache capacity must be at least 1"));
        }
        let needs_profile = args
            .policy
            .iter()
            .any(|p| !matches!(p, AnalysisPolicy::TwoCacheOne | AnalysisPolicy::TwoCacheAll));
        let profile = match (&args.pmf, needs_profile) {
            (Some(pmf), _) => Some(CoverageProfile::new(pmf.clone())?),
            (None, true) => Some(geometry_profile(
                args.kind,
                args.lambda_b,
                radius,
                (12.0, 12.0),
                args.max_count,
                args.samples,
                seed,
            )?),
            (None, false) => None,
        };
        let voronoi = 1.0 / args.lambda_b;
        for &policy in &args.policy {
            let (p_hit, t_c) = evaluate(policy, args, &catalogue, profile.as_ref(), radius, voronoi, k)?;
            println!("{}={value} {:<14} p_hit={p_hit:.6}", args.sweep, policy.label());
            rows.push(AnalysisRow {
                sweep_value: value,
                policy: policy.label().to_string(),
                p_hit,
                t_c,
            });
        }
    }
    let out = &args.common.out;
    let path = out.join("analysis.csv");
    io::write_csv(&path, &rows)?;
    let config = serde_json::json!({
        "policy": args.policy.iter().map(|p| p.label()).collect::<Vec<_>>(),
        "kind": args.kind,
        "lambda_b": args.lambda_b,
        "radius": args.radius,
        "lambda_u": args.lambda_u,
        "catalogue_size": args.catalogue_size,
        "gamma": args.gamma,
        "k": args.k,
        "alpha": args.alpha,
        "pmf": args.pmf,
        "voronoi_area": args.voronoi_area,
        "sweep": args.sweep,
        "values": values,
    });
    write_manifest(out, "analyze", &config, vec![seed], started, vec![path])
}

fn evaluate(
    policy: AnalysisPolicy,
    args: &AnalyzeArgs,
    catalogue: &crate::traffic::Catalogue,
    profile: Option<&CoverageProfile>,
    radius: f64,
    voronoi: f64,
    k: usize,
) -> Result<(f64, Option<f64>)> {
    let profile = || profile.ok_or_else(|| invalid("pmf", "coverage profile unavailable"));
    let k_fit = k.min(catalogue.len());
    Ok(match policy {
        AnalysisPolicy::Single => {
            // each covered user sees exactly one LRU cache
            let covered = 1.0 - profile()?.probability(0);
            let sol = crate::analytics::solve_characteristic_time(catalogue, args.lambda_u * voronoi, k)?;
            (
                covered * che_single_hit(catalogue, args.lambda_u * voronoi, k)?,
                Some(sol.characteristic_time),
            )
        }
        AnalysisPolicy::Lfu => ((1.0 - profile()?.probability(0)) * catalogue.head_mass(k_fit), None),
        AnalysisPolicy::MultiOne => {
            let p = che_multi_one(catalogue, args.lambda_u, voronoi, profile()?, k)?;
            (p.hit_probability, Some(p.characteristic_time))
        }
        AnalysisPolicy::MultiAll => {
            let p = che_multi_all(catalogue, args.lambda_u, radius, profile()?, k)?;
            (p.hit_probability, Some(p.characteristic_time))
        }
        AnalysisPolicy::TwoCacheOne | AnalysisPolicy::TwoCacheAll => {
            let which = if policy == AnalysisPolicy::TwoCacheOne {
                TwoCachePolicy::One
            } else {
                TwoCachePolicy::All
            };
            let area = args.voronoi_area.unwrap_or(voronoi);
            let p = two_cache(which, catalogue, args.lambda_u, area, k)?;
            (p.hit_probability, Some(p.characteristic_time))
        }
        AnalysisPolicy::Bound => (hit_upper_bound(catalogue, profile()?, k), None),
    })
}

#[derive(Serialize)]
struct ComparisonRow {
    sweep_value: f64,
    policy: String,
    simulated: f64,
    analytical: f64,
    abs_deviation: f64,
}

/// `(sweep_value, policy) → hit probability` from either table schema.
fn read_hit_table(path: &Path) -> Result<BTreeMap<(u64, String), f64>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let value_col = col("p_hit_mean")
        .or_else(|| col("p_hit"))
        .ok_or_else(|| Error::Config(format!("{}: no p_hit or p_hit_mean column", path.display())))?;
    let sweep_col =
        col("sweep_value").ok_or_else(|| Error::Config(format!("{}: no sweep_value column", path.display())))?;
    let policy_col = col("policy").ok_or_else(|| Error::Config(format!("{}: no policy column", path.display())))?;
    let mut table = BTreeMap::new();
    for record in reader.records() {
        let record = record?;
        let parse = |i: usize| -> Result<f64> {
            record[i]
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("{}: bad number `{}`", path.display(), &record[i])))
        };
        let sweep = parse(sweep_col)?;
        table.insert((sweep.to_bits(), record[policy_col].to_string()), parse(value_col)?);
    }
    Ok(table)
}

fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let started = now();
    let sim = read_hit_table(&args.simulation)?;
    let ana = read_hit_table(&args.analysis)?;
    let grid = |t: &BTreeMap<(u64, String), f64>| t.keys().map(|(v, _)| *v).collect::<BTreeSet<u64>>();
    let (sim_grid, ana_grid) = (grid(&sim), grid(&ana));
    if sim_grid != ana_grid {
        let show = |g: &BTreeSet<u64>| {
            g.iter()
                .map(|b| f64::from_bits(*b).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        return Err(Error::GridMismatch(format!(
            "simulation sweeps [{}], analysis sweeps [{}]",
            show(&sim_grid),
            show(&ana_grid)
        )));
    }
    let mut rows = Vec::new();
    for ((bits, policy), &analytical) in &ana {
        if let Some(&simulated) = sim.get(&(*bits, policy.clone())) {
            rows.push(ComparisonRow {
                sweep_value: f64::from_bits(*bits),
                policy: policy.clone(),
                simulated,
                analytical,
                abs_deviation: (simulated - analytical).abs(),
            });
        }
    }
    if rows.is_empty() {
        return Err(Error::GridMismatch("no policy appears in both tables".into()));
    }
    rows.sort_by(|a, b| a.policy.cmp(&b.policy).then(a.sweep_value.total_cmp(&b.sweep_value)));
    let mut worst: BTreeMap<&str, f64> = BTreeMap::new();
    for r in &rows {
        let w = worst.entry(&r.policy).or_insert(0.0);
        *w = w.max(r.abs_deviation);
    }
    for (policy, dev) in &worst {
        println!("{policy:<16} max |sim - analysis| = {dev:.4}");
    }
    let overall = worst.values().copied().fold(0.0, f64::max);
    println!("max deviation = {overall:.4}");
    let path = args.out.join("comparison.csv");
    io::write_csv(&path, &rows)?;
    let config = serde_json::json!({
        "simulation": args.simulation,
        "analysis": args.analysis,
        "max_deviation": overall,
    });
    write_manifest(&args.out, "compare", &config, vec![], started, vec![path])
}
