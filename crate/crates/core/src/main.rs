//! Command-line front end: generate synthetic data, train a model, build a
//! schedule, and evaluate cost distributions.
//!
//! Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error.
//! Diagnostics go to stderr; data goes to files only.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use serde_json::json;

use fuzzy_roster::eval::{compare_staffing, StaffingReport};
use fuzzy_roster::ga::{evolve, GaConfig};
use fuzzy_roster::io::{
    generate_pool, generate_scenario, load_model, load_pool, load_scenario, save_model, save_pool,
    save_scenario, save_schedule, IoError, ModelFile, ScenarioFile,
    ScheduleReport, TrainingMetadata, DEFAULT_DENSITY_RANGE, MODEL_FORMAT_VERSION,
    SCENARIO_FORMAT_VERSION,
};
use fuzzy_roster::schedule::{build_schedule, EngineConfig, Scenario};

/// Environment variable consulted when --seed is not given.
const SEED_ENV: &str = "FUZZY_ROSTER_SEED";

#[derive(Parser)]
#[command(
    name = "fuzzy-roster",
    about = "Fuzzy-inference shift scheduler for part-time workforces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic availability pool and scenario bundles
    Generate(GenerateArgs),
    /// Train the rule tables and output membership functions
    Train(TrainArgs),
    /// Build one schedule from a trained model and a scenario
    Schedule(ScheduleArgs),
    /// Evaluate cost distributions over scenario batches
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Size of the synthetic availability pool
    #[arg(long, default_value_t = 40)]
    pool_size: usize,
    /// Reuse an existing pool file instead of generating one
    #[arg(long)]
    pool: Option<PathBuf>,
    /// Workers per scenario
    #[arg(long, default_value_t = 20)]
    workers: usize,
    /// Number of scenario bundles to write
    #[arg(long, default_value_t = 30)]
    count: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Lower bound of the per-worker availability density
    #[arg(long, default_value_t = DEFAULT_DENSITY_RANGE.0)]
    density_lo: f64,
    /// Upper bound of the per-worker availability density
    #[arg(long, default_value_t = DEFAULT_DENSITY_RANGE.1)]
    density_hi: f64,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct TrainArgs {
    /// Scenario bundle files, or a directory of them
    #[arg(long, required = true, num_args = 1..)]
    scenarios: Vec<PathBuf>,
    /// GA configuration: a JSON file path, or inline overrides such as
    /// `pop=50,gens=20,n=5`
    #[arg(long)]
    config: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Adjacency scaling factor stored with the model
    #[arg(long, default_value_t = 3.0)]
    gamma: f64,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct ScheduleArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    scenario: PathBuf,
    /// Override the model's adjacency scaling factor
    #[arg(long)]
    gamma: Option<f64>,
    /// Score workers at their weekly limit as zero
    #[arg(long)]
    hard_limit: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Output schedule CSV path
    #[arg(long, default_value = "schedule.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    pool: PathBuf,
    /// Workforce sizes to evaluate (repeatable)
    #[arg(long = "workers", default_values_t = [20usize, 16])]
    workers: Vec<usize>,
    /// Scenarios per workforce size
    #[arg(long, default_value_t = 200)]
    batch: usize,
    /// Override the model's adjacency scaling factor
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    hard_limit: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Train(args) => cmd_train(args),
        Command::Schedule(args) => cmd_schedule(args),
        Command::Evaluate(args) => cmd_evaluate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var(SEED_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", dir.display())))
}

/// Records the fully resolved configuration of a run next to its outputs.
fn write_run_config(dir: &Path, command: &str, resolved: serde_json::Value) -> Result<(), CliError> {
    let body = serde_json::to_string_pretty(&json!({
        "command": command,
        "resolved": resolved,
        "metadata": { "created_unix": now_unix() },
    }))
    .expect("run config serializes");
    let path = dir.join("run_config.json");
    std::fs::write(&path, body + "\n")
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    if args.workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    if args.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let seed = resolve_seed(args.seed);
    ensure_dir(&args.out)?;

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let pool = match &args.pool {
        Some(path) => load_pool(path)?,
        None => {
            let mut pool =
                generate_pool(args.pool_size, (args.density_lo, args.density_hi), &mut rng)?;
            pool.metadata = Some(json!({
                "seed": seed,
                "density_range": [args.density_lo, args.density_hi],
            }));
            let path = args.out.join("pool.json");
            save_pool(&path, &pool)?;
            eprintln!("wrote {}", path.display());
            pool
        }
    };
    if args.workers > pool.len() {
        return Err(CliError::Usage(format!(
            "--workers {} exceeds pool size {}",
            args.workers,
            pool.len()
        )));
    }

    for i in 0..args.count {
        let scenario = generate_scenario(&pool, args.workers, &mut rng)?;
        let file = ScenarioFile {
            format_version: SCENARIO_FORMAT_VERSION,
            scenario,
            metadata: Some(json!({
                "seed": seed,
                "index": i,
                "workers": args.workers,
                "pool_size": pool.len(),
            })),
        };
        let path = args.out.join(format!("scenario_{i:03}.json"));
        save_scenario(&path, &file)?;
    }
    eprintln!(
        "wrote {} scenario bundle(s) to {}",
        args.count,
        args.out.display()
    );
    write_run_config(
        &args.out,
        "generate",
        json!({
            "pool_size": pool.len(),
            "workers": args.workers,
            "count": args.count,
            "seed": seed,
            "density_range": [args.density_lo, args.density_hi],
        }),
    )
}

fn apply_inline_overrides(config: &mut GaConfig, spec: &str) -> Result<(), CliError> {
    for part in spec.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config override `{part}` is not key=value"))
        })?;
        let bad = |what: &str| CliError::Usage(format!("config key {key}: {what}: `{value}`"));
        match key.trim() {
            "pop" | "population_size" => {
                config.population_size = value.parse().map_err(|_| bad("invalid count"))?
            }
            "gens" | "max_generations" => {
                config.max_generations = value.parse().map_err(|_| bad("invalid count"))?
            }
            "stall" | "stall_generations" => {
                config.stall_generations = value.parse().map_err(|_| bad("invalid count"))?
            }
            "elite" | "elite_count" => {
                config.elite_count = value.parse().map_err(|_| bad("invalid count"))?
            }
            "cross" | "crossover_fraction" => {
                config.crossover_fraction = value.parse().map_err(|_| bad("invalid fraction"))?
            }
            "n" | "n_scenarios" => {
                config.n_scenarios = value.parse().map_err(|_| bad("invalid count"))?
            }
            "mut" | "rule_mutation_rate" => {
                config.rule_mutation_rate = value.parse().map_err(|_| bad("invalid rate"))?
            }
            "sigma" | "mf_mutation_sigma" => {
                config.mf_mutation_sigma = value.parse().map_err(|_| bad("invalid sigma"))?
            }
            other => {
                return Err(CliError::Usage(format!("unknown config key `{other}`")));
            }
        }
    }
    Ok(())
}

fn resolve_ga_config(spec: Option<&str>, seed: u64) -> Result<GaConfig, CliError> {
    let mut config = match spec {
        Some(s) if s.contains('=') => {
            let mut c = GaConfig::default();
            apply_inline_overrides(&mut c, s)?;
            c
        }
        Some(s) => {
            let text = std::fs::read_to_string(s)
                .map_err(|e| CliError::Runtime(format!("{s}: {e}")))?;
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{s}: {e}")))?
        }
        None => GaConfig::default(),
    };
    config.seed = seed;
    config
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(config)
}

fn scenario_paths(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut paths = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(input)
                .map_err(|e| CliError::Runtime(format!("{}: {e}", input.display())))?
                .filter_map(|e| e.ok())
                .map(|e| e.path())
                .filter(|p| {
                    p.extension().is_some_and(|ext| ext == "json")
                        && p.file_name()
                            .is_some_and(|n| n.to_string_lossy().starts_with("scenario"))
                })
                .collect();
            entries.sort();
            paths.extend(entries);
        } else {
            paths.push(input.clone());
        }
    }
    if paths.is_empty() {
        return Err(CliError::Runtime("no scenario files found".into()));
    }
    Ok(paths)
}

fn cmd_train(args: TrainArgs) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed);
    let config = resolve_ga_config(args.config.as_deref(), seed)?;
    if args.gamma < 1.0 {
        return Err(CliError::Usage("--gamma must be at least 1".into()));
    }
    let paths = scenario_paths(&args.scenarios)?;
    let mut scenarios: Vec<Scenario> = paths
        .iter()
        .map(|p| load_scenario(p))
        .collect::<Result<_, _>>()?;
    if scenarios.len() > config.n_scenarios {
        scenarios.truncate(config.n_scenarios);
    } else if scenarios.len() < config.n_scenarios {
        eprintln!(
            "note: {} scenario(s) provided, n_scenarios={}; using all {}",
            scenarios.len(),
            config.n_scenarios,
            scenarios.len()
        );
    }
    ensure_dir(&args.out)?;

    let engine = EngineConfig {
        gamma: args.gamma,
        hard_weekly_mask: false,
    };
    eprintln!(
        "training: pop={} gens<={} stall={} scenarios={} seed={}",
        config.population_size,
        config.max_generations,
        config.stall_generations,
        scenarios.len(),
        seed
    );
    let result = evolve(&config, &scenarios, &engine)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    eprintln!(
        "done after {} generation(s); best fitness {:.6}",
        result.history.len(),
        result.best_fitness
    );

    let model = ModelFile {
        format_version: MODEL_FORMAT_VERSION,
        gamma: args.gamma,
        fis_pair: result.best.decode(),
        metadata: Some(TrainingMetadata {
            seed,
            config: config.clone(),
            final_fitness: result.best_fitness,
            history: result.history.clone(),
            created_unix: now_unix(),
        }),
    };
    let model_path = args.out.join("model.json");
    save_model(&model_path, &model)?;
    eprintln!("wrote {}", model_path.display());

    let mut history = String::from("generation,best,mean\n");
    for s in &result.history {
        let _ = writeln!(history, "{},{},{}", s.generation, s.best, s.mean);
    }
    let history_path = args.out.join("history.csv");
    std::fs::write(&history_path, history)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", history_path.display())))?;
    eprintln!("wrote {}", history_path.display());

    write_run_config(
        &args.out,
        "train",
        json!({
            "config": config,
            "gamma": args.gamma,
            "seed": seed,
            "scenario_files": paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        }),
    )
}

fn cmd_schedule(args: ScheduleArgs) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed);
    let model = load_model(&args.model)?;
    let scenario = load_scenario(&args.scenario)?;
    let engine = EngineConfig {
        gamma: args.gamma.unwrap_or(model.gamma),
        hard_weekly_mask: args.hard_limit,
    };
    if engine.gamma < 1.0 {
        return Err(CliError::Usage("--gamma must be at least 1".into()));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let schedule = build_schedule(&scenario, &model.fis_pair, &engine, &mut rng);

    for sf in &schedule.coverage_shortfalls {
        eprintln!(
            "shortfall: day {} hour {} missing {} worker(s)",
            sf.slot.day + 1,
            sf.slot.hour + 1,
            sf.missing
        );
    }
    for w in schedule.weekly_limit_violations(&scenario) {
        eprintln!(
            "weekly limit exceeded: {} assigned {}h (limit {}h)",
            scenario.workers[w].id, schedule.weekly_hours[w], scenario.workers[w].weekly_limit
        );
    }

    let report = ScheduleReport::from_schedule(&schedule, &scenario);
    save_schedule(&args.out, &report)?;
    eprintln!("wrote {}", args.out.display());
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        write_run_config(
            dir,
            "schedule",
            json!({
                "model": args.model.display().to_string(),
                "scenario": args.scenario.display().to_string(),
                "gamma": engine.gamma,
                "hard_limit": engine.hard_weekly_mask,
                "seed": seed,
            }),
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct DistributionDocBatch<'a> {
    worker_count: usize,
    costs: &'a [f64],
    summary: fuzzy_roster::eval::FiveNumberSummary,
    variance: f64,
    understaffed_count: usize,
    median_cost: f64,
    weekly_limit_violations: usize,
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    if args.batch == 0 {
        return Err(CliError::Usage("--batch must be at least 1".into()));
    }
    if args.workers.is_empty() {
        return Err(CliError::Usage("at least one --workers value required".into()));
    }
    let seed = resolve_seed(args.seed);
    let model = load_model(&args.model)?;
    let pool = load_pool(&args.pool)?;
    let engine = EngineConfig {
        gamma: args.gamma.unwrap_or(model.gamma),
        hard_weekly_mask: args.hard_limit,
    };
    ensure_dir(&args.out)?;

    let report: StaffingReport =
        compare_staffing(&model.fis_pair, &pool, &args.workers, args.batch, &engine, seed)?;

    let mut boxplot = String::from("worker_count,min,q1,median,q3,max\n");
    let mut doc_batches = Vec::new();
    for batch in &report.batches {
        let d = &batch.distribution;
        let s = d.summary;
        let _ = writeln!(
            boxplot,
            "{},{},{},{},{},{}",
            d.worker_count, s.min, s.q1, s.median, s.q3, s.max
        );
        let violations = batch
            .median_schedule
            .weekly_limit_violations(&batch.median_scenario)
            .len();
        doc_batches.push(DistributionDocBatch {
            worker_count: d.worker_count,
            costs: &d.costs,
            summary: s,
            variance: d.variance,
            understaffed_count: d.understaffed.iter().filter(|&&u| u).count(),
            median_cost: s.median,
            weekly_limit_violations: violations,
        });
        let sched_path = args.out.join(format!("median_schedule_{}.csv", d.worker_count));
        let sched_report =
            ScheduleReport::from_schedule(&batch.median_schedule, &batch.median_scenario);
        save_schedule(&sched_path, &sched_report)?;
        eprintln!(
            "workers={}: median cost {:.4}, variance {:.4}",
            d.worker_count, s.median, d.variance
        );
    }

    let doc = json!({
        "seed": seed,
        "batch_size": args.batch,
        "gamma": engine.gamma,
        "batches": doc_batches,
        "comparisons": report.comparisons,
    });
    let dist_path = args.out.join("distribution.json");
    std::fs::write(
        &dist_path,
        serde_json::to_string_pretty(&doc).expect("distribution serializes") + "\n",
    )
    .map_err(|e| CliError::Runtime(format!("{}: {e}", dist_path.display())))?;
    let box_path = args.out.join("boxplot.csv");
    std::fs::write(&box_path, boxplot)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", box_path.display())))?;
    eprintln!("wrote {} and {}", dist_path.display(), box_path.display());

    write_run_config(
        &args.out,
        "evaluate",
        json!({
            "model": args.model.display().to_string(),
            "pool": args.pool.display().to_string(),
            "workers": args.workers,
            "batch": args.batch,
            "gamma": engine.gamma,
            "hard_limit": engine.hard_weekly_mask,
            "seed": seed,
        }),
    )
}
