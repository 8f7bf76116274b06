use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphtest::config::{InstanceSource, RawConfig};
use graphtest::corpus::{self, EntryStatus, ValidationSettings};
use graphtest::experiment::{self, TrialBatch};
use graphtest::format::{self, distance_report_record, lemma_report_record};
use graphtest::{HarnessError, Result};
use graphtest_core::container::{self, ContainerTrace};
use graphtest_core::generate;
use graphtest_core::oracles::{self, HypergeomParams};
use graphtest_core::{ceil_count, Graph, VertexSet};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "graphtest",
    version,
    about = "Container method and canonical property testers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it as an edge list.
    Gen(ExperimentArgs),
    /// Run the tester once.
    Test(ExperimentArgs),
    /// Run a batch of seeded trials.
    Trials(ExperimentArgs),
    /// Sweep the sample size (--s-values) or the constant (--c-values).
    Curve(ExperimentArgs),
    /// Run the container-lemma validation corpus.
    Validate(ValidateArgs),
    /// Exact distances, hypergeometric tails and container traces.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// gnp, planted_is, planted_clique, planted_coloring, complete_multipartite, complete, empty
    #[arg(long)]
    model: Option<String>,
    /// Edge-list file used instead of a model.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<usize>>,
    /// indep_set, clique or k_colorable
    #[arg(long)]
    property: Option<String>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// Master seed; also the instance seed unless --instance-seed is given.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    instance_seed: Option<u64>,
    /// Draw a new instance for every trial.
    #[arg(long)]
    fresh_instances: bool,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    sample_cap: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    s_values: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    c_values: Option<Vec<f64>>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl ExperimentArgs {
    fn raw(&self) -> Result<RawConfig> {
        let base = match &self.config {
            Some(path) => RawConfig::load(path)?,
            None => RawConfig::default(),
        };
        let flags = RawConfig {
            model: self.model.clone(),
            n: self.n,
            p: self.p,
            rho: self.rho,
            k: self.k,
            parts: self.parts.clone(),
            input: self.input.clone(),
            property: self.property.clone(),
            eps: self.eps,
            c: self.c,
            tau: self.tau,
            seed: self.seed,
            instance_seed: self.instance_seed,
            fresh_instances: self.fresh_instances.then_some(true),
            trials: self.trials,
            sample_cap: self.sample_cap,
            s_values: self.s_values.clone(),
            c_values: self.c_values.clone(),
            out: self.out.clone(),
        };
        Ok(base.merge(flags))
    }
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random k-tuples per colorability instance.
    #[arg(long, default_value_t = 100)]
    tuples: usize,
    /// Random maximal independent sets per large instance.
    #[arg(long, default_value_t = 100)]
    sampled_sets: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Exact edit distance of an edge-list graph from a property.
    Distance {
        #[arg(long)]
        input: PathBuf,
        /// indep_set, clique or k_colorable
        #[arg(long, default_value = "indep_set")]
        property: String,
        /// Target set size is ⌈rho·n⌉.
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact hypergeometric tail, Chernoff bound and median check.
    Tail {
        #[arg(long)]
        population: u64,
        #[arg(long)]
        marked: u64,
        #[arg(long)]
        draws: u64,
        /// Defaults to ⌈mean⌉.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Container trace of an independent set, one line per step.
    Trace {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[arg(long)]
        members: bool,
        /// Also run the single-container search with these parameters.
        #[arg(long, requires = "eps")]
        rho: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
    },
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| {
            HarnessError::Io {
                path: p.to_path_buf(),
                source,
            }
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_batches(out: Box<dyn Write>, batches: &[TrialBatch], format: Format) -> Result<()> {
    match format {
        Format::Csv => {
            let rows: Vec<_> = batches.iter().map(TrialBatch::summary).collect();
            experiment::write_csv(out, &rows)
        }
        Format::Json => {
            let records: Vec<_> = batches
                .iter()
                .flat_map(|b| b.records.iter().cloned())
                .collect();
            experiment::write_json_lines(out, &records)
        }
    }
}

fn gen(args: &ExperimentArgs) -> Result<()> {
    let raw = args.raw()?;
    let g = match raw.instance()? {
        InstanceSource::Generated(spec) => generate::generate(&spec)?,
        InstanceSource::File(path) => format::load_graph(&path)?,
    };
    let out = output(raw.out.as_deref())?;
    format::write_edge_list(out, &g)?;
    Ok(())
}

fn trials(args: &ExperimentArgs, single: bool, default: Format) -> Result<()> {
    let mut raw = args.raw()?;
    if single {
        raw.trials = Some(1);
    }
    let config = raw.resolve()?;
    let batch = experiment::run_trial_batch(&config)?;
    let s = &batch.stats;
    eprintln!(
        "{} of {} accepted (rate {:.4}, 95% [{:.4}, {:.4}])",
        s.accepts, s.trials, s.acceptance_rate, s.wilson_low, s.wilson_high
    );
    let out = output(config.output_path.as_deref())?;
    write_batches(out, &[batch], args.format.unwrap_or(default))
}

fn curve(args: &ExperimentArgs) -> Result<()> {
    let config = args.raw()?.resolve()?;
    let sweep = config
        .sweep
        .clone()
        .ok_or_else(|| HarnessError::Config("curve needs --s-values or --c-values".into()))?;
    let batches = experiment::acceptance_curve(&config, &sweep)?;
    let out = output(config.output_path.as_deref())?;
    write_batches(out, &batches, args.format.unwrap_or(Format::Csv))
}

fn validate(args: &ValidateArgs) -> Result<()> {
    let settings = ValidationSettings {
        tuples: args.tuples,
        sampled_sets: args.sampled_sets,
        seed: args.seed,
        ..ValidationSettings::default()
    };
    let corpus = corpus::default_corpus(args.seed)?;
    let reports = corpus::validate_lemmas(&corpus, &settings)?;
    let failed = reports
        .iter()
        .filter(|r| r.status == EntryStatus::Failed)
        .count();
    eprintln!("{} instances, {failed} failed", reports.len());
    let out = output(args.out.as_deref())?;
    match args.format {
        Format::Json => experiment::write_json_lines(out, &reports),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &reports {
                w.serialize(r)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| HarnessError::Config(format!("missing --{flag}")))
}

fn parse_set(g: &Graph, members: &[usize]) -> Result<VertexSet> {
    VertexSet::from_members(g.n(), members.iter().copied())
        .map_err(|v| HarnessError::Config(format!("vertex {v} out of range for n = {}", g.n())))
}

fn oracle(query: &OracleQuery) -> Result<()> {
    let mut out = io::stdout().lock();
    match query {
        OracleQuery::Distance {
            input,
            property,
            rho,
            k,
        } => {
            let g = format::load_graph(input)?;
            let report = match property.as_str() {
                "indep_set" => {
                    oracles::distance_to_indep_set(&g, ceil_count(need(*rho, "rho")?, g.n()))?
                }
                "clique" => oracles::distance_to_clique(&g, ceil_count(need(*rho, "rho")?, g.n()))?,
                "k_colorable" => oracles::distance_to_k_colorable(&g, need(*k, "k")?)?,
                other => return Err(HarnessError::Config(format!("unknown property {other:?}"))),
            };
            serde_json::to_writer(&mut out, &distance_report_record(&report))?;
        }
        OracleQuery::Tail {
            population,
            marked,
            draws,
            threshold,
        } => {
            let mean = *draws as f64 * *marked as f64 / (*population).max(1) as f64;
            let threshold = threshold.unwrap_or_else(|| mean.ceil());
            let params = HypergeomParams::new(*population, *marked, *draws, threshold)?;
            let record = json!({
                "population": population,
                "marked": marked,
                "draws": draws,
                "threshold": threshold,
                "mean": params.mean(),
                "exact_tail": oracles::hypergeometric_tail(&params),
                "chernoff_bound": oracles::chernoff_bound(&params).ok(),
                "median_at_ceil_mean": oracles::hypergeometric_median_check(*population, *marked, *draws),
            });
            serde_json::to_writer(&mut out, &record)?;
        }
        OracleQuery::Trace {
            input,
            set,
            members,
            rho,
            eps,
        } => {
            let g = format::load_graph(input)?;
            let set = parse_set(&g, set)?;
            let trace = ContainerTrace::generate(&g, &set)?;
            format::write_trace(&mut out, &trace, *members)?;
            if let (Some(rho), Some(eps)) = (rho, eps) {
                let report = container::find_small_container(&g, &set, *rho, *eps)?;
                serde_json::to_writer(&mut out, &Value::Object(lemma_report_record(&report)))?;
            }
        }
    }
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Gen(args) => gen(args),
        Command::Test(args) => trials(args, true, Format::Json),
        Command::Trials(args) => trials(args, false, Format::Csv),
        Command::Curve(args) => curve(args),
        Command::Validate(args) => validate(args),
        Command::Oracle { query } => oracle(query),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
