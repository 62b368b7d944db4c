//! Command-line front end: dataset ingestion, embedded datasets, and
//! serialization of test and simulation reports to JSON or CSV.
//!
//! Exit codes: 0 accept, 3 reject, 1 error.

mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sparse_gof::{
    perturb, quantile_by_c, run_gof_test, run_independence_test, run_simulation,
    table1_distribution, Decision, EpsilonPolicy, SimConfig, Table1Null, TestReport,
};

/// Default master seed; override with --seed or the SPARSE_GOF_SEED
/// environment variable.
const DEFAULT_SEED: u64 = 20070;
const SEED_ENV: &str = "SPARSE_GOF_SEED";

#[derive(Parser)]
#[command(name = "sparse-gof", version, about = "Goodness-of-fit tests for sparse tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Independence test on a contingency table (CSV file or embedded dataset).
    Test {
        /// CSV file: header row of column labels, then one row label plus counts per line.
        #[arg(long, conflicts_with = "dataset")]
        input: Option<PathBuf>,
        /// Embedded dataset name (see `datasets`).
        #[arg(long)]
        dataset: Option<String>,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        /// Absolute epsilon for the interior margin of the parameter a.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Goodness-of-fit test of a count vector against a fully specified null.
    Gof {
        /// File of whitespace/comma separated nonnegative integer counts.
        #[arg(long)]
        counts: PathBuf,
        /// Null distribution: f1..f4, fp1..fp4, or a probability-vector file.
        #[arg(long)]
        null: String,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Monte Carlo experiment: rejection rates, mode of the zero count.
    Simulate {
        /// Data-generating distribution: f1..f4, fp1..fp4, or a file.
        #[arg(long)]
        sampling: String,
        /// Null distribution under test: f1..f4, fp1..fp4, or a file.
        #[arg(long)]
        null: String,
        #[arg(long, default_value_t = 400)]
        n: u64,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        #[arg(long)]
        epsilon: Option<f64>,
        /// Also write the per-replicate CSV to this path.
        #[arg(long)]
        records: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Per-zero-count 0.95 quantiles of all five statistics, as CSV.
    Quantiles {
        #[arg(long)]
        sampling: String,
        #[arg(long)]
        null: String,
        #[arg(long, default_value_t = 400)]
        n: u64,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// List the embedded datasets.
    Datasets,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn effective_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| format!("{SEED_ENV}={v} is not a valid 64-bit seed")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn epsilon_policy(epsilon: Option<f64>) -> EpsilonPolicy {
    match epsilon {
        Some(e) => EpsilonPolicy::Absolute(e),
        None => EpsilonPolicy::default(),
    }
}

/// Resolve a distribution spec: f1..f4, fp1..fp4, or a file path.
fn resolve_distribution(spec: &str) -> Result<Vec<f64>, String> {
    let base = |which| Ok(table1_distribution(which));
    match spec {
        "f1" => base(Table1Null::F1),
        "f2" => base(Table1Null::F2),
        "f3" => base(Table1Null::F3),
        "f4" => base(Table1Null::F4),
        "fp1" | "fp2" | "fp3" | "fp4" => {
            let which = match spec {
                "fp1" => Table1Null::F1,
                "fp2" => Table1Null::F2,
                "fp3" => Table1Null::F3,
                _ => Table1Null::F4,
            };
            perturb(&table1_distribution(which)).map_err(|e| e.to_string())
        }
        path => io::read_probability_file(std::path::Path::new(path)).map_err(|e| e.to_string()),
    }
}

fn exit_for(report: &TestReport) -> ExitCode {
    match report.combined_decision {
        Decision::Accept => ExitCode::from(0),
        Decision::Reject => ExitCode::from(3),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Test {
            input,
            dataset,
            alpha,
            h,
            epsilon,
            format,
        } => {
            let table = match (input, dataset) {
                (Some(path), None) => io::read_table_csv(&path).map_err(|e| e.to_string())?,
                (None, Some(name)) => sparse_gof::datasets::by_name(&name)
                    .ok_or_else(|| format!("unknown dataset '{name}'; see `sparse-gof datasets`"))?,
                _ => return Err("provide exactly one of --input or --dataset".into()),
            };
            let report = run_independence_test(&table, alpha, h, epsilon_policy(epsilon))
                .map_err(|e| e.to_string())?;
            print_test_report(&report, format)?;
            Ok(exit_for(&report))
        }
        Command::Gof {
            counts,
            null,
            alpha,
            h,
            epsilon,
            format,
        } => {
            let counts = io::read_counts_file(&counts).map_err(|e| e.to_string())?;
            let null = resolve_distribution(&null)?;
            let report = run_gof_test(&counts, &null, alpha, h, epsilon_policy(epsilon))
                .map_err(|e| e.to_string())?;
            print_test_report(&report, format)?;
            Ok(exit_for(&report))
        }
        Command::Simulate {
            sampling,
            null,
            n,
            reps,
            seed,
            h,
            epsilon,
            records,
            format,
        } => {
            let mut cfg = SimConfig::new(
                resolve_distribution(&sampling)?,
                resolve_distribution(&null)?,
                effective_seed(seed)?,
            );
            cfg.n = n;
            cfg.reps = reps;
            cfg.h = h;
            cfg.epsilon_policy = epsilon_policy(epsilon);
            let report = run_simulation(&cfg).map_err(|e| e.to_string())?;
            if let Some(path) = records {
                io::write_records_csv(&path, &report.records).map_err(|e| e.to_string())?;
            }
            match format {
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                    );
                }
                OutputFormat::Csv => {
                    println!("alpha,q,q_ab,g,g_ab,rc23");
                    for r in &report.rejection_rates {
                        println!(
                            "{},{},{},{},{},{}",
                            r.alpha, r.q, r.q_ab, r.g, r.g_ab, r.rc23
                        );
                    }
                    eprintln!("mode_c={} excluded={}", report.mode_c, report.excluded);
                }
            }
            Ok(ExitCode::from(0))
        }
        Command::Quantiles {
            sampling,
            null,
            n,
            reps,
            seed,
            alpha,
            h,
            epsilon,
        } => {
            let mut cfg = SimConfig::new(
                resolve_distribution(&sampling)?,
                resolve_distribution(&null)?,
                effective_seed(seed)?,
            );
            cfg.n = n;
            cfg.reps = reps;
            cfg.h = h;
            cfg.epsilon_policy = epsilon_policy(epsilon);
            let report = run_simulation(&cfg).map_err(|e| e.to_string())?;
            let rows = quantile_by_c(&report.records, alpha);
            println!("c,count,q95_Q,q95_Qab,q95_G,q95_Gab,q95_RC23,threshold");
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            for row in rows {
                println!(
                    "{},{},{},{},{},{},{},{}",
                    row.c,
                    row.count,
                    row.q,
                    opt(row.q_ab),
                    row.g,
                    opt(row.g_ab),
                    row.rc23,
                    report.threshold_line
                );
            }
            Ok(ExitCode::from(0))
        }
        Command::Datasets => {
            let table = sparse_gof::datasets::tnfaip3().preprocess().map_err(|e| e.to_string())?;
            println!(
                "tnfaip3   diplotype association table, {}x{} after preprocessing, n={}",
                table.rows(),
                table.cols(),
                table.n()
            );
            let table = sparse_gof::datasets::camargue().preprocess().map_err(|e| e.to_string())?;
            println!(
                "camargue  river trophic level vs vegetable composition, {}x{} after preprocessing, n={}",
                table.rows(),
                table.cols(),
                table.n()
            );
            Ok(ExitCode::from(0))
        }
    }
}

fn print_test_report(report: &TestReport, format: OutputFormat) -> Result<(), String> {
    match format {
        OutputFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(report).map_err(|e| e.to_string())?
            );
        }
        OutputFormat::Csv => {
            println!("statistic,value,threshold,p_value,decision");
            for s in &report.statistics {
                println!(
                    "{},{},{},{},{}",
                    s.name,
                    s.value,
                    report.threshold,
                    s.p_value,
                    if s.decision.is_reject() { "reject" } else { "accept" }
                );
            }
        }
    }
    Ok(())
}
