use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use moore_core::backend::DerivedBackend;
use moore_core::cluster::ClusterBackend;
use moore_core::linalg::Field;
use moore_core::quiver::Quiver;
use moore_core::verify::{run_suites, Report, Suite};

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Backend {
    /// The u-cluster category D^b(H)/τ⁻¹Σ^u.
    Cluster,
    /// The bounded homotopy category of projectives.
    Derived,
}

/// Builds the Moore functor for a quiver and machine-checks its properties.
#[derive(Parser, Debug)]
#[command(name = "moore", version)]
struct Cli {
    /// Quiver file: a `vertices: n` line and `arrow: i -> j` lines.
    #[arg(long)]
    quiver: PathBuf,

    /// `Q` or `Fp:<prime>`.
    #[arg(long, default_value = "Q")]
    field: String,

    /// Orbit parameter of the cluster category, at least 2.
    #[arg(long, default_value_t = 2)]
    u: i64,

    /// Comma-separated subset of setup,moore,triangles,delta,keller.
    #[arg(long, default_value = "setup,moore,triangles,delta,keller")]
    suites: String,

    /// Seed for randomized decompositions.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Where to write the machine-readable JSON report.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "cluster")]
    backend: Backend,
}

#[derive(Serialize)]
struct ConfigEcho<'a> {
    quiver: String,
    quiver_file: String,
    field: String,
    u: i64,
    backend: Backend,
    suites: Vec<&'a str>,
    seed: u64,
}

#[derive(Serialize)]
struct Summary {
    pass: bool,
    checks: usize,
    failures: usize,
    first_failure: Option<String>,
    groups: std::collections::BTreeMap<String, (usize, usize)>,
}

#[derive(Serialize)]
struct Document<'a> {
    config: ConfigEcho<'a>,
    n: Option<usize>,
    corpus: &'a [String],
    ses: &'a [String],
    checks: &'a [moore_core::verify::Record],
    summary: Summary,
}

struct Config {
    quiver: Arc<Quiver>,
    field: Field,
    suites: Vec<Suite>,
}

fn validate(cli: &Cli) -> Result<Config, String> {
    if cli.u < 2 {
        return Err(format!("--u must be at least 2, got {}", cli.u));
    }
    let text = std::fs::read_to_string(&cli.quiver).map_err(|e| format!("{}: {e}", cli.quiver.display()))?;
    let quiver = Quiver::parse(&text).map_err(|e| format!("{}: {e}", cli.quiver.display()))?;
    let field = Field::parse(&cli.field).map_err(|e| e.to_string())?;
    let mut suites = cli.suites.split(',').map(Suite::parse).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    suites.sort();
    suites.dedup();
    Ok(Config { quiver: Arc::new(quiver), field, suites })
}

fn print_human(cli: &Cli, cfg: &Config, report: &Report) {
    println!("quiver   {}", cfg.quiver);
    println!("field    {}", cfg.field);
    match cli.backend {
        Backend::Cluster => println!("backend  cluster, u = {}", cli.u),
        Backend::Derived => println!("backend  derived"),
    }
    if let Some(n) = report.n {
        println!("n        {n}");
    }
    if !report.corpus.is_empty() {
        println!("corpus   {} modules: {}", report.corpus.len(), report.corpus.join(" "));
    }
    if !report.ses.is_empty() {
        println!("ses      {}", report.ses.len());
    }
    println!();
    println!("{:<28} {:>8} {:>8}  status", "check", "passed", "total");
    for (group, (ok, total)) in report.summary() {
        let status = if ok == total { "ok" } else { "FAIL" };
        println!("{group:<28} {ok:>8} {total:>8}  {status}");
    }
    println!();
    match report.first_failure() {
        None => println!("all {} checks pass", report.records.len()),
        Some(r) => {
            println!("{} of {} checks fail", report.failures(), report.records.len());
            println!("first failure: {}", r.check_id);
            println!("  statement: {}", r.statement);
            if let Some(w) = &r.witness {
                println!("  witness:   {w}");
            }
        }
    }
}

fn run(cli: &Cli, cfg: &Config) -> Result<Report, String> {
    let name = cli.quiver.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let r = match cli.backend {
        Backend::Cluster => run_suites(&ClusterBackend::new(cfg.quiver.clone(), cfg.field, cli.u), &name, &cfg.suites, cli.seed),
        Backend::Derived => run_suites(&DerivedBackend::new(cfg.quiver.clone(), cfg.field), &name, &cfg.suites, cli.seed),
    };
    r.map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match validate(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cli, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    print_human(&cli, &cfg, &report);
    if let Some(path) = &cli.out {
        let doc = Document {
            config: ConfigEcho {
                quiver: cfg.quiver.to_string(),
                quiver_file: cli.quiver.display().to_string(),
                field: cfg.field.label(),
                u: cli.u,
                backend: cli.backend,
                suites: cfg.suites.iter().map(|s| s.name()).collect(),
                seed: cli.seed,
            },
            n: report.n,
            corpus: &report.corpus,
            ses: &report.ses,
            checks: &report.records,
            summary: Summary {
                pass: report.pass(),
                checks: report.records.len(),
                failures: report.failures(),
                first_failure: report.first_failure().map(|r| r.check_id.clone()),
                groups: report.summary(),
            },
        };
        let json = serde_json::to_string_pretty(&doc).expect("report serializes");
        if let Err(e) = std::fs::write(path, json + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
