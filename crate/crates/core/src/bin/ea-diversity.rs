//! Experiment runner: sweeps `n`, runs seeded replications, writes CSV and an
//! optional SVG chart, and prints a summary table.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use ea_diversity::harness::{
    emit_plot, format_summary, load_settings, run_experiment, summarize, write_records, ExperimentConfig,
};
use ea_diversity::Result;

#[derive(Debug, Parser)]
#[command(version, about = "Run (mu+1)-GA, NSGA-II or SMS-EMOA sweeps on Jump / OneJumpZeroJump")]
struct Args {
    /// key=value settings file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// jump | ojzj (defaults to the algorithm's benchmark)
    #[arg(long)]
    problem: Option<String>,
    /// ga | nsga2 | sms-emoa
    #[arg(long)]
    algo: Option<String>,
    /// comma-separated string lengths
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// population size, or "paper"
    #[arg(long)]
    mu: Option<String>,
    /// crossover probability
    #[arg(long)]
    pc: Option<String>,
    /// on | off | both (bare flag means on)
    #[arg(long, num_args = 0..=1, default_missing_value = "on")]
    diversity: Option<String>,
    /// fair | uniform | tournament (NSGA-II only)
    #[arg(long)]
    selection: Option<String>,
    #[arg(long)]
    runs: Option<String>,
    /// master seed
    #[arg(long)]
    seed: Option<String>,
    /// evaluation cap per run
    #[arg(long = "max-evals")]
    max_evals: Option<String>,
    /// CSV output path (stdout when absent)
    #[arg(long)]
    out: Option<String>,
    /// SVG chart output path
    #[arg(long)]
    plot: Option<String>,
    /// worker threads
    #[arg(long)]
    jobs: Option<String>,
}

impl Args {
    fn flags(&self) -> Vec<(&'static str, &String)> {
        [
            ("problem", &self.problem),
            ("algo", &self.algo),
            ("n", &self.n),
            ("k", &self.k),
            ("mu", &self.mu),
            ("pc", &self.pc),
            ("diversity", &self.diversity),
            ("selection", &self.selection),
            ("runs", &self.runs),
            ("seed", &self.seed),
            ("max-evals", &self.max_evals),
            ("out", &self.out),
            ("plot", &self.plot),
            ("jobs", &self.jobs),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
        .collect()
    }
}

fn build_config(args: &Args) -> Result<ExperimentConfig> {
    let mut settings = match &args.config {
        Some(path) => load_settings(path)?,
        None => Default::default(),
    };
    for (key, value) in args.flags() {
        settings.insert(key.to_string(), value.clone());
    }

    // The algorithm picks the default problem, so apply it first.
    let mut cfg = ExperimentConfig::default();
    if let Some(algo) = settings.get("algo").or_else(|| settings.get("algorithm")) {
        cfg = ExperimentConfig::for_algorithm(algo.parse()?);
    }
    cfg.apply(&settings)?;
    Ok(cfg)
}

fn run(args: &Args) -> Result<()> {
    let cfg = build_config(args)?;
    if cfg.problem == ea_diversity::harness::ProblemKind::Jump && cfg.n_values.iter().any(|&n| 4 * cfg.k > n) {
        eprintln!("note: k > n/4 for some n; runtime guarantees for the diversity GA assume k <= n/4");
    }
    let records = run_experiment(&cfg)?;
    match &cfg.out {
        Some(path) => write_records(&records, std::fs::File::create(path)?)?,
        None => write_records(&records, std::io::stdout().lock())?,
    }
    let summary = summarize(&records);
    if let Some(path) = &cfg.plot {
        emit_plot(&summary, path)?;
    }
    if cfg.out.is_some() {
        print!("{}", format_summary(&summary));
    } else {
        eprint!("{}", format_summary(&summary));
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
