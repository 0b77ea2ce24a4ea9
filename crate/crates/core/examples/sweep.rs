//! Runtime sweep over n for one algorithm, written as CSV and an SVG chart.
//!
//! ```text
//! cargo run --release --example sweep -- [ga|nsga2|sms-emoa] [runs] [out-dir]
//! ```

use std::fs::File;
use std::path::PathBuf;

use ea_diversity::harness::{emit_plot, format_summary, run_experiment, summarize, write_records, ExperimentConfig};

fn main() -> ea_diversity::Result<()> {
    let mut args = std::env::args().skip(1);
    let algorithm = args.next().unwrap_or_else(|| "ga".into()).parse()?;
    let runs = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "target/sweep".into()));
    std::fs::create_dir_all(&dir)?;

    let mut cfg = ExperimentConfig::for_algorithm(algorithm);
    cfg.n_values = vec![10, 12, 14, 16, 18, 20];
    cfg.runs = runs;
    cfg.seed = 2024;
    cfg.jobs = std::thread::available_parallelism().map_or(1, |n| n.get());

    let records = run_experiment(&cfg)?;
    let csv = dir.join(format!("{algorithm}.csv"));
    write_records(&records, File::create(&csv)?)?;
    let rows = summarize(&records);
    let svg = dir.join(format!("{algorithm}.svg"));
    emit_plot(&rows, &svg)?;
    print!("{}", format_summary(&rows));
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok(())
}
