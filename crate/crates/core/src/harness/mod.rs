//! Experiment harness: parameter sweeps, seeded replications, statistics,
//! CSV records and SVG charts.

mod config;
mod plot;
mod runner;
mod stats;

pub use config::{
    load_settings, paper_defaults, parse_settings, AlgorithmKind, Cell, DiversityMode, ExperimentConfig,
    PopulationSize, ProblemKind, DEFAULT_MAX_EVALUATIONS,
};
pub use plot::{emit_plot, render_svg};
pub use runner::{
    read_records, record_order, records_to_csv, run_experiment, run_replication, write_records, RunRecord,
};
pub use stats::{format_summary, mann_whitney_less, mean, median, std_dev, summarize, SummaryKey, SummaryRow};
