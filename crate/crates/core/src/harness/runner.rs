use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::config::{AlgorithmKind, Cell, ExperimentConfig, ProblemKind};
use crate::error::{Error, Result};
use crate::ga::{ga_step, GaConfig, GaState};
use crate::individual::Individual;
use crate::nsga2::{nsga2_generation, Nsga2Config, Nsga2State, Selection};
use crate::observe::Observer;
use crate::problems::GoalTracker;
use crate::rng::{derive_seed, RandomSource};
use crate::sms::{sms_step, SmsConfig, SmsState};
use crate::variation::VariationConfig;

/// Outcome of one replication. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algo: AlgorithmKind,
    pub problem: ProblemKind,
    pub n: usize,
    pub k: usize,
    pub mu: usize,
    pub pc: f64,
    pub diversity: bool,
    #[serde(serialize_with = "write_selection", deserialize_with = "read_selection")]
    pub selection: Option<Selection>,
    pub run: u64,
    pub seed: u64,
    /// Evaluations when the goal was reached, or when the budget ran out.
    pub evaluations: u64,
    pub success: bool,
}

fn write_selection<S: Serializer>(value: &Option<Selection>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(value.map_or("none", |sel| sel.as_str()))
}

fn read_selection<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Selection>, D::Error> {
    let s = String::deserialize(d)?;
    if s == "none" {
        Ok(None)
    } else {
        s.parse().map(Some).map_err(serde::de::Error::custom)
    }
}

fn reached(goal: &mut GoalTracker, population: &[Individual]) -> bool {
    goal.reached(population.iter().map(|ind| ind.objectives))
}

/// Runs replication `run` of `cell` to success or budget exhaustion.
pub fn run_replication<O: Observer>(cell: &Cell, run: u64, observer: &mut O) -> Result<RunRecord> {
    let seed = derive_seed(cell.master_seed, run);
    let mut rng = RandomSource::new(seed);
    let variation = VariationConfig::new(cell.crossover_prob)?;
    let problem = &cell.problem;
    let mut goal = GoalTracker::new(problem);

    let (evaluations, success) = match cell.algorithm {
        AlgorithmKind::Ga => {
            let cfg = GaConfig::new(cell.mu, variation, cell.diversity, cell.max_evaluations)?;
            let mut state = GaState::initialize(&cfg, problem, &mut rng);
            loop {
                if reached(&mut goal, &state.population) {
                    break (state.evaluations, true);
                }
                if ga_step(&mut state, &cfg, problem, &mut rng).is_err() {
                    break (state.evaluations, false);
                }
            }
        }
        AlgorithmKind::Nsga2 => {
            let selection = cell.selection.ok_or_else(|| Error::Config("NSGA-II needs a selection scheme".into()))?;
            let cfg = Nsga2Config::new(cell.mu, variation, cell.diversity, selection, cell.max_evaluations)?;
            let mut state = Nsga2State::initialize(&cfg, problem, &mut rng);
            loop {
                if reached(&mut goal, &state.population) {
                    break (state.evaluations, true);
                }
                if nsga2_generation(&mut state, &cfg, problem, &mut rng, observer).is_err() {
                    break (state.evaluations, false);
                }
            }
        }
        AlgorithmKind::SmsEmoa => {
            let cfg = SmsConfig::new(cell.mu, variation, cell.diversity, cell.max_evaluations)?;
            cfg.validate_for(problem)?;
            let mut state = SmsState::initialize(&cfg, problem, &mut rng);
            loop {
                if goal.reached_descending(state.distinct_objectives()) {
                    break (state.evaluations, true);
                }
                if sms_step(&mut state, &cfg, problem, &mut rng, observer).is_err() {
                    break (state.evaluations, false);
                }
            }
        }
    };

    Ok(RunRecord {
        algo: cell.algorithm,
        problem: cell.problem_kind,
        n: problem.n(),
        k: problem.params().k,
        mu: cell.mu,
        pc: cell.crossover_prob,
        diversity: cell.diversity,
        selection: cell.selection,
        run,
        seed,
        evaluations,
        success,
    })
}

/// Sort order of emitted records.
pub fn record_order(r: &RunRecord) -> (usize, bool, u64) {
    (r.n, r.diversity, r.run)
}

/// Every replication of every cell, sorted by `(n, diversity, run)`.
///
/// Replications run on up to `cfg.jobs` threads; each derives its own seed
/// from the master seed and its run index, so the records do not depend on
/// scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    let cells = cfg.cells()?;
    let tasks: Vec<(&Cell, u64)> = cells.iter().flat_map(|cell| (0..cfg.runs).map(move |run| (cell, run))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let mut records = pool.install(|| {
        tasks.par_iter().map(|&(cell, run)| run_replication(cell, run, &mut ())).collect::<Result<Vec<_>>>()
    })?;
    records.sort_by_key(record_order);
    Ok(records)
}

pub fn write_records<W: Write>(records: &[RunRecord], writer: W) -> Result<()> {
    let mut csv = csv::WriterBuilder::new().has_headers(true).from_writer(writer);
    for r in records {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn records_to_csv(records: &[RunRecord]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_records(records, &mut buf)?;
    Ok(buf)
}

pub fn read_records<R: Read>(reader: R) -> Result<Vec<RunRecord>> {
    let mut csv = csv::Reader::from_reader(reader);
    csv.deserialize().map(|r| r.map_err(Error::from)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::PopulationSize;

    fn small(algorithm: AlgorithmKind) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::for_algorithm(algorithm);
        cfg.n_values = vec![10];
        cfg.k = 2;
        cfg.runs = 3;
        cfg.seed = 11;
        cfg.max_evaluations = 200_000;
        cfg
    }

    #[test]
    fn header_matches_schema() {
        let cells = small(AlgorithmKind::Ga).cells().unwrap();
        let record = run_replication(&cells[0], 0, &mut ()).unwrap();
        let csv = String::from_utf8(records_to_csv(&[record]).unwrap()).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "algo,problem,n,k,mu,pc,diversity,selection,run,seed,evaluations,success");
        let row: Vec<_> = lines.next().unwrap().split(',').collect();
        assert_eq!(&row[..8], ["ga", "jump", "10", "2", "2", "0.5", "false", "none"]);
    }

    #[test]
    fn every_algorithm_solves_small_instances() {
        for algo in [AlgorithmKind::Ga, AlgorithmKind::Nsga2, AlgorithmKind::SmsEmoa] {
            let records = run_experiment(&small(algo)).unwrap();
            assert_eq!(records.len(), 6);
            for r in &records {
                assert!(r.success, "{r:?}");
                assert!(r.evaluations <= 200_000);
                assert!(r.evaluations >= r.mu as u64);
            }
        }
    }

    #[test]
    fn cap_hits_are_reported() {
        let mut cfg = small(AlgorithmKind::SmsEmoa);
        cfg.max_evaluations = 20;
        cfg.mu = PopulationSize::Explicit(10);
        let records = run_experiment(&cfg).unwrap();
        for r in records {
            assert!(!r.success);
            assert_eq!(r.evaluations, 20);
        }
    }

    #[test]
    fn nsga2_cap_never_overshoots() {
        let mut cfg = small(AlgorithmKind::Nsga2);
        cfg.max_evaluations = 50;
        cfg.mu = PopulationSize::Explicit(12);
        for r in run_experiment(&cfg).unwrap() {
            assert!(!r.success);
            assert_eq!(r.evaluations, 48);
        }
    }

    #[test]
    fn csv_round_trip() {
        let mut cfg = small(AlgorithmKind::Nsga2);
        cfg.selection = Selection::Tournament;
        let records = run_experiment(&cfg).unwrap();
        let csv = records_to_csv(&records).unwrap();
        assert_eq!(read_records(csv.as_slice()).unwrap(), records);
    }
}
