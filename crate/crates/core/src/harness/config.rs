use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nsga2::{self, Selection};
use crate::problems::{Problem, ProblemParams};
use crate::sms;

pub const DEFAULT_MAX_EVALUATIONS: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProblemKind {
    #[serde(rename = "jump")]
    Jump,
    #[serde(rename = "ojzj")]
    OneJumpZeroJump,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Jump => "jump",
            ProblemKind::OneJumpZeroJump => "ojzj",
        }
    }

    pub fn instantiate(&self, n: usize, k: usize) -> Result<Problem> {
        match self {
            ProblemKind::Jump => Problem::jump(n, k),
            ProblemKind::OneJumpZeroJump => Problem::ojzj(n, k),
        }
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jump" => Ok(ProblemKind::Jump),
            "ojzj" | "onejumpzerojump" => Ok(ProblemKind::OneJumpZeroJump),
            other => Err(Error::Config(format!("unknown problem {other:?}"))),
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgorithmKind {
    #[serde(rename = "ga")]
    Ga,
    #[serde(rename = "nsga2")]
    Nsga2,
    #[serde(rename = "sms-emoa")]
    SmsEmoa,
}

impl AlgorithmKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlgorithmKind::Ga => "ga",
            AlgorithmKind::Nsga2 => "nsga2",
            AlgorithmKind::SmsEmoa => "sms-emoa",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            AlgorithmKind::Ga => "(μ+1)-GA",
            AlgorithmKind::Nsga2 => "NSGA-II",
            AlgorithmKind::SmsEmoa => "SMS-EMOA",
        }
    }

    /// Problem each algorithm is benchmarked on.
    pub fn natural_problem(&self) -> ProblemKind {
        match self {
            AlgorithmKind::Ga => ProblemKind::Jump,
            AlgorithmKind::Nsga2 | AlgorithmKind::SmsEmoa => ProblemKind::OneJumpZeroJump,
        }
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ga" | "mu+1-ga" => Ok(AlgorithmKind::Ga),
            "nsga2" | "nsga-ii" => Ok(AlgorithmKind::Nsga2),
            "sms-emoa" | "sms" => Ok(AlgorithmKind::SmsEmoa),
            other => Err(Error::Config(format!("unknown algorithm {other:?}"))),
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PopulationSize {
    Explicit(usize),
    /// 2 for the GA, `4(n-2k+3)` for NSGA-II, `2(n-2k+3)` for SMS-EMOA.
    Paper,
}

impl FromStr for PopulationSize {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "paper" {
            return Ok(PopulationSize::Paper);
        }
        s.parse()
            .map(PopulationSize::Explicit)
            .map_err(|_| Error::Config(format!("population size must be an integer or \"paper\", got {s:?}")))
    }
}

/// Which removal/crowding variants to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiversityMode {
    Off,
    On,
    Both,
}

impl DiversityMode {
    pub fn settings(&self) -> &'static [bool] {
        match self {
            DiversityMode::Off => &[false],
            DiversityMode::On => &[true],
            DiversityMode::Both => &[false, true],
        }
    }
}

impl FromStr for DiversityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "on" | "true" | "1" | "yes" => Ok(DiversityMode::On),
            "off" | "false" | "0" | "no" => Ok(DiversityMode::Off),
            "both" => Ok(DiversityMode::Both),
            other => Err(Error::Config(format!("diversity must be on, off or both, got {other:?}"))),
        }
    }
}

/// `μ` used in the published experiments.
pub fn paper_defaults(_problem: ProblemKind, algorithm: AlgorithmKind, p: &ProblemParams) -> usize {
    match algorithm {
        AlgorithmKind::Ga => 2,
        AlgorithmKind::Nsga2 => nsga2::default_population_size(p),
        AlgorithmKind::SmsEmoa => sms::default_population_size(p),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: ProblemKind,
    pub algorithm: AlgorithmKind,
    pub n_values: Vec<usize>,
    pub k: usize,
    pub mu: PopulationSize,
    pub crossover_prob: f64,
    pub diversity: DiversityMode,
    /// Parent selection, used by NSGA-II only.
    pub selection: Selection,
    pub runs: u64,
    pub seed: u64,
    pub max_evaluations: u64,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub jobs: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problem: ProblemKind::Jump,
            algorithm: AlgorithmKind::Ga,
            n_values: vec![10, 15, 20, 25, 30],
            k: 4,
            mu: PopulationSize::Paper,
            crossover_prob: 0.5,
            diversity: DiversityMode::Both,
            selection: Selection::Uniform,
            runs: 1000,
            seed: 0,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            out: None,
            plot: None,
            jobs: 1,
        }
    }
}

/// One `(n, diversity)` combination of an experiment, fully resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub problem_kind: ProblemKind,
    pub algorithm: AlgorithmKind,
    pub problem: Problem,
    pub mu: usize,
    pub crossover_prob: f64,
    pub diversity: bool,
    pub selection: Option<Selection>,
    pub master_seed: u64,
    pub max_evaluations: u64,
}

impl ExperimentConfig {
    /// Config for `algorithm` on its benchmark with every other field default.
    pub fn for_algorithm(algorithm: AlgorithmKind) -> Self {
        Self { algorithm, problem: algorithm.natural_problem(), ..Self::default() }
    }

    /// Checks every parameter combination and resolves the cells, ordered by
    /// `n` then diversity (off before on).
    pub fn cells(&self) -> Result<Vec<Cell>> {
        if self.n_values.is_empty() {
            return Err(Error::Config("at least one n value is required".into()));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return Err(Error::Config(format!(
                "crossover probability must lie in [0, 1], got {}",
                self.crossover_prob
            )));
        }
        match (self.algorithm, self.problem) {
            (AlgorithmKind::Ga, ProblemKind::Jump)
            | (AlgorithmKind::Nsga2, _)
            | (AlgorithmKind::SmsEmoa, ProblemKind::OneJumpZeroJump) => {}
            (algo, problem) => {
                return Err(Error::Config(format!("{algo} cannot run on {problem}")));
            }
        }

        let mut cells = Vec::new();
        for &n in &self.n_values {
            let problem = self.problem.instantiate(n, self.k)?;
            let mu = match self.mu {
                PopulationSize::Explicit(mu) => mu,
                PopulationSize::Paper => paper_defaults(self.problem, self.algorithm, problem.params()),
            };
            let min_mu = 2;
            if mu < min_mu || (self.algorithm == AlgorithmKind::Nsga2 && mu % 2 != 0) {
                return Err(Error::Config(format!("invalid population size {mu} for {}", self.algorithm)));
            }
            if (mu as u64) > self.max_evaluations {
                return Err(Error::Config(format!(
                    "evaluation cap {} is below the initial population size {mu}",
                    self.max_evaluations
                )));
            }
            for &diversity in self.diversity.settings() {
                cells.push(Cell {
                    problem_kind: self.problem,
                    algorithm: self.algorithm,
                    problem,
                    mu,
                    crossover_prob: self.crossover_prob,
                    diversity,
                    selection: (self.algorithm == AlgorithmKind::Nsga2).then_some(self.selection),
                    master_seed: self.seed,
                    max_evaluations: self.max_evaluations,
                });
            }
        }
        Ok(cells)
    }

    /// Applies `key=value` settings. Keys use the long flag names without the
    /// leading dashes.
    pub fn apply(&mut self, settings: &BTreeMap<String, String>) -> Result<()> {
        for (key, value) in settings {
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value.parse().map_err(|_| Error::Config(format!("invalid value {value:?} for {key}")))
        }
        match key {
            "problem" => self.problem = value.parse()?,
            "algo" | "algorithm" => self.algorithm = value.parse()?,
            "n" => {
                self.n_values = value.split(',').map(|v| num(key, v.trim())).collect::<Result<_>>()?;
            }
            "k" => self.k = num(key, value)?,
            "mu" => self.mu = value.parse()?,
            "pc" => self.crossover_prob = num(key, value)?,
            "diversity" => self.diversity = value.parse()?,
            "selection" => self.selection = value.parse()?,
            "runs" => self.runs = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "max-evals" => self.max_evaluations = num(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "plot" => self.plot = Some(PathBuf::from(value)),
            "jobs" => self.jobs = num(key, value)?,
            other => return Err(Error::Config(format!("unknown setting {other:?}"))),
        }
        Ok(())
    }
}

/// Parses `key=value` lines. Blank lines and `#` comments are skipped.
pub fn parse_settings(text: &str) -> Result<BTreeMap<String, String>> {
    let mut settings = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
        settings.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(settings)
}

pub fn load_settings(path: &Path) -> Result<BTreeMap<String, String>> {
    parse_settings(&std::fs::read_to_string(path)?)
}
