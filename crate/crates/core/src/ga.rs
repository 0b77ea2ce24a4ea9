//! The steady-state (μ+1) genetic algorithm.
//!
//! Each iteration produces one offspring (uniform parent, crossover with a
//! second uniform parent with probability `p_c` keeping the first child, then
//! bit-wise mutation) and removes one member of the enlarged pool of `μ+1`.
//! The removal rule is either the classic "drop a worst solution" or the
//! diversity-aware variant that keeps the farthest pair among the worst.

use crate::bitstring::{max_hamming_pair, BitString};
use crate::error::{Error, Result};
use crate::individual::{BudgetExhausted, Individual};
use crate::problems::Problem;
use crate::rng::RandomSource;
use crate::variation::{steady_state_offspring, VariationConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaConfig {
    pub mu: usize,
    pub variation: VariationConfig,
    pub diversity: bool,
    pub max_evaluations: u64,
}

impl GaConfig {
    pub fn new(mu: usize, variation: VariationConfig, diversity: bool, max_evaluations: u64) -> Result<Self> {
        if mu < 2 {
            return Err(Error::InvalidParams(format!("(mu+1)-GA needs mu >= 2, got {mu}")));
        }
        Ok(Self { mu, variation, diversity, max_evaluations })
    }
}

#[derive(Debug, Clone)]
pub struct GaState {
    pub population: Vec<Individual>,
    /// Fitness evaluations so far, including the initial population.
    pub evaluations: u64,
    pub steps: u64,
}

impl GaState {
    /// `μ` uniform random strings, drawn with replacement.
    pub fn initialize(cfg: &GaConfig, problem: &Problem, rng: &mut RandomSource) -> Self {
        let n = problem.n();
        let population: Vec<_> =
            (0..cfg.mu).map(|_| Individual::evaluate(BitString::random(n, rng), problem)).collect();
        Self::from_population(population)
    }

    /// State over an explicit population, counting one evaluation per member.
    pub fn from_population(population: Vec<Individual>) -> Self {
        let evaluations = population.len() as u64;
        Self { population, evaluations, steps: 0 }
    }
}

/// One iteration. Leaves `state` unchanged and reports exhaustion if another
/// evaluation would exceed `cfg.max_evaluations`.
pub fn ga_step(
    state: &mut GaState,
    cfg: &GaConfig,
    problem: &Problem,
    rng: &mut RandomSource,
) -> std::result::Result<(), BudgetExhausted> {
    if state.evaluations >= cfg.max_evaluations {
        return Err(BudgetExhausted);
    }
    let pop = &state.population;
    let child = steady_state_offspring(|i| &pop[i].genome, pop.len(), &cfg.variation, rng);
    state.population.push(Individual::evaluate(child, problem));
    state.evaluations += 1;
    state.steps += 1;

    let doomed = if cfg.diversity {
        remove_worst_diversity(&state.population, rng)
    } else {
        remove_worst_original(&state.population, rng)
    };
    state.population.swap_remove(doomed);
    Ok(())
}

fn worst_members(pool: &[Individual]) -> Vec<usize> {
    let worst = pool.iter().map(|ind| ind.objectives.get(0)).min().expect("non-empty pool");
    pool.iter().enumerate().filter(|(_, ind)| ind.objectives.get(0) == worst).map(|(i, _)| i).collect()
}

/// Index of a minimum-fitness member, ties broken uniformly.
pub fn remove_worst_original(pool: &[Individual], rng: &mut RandomSource) -> usize {
    let worst = worst_members(pool);
    worst[rng.below(worst.len())]
}

/// Index to remove under the diversity rule.
///
/// Among the minimum-fitness members `S`: if `|S| <= 2` a uniform member of
/// `S` goes; otherwise the maximum-Hamming pair of `S` is protected and a
/// uniform member of the rest goes.
pub fn remove_worst_diversity(pool: &[Individual], rng: &mut RandomSource) -> usize {
    let worst = worst_members(pool);
    if worst.len() <= 2 {
        return worst[rng.below(worst.len())];
    }
    let genomes: Vec<_> = worst.iter().map(|&i| &pool[i].genome).collect();
    worst[outside_farthest_pair(&genomes, rng)]
}

/// Uniformly chosen slot of `genomes` outside a farthest-apart pair.
pub(crate) fn outside_farthest_pair(genomes: &[&BitString], rng: &mut RandomSource) -> usize {
    debug_assert!(genomes.len() >= 3);
    let pair = max_hamming_pair(genomes, rng).expect("group of at least three");
    let pick = rng.below(genomes.len() - 2);
    (0..genomes.len())
        .filter(|&p| p != pair.first && p != pair.second)
        .nth(pick)
        .expect("pick within remaining members")
}
