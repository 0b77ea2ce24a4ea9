//! NSGA-II with optional solution-space diversity in the crowding distance.
//!
//! A generation selects `μ` parents, pairs them consecutively, produces two
//! children per pair (uniform crossover with probability `p_c`, else copies,
//! then bit-wise mutation), and keeps `μ` of the `2μ` parents and children:
//! whole non-dominated layers while they fit, then the largest-crowding
//! members of the first layer that does not fit. With the diversity flag set,
//! every run of equal objective values in a crowding sort is reordered so a
//! farthest-apart pair sits on the run's boundary.

mod crowding;
mod selection;
mod sorting;

pub use crowding::{crowding_distance, diversity_reorder, Crowding};
pub use selection::{select_parents, Score, Selection};
pub use sorting::{non_dominated_sort, FrontPartition};

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::individual::{BudgetExhausted, Individual};
use crate::observe::Observer;
use crate::problems::{ObjectiveVector, Problem, ProblemParams};
use crate::rng::RandomSource;
use crate::variation::{bitwise_mutation, uniform_crossover, VariationConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nsga2Config {
    pub mu: usize,
    pub variation: VariationConfig,
    pub diversity: bool,
    pub selection: Selection,
    pub max_evaluations: u64,
}

impl Nsga2Config {
    pub fn new(
        mu: usize,
        variation: VariationConfig,
        diversity: bool,
        selection: Selection,
        max_evaluations: u64,
    ) -> Result<Self> {
        if mu < 2 || !mu.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("NSGA-II needs an even population size >= 2, got {mu}")));
        }
        Ok(Self { mu, variation, diversity, selection, max_evaluations })
    }
}

/// `4(n - 2k + 3)`, rounded up to the next even number.
pub fn default_population_size(p: &ProblemParams) -> usize {
    let mu = 4 * p.front_size();
    mu + mu % 2
}

#[derive(Debug, Clone)]
pub struct Nsga2State {
    pub population: Vec<Individual>,
    /// Fitness evaluations so far, including the initial population.
    pub evaluations: u64,
    pub generations: u64,
}

impl Nsga2State {
    pub fn initialize(cfg: &Nsga2Config, problem: &Problem, rng: &mut RandomSource) -> Self {
        let n = problem.n();
        let population = (0..cfg.mu).map(|_| Individual::evaluate(BitString::random(n, rng), problem)).collect();
        Self::from_population(population)
    }

    pub fn from_population(population: Vec<Individual>) -> Self {
        let evaluations = population.len() as u64;
        Self { population, evaluations, generations: 0 }
    }
}

fn objectives_of(members: &[&Individual]) -> Vec<ObjectiveVector> {
    members.iter().map(|ind| ind.objectives).collect()
}

/// Rank and crowding of every member of `population`, crowding computed per
/// layer (with the diversity reorder when `reorder` is set).
pub fn score_population<O: Observer>(
    population: &[Individual],
    reorder: bool,
    rng: &mut RandomSource,
    observer: &mut O,
) -> Vec<Score> {
    let objectives: Vec<_> = population.iter().map(|ind| ind.objectives).collect();
    let partition = non_dominated_sort(&objectives);
    let mut scores = vec![Score { rank: 0, crowding: 0.0 }; population.len()];
    for (rank, front) in partition.fronts.iter().enumerate() {
        let members: Vec<_> = front.iter().map(|&i| &population[i]).collect();
        let crowding = crowding_distance(&members, reorder, rng);
        observer.on_crowding(&objectives_of(&members), &crowding);
        for (&i, &c) in front.iter().zip(&crowding.total) {
            scores[i] = Score { rank, crowding: c };
        }
    }
    scores
}

/// One generation. Reports exhaustion without touching `state` if its `μ`
/// evaluations would exceed the budget.
pub fn nsga2_generation<O: Observer>(
    state: &mut Nsga2State,
    cfg: &Nsga2Config,
    problem: &Problem,
    rng: &mut RandomSource,
    observer: &mut O,
) -> std::result::Result<(), BudgetExhausted> {
    let mu = cfg.mu;
    if state.evaluations + mu as u64 > cfg.max_evaluations {
        return Err(BudgetExhausted);
    }

    let scores = match cfg.selection {
        Selection::Tournament => Some(score_population(&state.population, cfg.diversity, rng, observer)),
        Selection::Fair | Selection::Uniform => None,
    };
    let parents = select_parents(mu, mu, cfg.selection, scores.as_deref(), rng);

    let mut offspring = Vec::with_capacity(mu);
    for pair in parents.chunks_exact(2) {
        let x = &state.population[pair[0]].genome;
        let y = &state.population[pair[1]].genome;
        let (a, b) = if cfg.variation.use_crossover(rng) {
            uniform_crossover(x, y, rng).expect("population members share a length")
        } else {
            (x.clone(), y.clone())
        };
        let a = bitwise_mutation(&a, rng);
        let b = bitwise_mutation(&b, rng);
        offspring.push(Individual::evaluate(a, problem));
        offspring.push(Individual::evaluate(b, problem));
    }
    let mut pool = std::mem::take(&mut state.population);
    pool.append(&mut offspring);
    state.evaluations += mu as u64;
    state.generations += 1;

    let survivors = survivor_indices(&pool, mu, cfg.diversity, rng, observer);
    let mut pool: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    state.population = survivors.into_iter().map(|i| pool[i].take().expect("survivor indices are distinct")).collect();
    Ok(())
}

/// Indices of the `mu` members of `pool` that survive.
pub fn survivor_indices<O: Observer>(
    pool: &[Individual],
    mu: usize,
    diversity: bool,
    rng: &mut RandomSource,
    observer: &mut O,
) -> Vec<usize> {
    let objectives: Vec<_> = pool.iter().map(|ind| ind.objectives).collect();
    let partition = non_dominated_sort(&objectives);
    let mut next = Vec::with_capacity(mu);
    for front in &partition.fronts {
        if next.len() + front.len() <= mu {
            next.extend_from_slice(front);
            if next.len() == mu {
                break;
            }
            continue;
        }
        // Critical layer. Shuffling first makes the positions of members with
        // equal values, and the order among equal crowding values, uniform.
        let mut critical = front.clone();
        rng.shuffle(&mut critical);
        let members: Vec<_> = critical.iter().map(|&i| &pool[i]).collect();
        let crowding = crowding_distance(&members, diversity, rng);
        observer.on_crowding(&objectives_of(&members), &crowding);

        let mut by_crowding: Vec<usize> = (0..critical.len()).collect();
        by_crowding.sort_by(|&a, &b| crowding.total[b].total_cmp(&crowding.total[a]));
        let room = mu - next.len();
        next.extend(by_crowding[..room].iter().map(|&p| critical[p]));
        break;
    }
    next
}
