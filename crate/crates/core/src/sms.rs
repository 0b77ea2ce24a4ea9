//! Steady-state SMS-EMOA with exact 2-D hypervolume.
//!
//! Reproduction is the same as in the (μ+1)-GA. Removal works on the last
//! non-dominated layer `R_v` of the `μ+1` pool: the original rule drops a
//! member with the smallest hypervolume contribution, the diversity rule first
//! looks at the objective vector shared by the most members of `R_v` and, when
//! more than two members share it, drops one of them other than a
//! farthest-apart pair.

use std::cmp::Reverse;

use smallvec::SmallVec;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::ga::outside_farthest_pair;
use crate::individual::{BudgetExhausted, Individual};
use crate::observe::Observer;
use crate::problems::{ObjectiveVector, Problem, ProblemParams};
use crate::rng::RandomSource;
use crate::variation::{steady_state_offspring, VariationConfig};

pub type ReferencePoint = [i64; 2];

fn check_point(p: &ObjectiveVector, r: &ReferencePoint) -> Result<()> {
    if p.arity() != 2 {
        return Err(Error::ArityMismatch { left: p.arity(), right: 2 });
    }
    if p.get(0) < r[0] || p.get(1) < r[1] {
        return Err(Error::BelowReference { point: p.as_slice().to_vec(), reference: r.to_vec() });
    }
    Ok(())
}

/// Area of the union of the boxes `[r, p]` over `points`.
///
/// Points are swept in decreasing order of the first objective; each point
/// that raises the running maximum of the second objective adds the strip
/// between the old and new maximum.
pub fn hypervolume_2d(points: &[ObjectiveVector], r: &ReferencePoint) -> Result<u64> {
    for p in points {
        check_point(p, r)?;
    }
    let mut sorted: Vec<_> = points.iter().map(|p| (p.get(0), p.get(1))).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut top = r[1];
    let mut volume = 0u64;
    for (f1, f2) in sorted {
        if f2 > top {
            volume += ((f1 - r[0]) * (f2 - top)) as u64;
            top = f2;
        }
    }
    Ok(volume)
}

/// `HV(front) - HV(front \ {front[index]})`.
pub fn delta_contribution(index: usize, front: &[ObjectiveVector], r: &ReferencePoint) -> Result<u64> {
    let whole = hypervolume_2d(front, r)?;
    let rest: Vec<_> = front.iter().enumerate().filter(|&(i, _)| i != index).map(|(_, p)| *p).collect();
    Ok(whole - hypervolume_2d(&rest, r)?)
}

/// Contribution of every member of `front`.
///
/// For a mutually non-dominating set the exclusive region of a point with a
/// unique vector is the rectangle between it and its two neighbours along the
/// front, and duplicated vectors contribute nothing. Other sets fall back to
/// [`delta_contribution`] per member.
pub fn delta_contributions(front: &[ObjectiveVector], r: &ReferencePoint) -> Result<Vec<u64>> {
    for p in front {
        check_point(p, r)?;
    }
    let mut order: Vec<usize> = (0..front.len()).collect();
    order.sort_by_key(|&i| (front[i].get(0), std::cmp::Reverse(front[i].get(1))));

    // Distinct vectors in ascending first objective, with their multiplicity.
    let mut distinct: Vec<(ObjectiveVector, usize)> = Vec::new();
    for &i in &order {
        match distinct.last_mut() {
            Some((v, count)) if *v == front[i] => *count += 1,
            _ => distinct.push((front[i], 1)),
        }
    }
    let staircase = distinct.windows(2).all(|w| w[0].0.get(0) < w[1].0.get(0) && w[0].0.get(1) > w[1].0.get(1));
    if !staircase {
        return (0..front.len()).map(|i| delta_contribution(i, front, r)).collect();
    }

    let mut deltas = vec![0; front.len()];
    let mut start = 0;
    for (t, &(v, count)) in distinct.iter().enumerate() {
        if count == 1 {
            let left = if t == 0 { r[0] } else { distinct[t - 1].0.get(0) };
            let below = if t + 1 == distinct.len() { r[1] } else { distinct[t + 1].0.get(1) };
            deltas[order[start]] = ((v.get(0) - left) * (v.get(1) - below)) as u64;
        }
        start += count;
    }
    Ok(deltas)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmsConfig {
    pub mu: usize,
    pub reference: ReferencePoint,
    pub variation: VariationConfig,
    pub diversity: bool,
    pub max_evaluations: u64,
}

impl SmsConfig {
    /// Reference point `(0, 0)`, below every OneJumpZeroJump value (the
    /// smallest is 1).
    pub fn new(mu: usize, variation: VariationConfig, diversity: bool, max_evaluations: u64) -> Result<Self> {
        if mu < 2 {
            return Err(Error::InvalidParams(format!("SMS-EMOA needs mu >= 2, got {mu}")));
        }
        Ok(Self { mu, reference: [0, 0], variation, diversity, max_evaluations })
    }

    pub fn with_reference(mut self, reference: ReferencePoint) -> Self {
        self.reference = reference;
        self
    }

    /// Checks `r_i <= min f_i` over the whole search space.
    pub fn validate_for(&self, problem: &Problem) -> Result<()> {
        let Problem::OneJumpZeroJump(_) = problem else {
            return Err(Error::InvalidParams("SMS-EMOA runs on bi-objective problems".into()));
        };
        if self.reference.iter().any(|&r| r > 1) {
            return Err(Error::InvalidParams(format!(
                "reference point {:?} must not exceed the minimum objective value 1",
                self.reference
            )));
        }
        Ok(())
    }
}

/// `2(n - 2k + 3)`.
pub fn default_population_size(p: &ProblemParams) -> usize {
    2 * p.front_size()
}

/// Population and counters of a run.
///
/// The population is kept in decreasing order of objective vector, together
/// with its run-length encoding (distinct vectors and their multiplicities).
/// While the population is a single non-dominated layer most removals are
/// decided on the runs alone. Parents are drawn by uniform index, so the
/// order does not affect the process.
#[derive(Debug, Clone)]
pub struct SmsState {
    population: Vec<Individual>,
    run_vectors: Vec<ObjectiveVector>,
    run_counts: Vec<usize>,
    single_layer: bool,
    /// Fitness evaluations so far, including the initial population.
    pub evaluations: u64,
    pub steps: u64,
    scratch: LastLayer,
    sorted: Vec<ObjectiveVector>,
    run_deltas: Vec<u64>,
}

impl SmsState {
    pub fn initialize(cfg: &SmsConfig, problem: &Problem, rng: &mut RandomSource) -> Self {
        let n = problem.n();
        let population = (0..cfg.mu).map(|_| Individual::evaluate(BitString::random(n, rng), problem)).collect();
        Self::from_population(population)
    }

    /// Counts every member as one evaluation.
    pub fn from_population(mut population: Vec<Individual>) -> Self {
        population.sort_by_key(|ind| Reverse(ind.objectives));
        let evaluations = population.len() as u64;
        let mut state = Self {
            population,
            run_vectors: Vec::new(),
            run_counts: Vec::new(),
            single_layer: false,
            evaluations,
            steps: 0,
            scratch: LastLayer::default(),
            sorted: Vec::new(),
            run_deltas: Vec::new(),
        };
        state.rebuild_runs();
        state
    }

    /// Members in decreasing order of objective vector.
    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    /// Distinct objective vectors of the population, in decreasing order.
    pub fn distinct_objectives(&self) -> &[ObjectiveVector] {
        &self.run_vectors
    }

    pub fn into_population(self) -> Vec<Individual> {
        self.population
    }

    fn rebuild_runs(&mut self) {
        self.run_vectors.clear();
        self.run_counts.clear();
        for ind in &self.population {
            if self.run_vectors.last() == Some(&ind.objectives) {
                *self.run_counts.last_mut().expect("parallel runs") += 1;
            } else {
                self.run_vectors.push(ind.objectives);
                self.run_counts.push(1);
            }
        }
        self.single_layer = self.run_vectors.windows(2).all(|w| !dominates_later(&w[0], &w[1]));
    }

    /// Inserts `child` at its place in the order; returns its position and
    /// run index.
    fn insert(&mut self, child: Individual) -> (usize, usize) {
        let v = child.objectives;
        let run = self.run_vectors.partition_point(|u| *u > v);
        if self.run_vectors.get(run) == Some(&v) {
            self.run_counts[run] += 1;
        } else {
            self.run_vectors.insert(run, v);
            self.run_counts.insert(run, 1);
        }
        let at = self.run_counts[..=run].iter().sum::<usize>() - 1;
        self.population.insert(at, child);
        (at, run)
    }

    /// Whether the population plus the member just inserted in run `run`
    /// is one layer, assuming the population alone was.
    fn stays_single_layer(&self, run: usize) -> bool {
        if self.run_counts[run] > 1 {
            return true;
        }
        let v = &self.run_vectors[run];
        let before = run.checked_sub(1).map(|r| &self.run_vectors[r]);
        let after = self.run_vectors.get(run + 1);
        before.is_none_or(|u| !dominates_later(u, v)) && after.is_none_or(|w| !dominates_later(v, w))
    }

    fn remove(&mut self, position: usize, run: usize) {
        self.population.remove(position);
        self.run_counts[run] -= 1;
        if self.run_counts[run] == 0 {
            self.run_vectors.remove(run);
            self.run_counts.remove(run);
        }
    }
}

/// Removal from a pool that forms one layer, decided on its runs. Draws the
/// same random numbers and picks the same position as [`LastLayer`].
struct SingleLayerRemoval<'a, O> {
    state: &'a mut SmsState,
    r: &'a ReferencePoint,
    observer: &'a mut O,
}

impl<O: Observer> SingleLayerRemoval<'_, O> {
    /// Contribution of each member of run `t`: zero for a shared vector, the
    /// rectangle up to the neighbouring vectors for a vector of its own.
    fn run_delta(&self, t: usize) -> u64 {
        let (vectors, counts, r) = (&self.state.run_vectors, &self.state.run_counts, self.r);
        if counts[t] > 1 {
            return 0;
        }
        let v = vectors[t];
        let left = vectors.get(t + 1).map_or(r[0], |h| h.get(0));
        let below = if t == 0 { r[1] } else { vectors[t - 1].get(1) };
        ((v.get(0) - left) * (v.get(1) - below)) as u64
    }

    /// `(position, run)` of the member to remove by smallest contribution.
    fn min_delta(&mut self, rng: &mut RandomSource) -> (usize, usize) {
        let runs = self.state.run_vectors.len();
        let mut run_deltas = std::mem::take(&mut self.state.run_deltas);
        run_deltas.clear();
        run_deltas.extend((0..runs).map(|t| self.run_delta(t)));
        let counts = &self.state.run_counts;
        let least = *run_deltas.iter().min().expect("non-empty pool");
        let ties: usize = (0..runs).filter(|&t| run_deltas[t] == least).map(|t| counts[t]).sum();
        if self.observer.enabled() {
            self.observer.on_sms_removal_runs(&self.state.run_vectors, counts, Some(&run_deltas));
        }

        let counts = &self.state.run_counts;
        let mut pick = rng.below(ties);
        let mut start = 0;
        let mut chosen = None;
        for t in 0..runs {
            if run_deltas[t] == least {
                if pick < counts[t] {
                    chosen = Some((start + pick, t));
                    break;
                }
                pick -= counts[t];
            }
            start += counts[t];
        }
        self.state.run_deltas = run_deltas;
        chosen.expect("pick within ties")
    }

    fn diversity(&mut self, rng: &mut RandomSource) -> (usize, usize) {
        let counts = &self.state.run_counts;
        let largest = *counts.iter().max().expect("non-empty pool");
        if largest <= 2 {
            return self.min_delta(rng);
        }
        if self.observer.enabled() {
            self.observer.on_sms_removal_runs(&self.state.run_vectors, counts, None);
        }
        let counts = &self.state.run_counts;
        let ties = counts.iter().filter(|&&c| c == largest).count();
        let pick = rng.below(ties);
        let run = (0..counts.len()).filter(|&t| counts[t] == largest).nth(pick).expect("pick within ties");
        let start: usize = counts[..run].iter().sum();
        let members: SmallVec<[&BitString; 16]> =
            self.state.population[start..start + largest].iter().map(|ind| &ind.genome).collect();
        (start + outside_farthest_pair(&members, rng), run)
    }
}

/// Every earlier entry of a decreasing sequence has a first objective at
/// least as large, so `u` before `v` dominates it exactly when `u` is at
/// least as good in the second objective and not equal.
#[inline]
fn dominates_later(u: &ObjectiveVector, v: &ObjectiveVector) -> bool {
    u.get(1) >= v.get(1) && u != v
}

/// The last non-dominated layer of a pool given in decreasing objective
/// order, with reusable buffers.
///
/// Within one layer distinct vectors form a staircase: the first objective
/// strictly decreases while the second strictly increases.
#[derive(Debug, Clone, Default)]
struct LastLayer {
    layers: usize,
    layer: Vec<u32>,
    latest: Vec<ObjectiveVector>,
    /// Positions of the last layer in the pool; unused when the whole pool is
    /// one layer.
    positions: Vec<usize>,
    vectors: Vec<ObjectiveVector>,
    /// Runs of equal vectors as `[start, end)` slots of the layer.
    groups: Vec<(usize, usize)>,
    deltas: Vec<u64>,
}

impl LastLayer {
    fn fill(&mut self, sorted: &[ObjectiveVector]) {
        debug_assert!(sorted.windows(2).all(|w| w[0] >= w[1]));
        self.groups.clear();
        if !self.group_single_layer(sorted) {
            self.sweep_layers(sorted);
        }
    }

    /// Groups the pool as one layer if no entry dominates its successor
    /// (then the second objective increases along the pool and nothing
    /// dominates anything). Returns `false` otherwise.
    fn group_single_layer(&mut self, sorted: &[ObjectiveVector]) -> bool {
        let mut start = 0;
        for t in 1..sorted.len() {
            let (u, v) = (&sorted[t - 1], &sorted[t]);
            if u != v {
                if dominates_later(u, v) {
                    return false;
                }
                self.groups.push((start, t));
                start = t;
            }
        }
        self.groups.push((start, sorted.len()));
        self.layers = 1;
        true
    }

    /// Same sweep as the full non-dominated sort, keeping only layer numbers.
    fn sweep_layers(&mut self, sorted: &[ObjectiveVector]) {
        self.layer.clear();
        self.latest.clear();
        for v in sorted {
            let l = self.latest.iter().position(|u| !dominates_later(u, v)).unwrap_or(self.latest.len());
            if l == self.latest.len() {
                self.latest.push(*v);
            }
            self.latest[l] = *v;
            self.layer.push(l as u32);
        }
        self.layers = self.latest.len();

        let last = (self.layers - 1) as u32;
        self.positions.clear();
        self.vectors.clear();
        for (p, &l) in self.layer.iter().enumerate() {
            if l == last {
                self.positions.push(p);
                self.vectors.push(sorted[p]);
            }
        }
        self.groups.clear();
        let mut start = 0;
        for t in 1..=self.vectors.len() {
            if t == self.vectors.len() || self.vectors[t] != self.vectors[start] {
                self.groups.push((start, t));
                start = t;
            }
        }
    }

    fn vectors<'a>(&'a self, sorted: &'a [ObjectiveVector]) -> &'a [ObjectiveVector] {
        if self.layers > 1 {
            &self.vectors
        } else {
            sorted
        }
    }

    /// Pool position of slot `slot` of the last layer.
    fn position(&self, slot: usize) -> usize {
        if self.layers > 1 {
            self.positions[slot]
        } else {
            slot
        }
    }

    fn last_layer_len(&self) -> usize {
        self.groups.last().map_or(0, |g| g.1)
    }

    /// Slot with the smallest contribution, ties uniform. Shared vectors
    /// contribute nothing; a vector of its own contributes the rectangle up
    /// to its neighbours along the staircase (or the reference point).
    fn min_delta_slot<O: Observer>(
        &mut self,
        sorted: &[ObjectiveVector],
        r: &ReferencePoint,
        rng: &mut RandomSource,
        observer: &mut O,
    ) -> usize {
        let mut deltas = std::mem::take(&mut self.deltas);
        deltas.clear();
        deltas.resize(self.last_layer_len(), 0);
        let vectors = self.vectors(sorted);
        let groups = &self.groups;
        let mut least = u64::MAX;
        let mut ties = 0;
        for (t, &(start, end)) in groups.iter().enumerate() {
            let delta = if end - start == 1 {
                let v = vectors[start];
                let left = groups.get(t + 1).map_or(r[0], |h| vectors[h.0].get(0));
                let below = if t == 0 { r[1] } else { vectors[groups[t - 1].0].get(1) };
                let d = ((v.get(0) - left) * (v.get(1) - below)) as u64;
                deltas[start] = d;
                d
            } else {
                0
            };
            if delta < least {
                least = delta;
                ties = end - start;
            } else if delta == least {
                ties += end - start;
            }
        }
        observer.on_sms_removal(vectors, Some(&deltas));
        self.deltas = deltas;

        let mut pick = rng.below(ties);
        for &(start, end) in &self.groups {
            if self.deltas[start] == least {
                if pick < end - start {
                    return start + pick;
                }
                pick -= end - start;
            }
        }
        unreachable!("pick within ties")
    }

    fn remove_original<O: Observer>(
        &mut self,
        sorted: &[ObjectiveVector],
        r: &ReferencePoint,
        rng: &mut RandomSource,
        observer: &mut O,
    ) -> usize {
        self.fill(sorted);
        let slot = self.min_delta_slot(sorted, r, rng, observer);
        self.position(slot)
    }

    /// `genome(p)` is the genome at pool position `p`.
    fn remove_diversity<'a, O: Observer>(
        &mut self,
        sorted: &[ObjectiveVector],
        genome: impl Fn(usize) -> &'a BitString,
        r: &ReferencePoint,
        rng: &mut RandomSource,
        observer: &mut O,
    ) -> usize {
        self.fill(sorted);
        let size = |&(start, end): &(usize, usize)| end - start;
        let largest = self.groups.iter().map(size).max().expect("non-empty layer");
        if largest <= 2 {
            let slot = self.min_delta_slot(sorted, r, rng, observer);
            return self.position(slot);
        }

        observer.on_sms_removal(self.vectors(sorted), None);
        let ties = self.groups.iter().filter(|g| size(g) == largest).count();
        let pick = rng.below(ties);
        let &(start, end) = self.groups.iter().filter(|g| size(g) == largest).nth(pick).expect("pick within ties");
        let members: SmallVec<[&BitString; 16]> = (start..end).map(|slot| genome(self.position(slot))).collect();
        self.position(start + outside_farthest_pair(&members, rng))
    }
}

fn check_pool(pool: &[Individual], r: &ReferencePoint) {
    for ind in pool {
        check_point(&ind.objectives, r).expect("objectives above the reference point");
    }
}

/// Pool indices in decreasing objective order, and the sorted vectors.
fn sorted_pool(pool: &[Individual]) -> (Vec<usize>, Vec<ObjectiveVector>) {
    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.sort_by_key(|&i| Reverse(pool[i].objectives));
    let sorted = order.iter().map(|&i| pool[i].objectives).collect();
    (order, sorted)
}

/// Index of a member of the last layer with the smallest contribution, ties
/// broken uniformly.
pub fn remove_original<O: Observer>(
    pool: &[Individual],
    r: &ReferencePoint,
    rng: &mut RandomSource,
    observer: &mut O,
) -> usize {
    check_pool(pool, r);
    let (order, sorted) = sorted_pool(pool);
    order[LastLayer::default().remove_original(&sorted, r, rng, observer)]
}

/// Index to remove under the diversity rule.
///
/// Takes the objective vector with the most members in the last layer (ties
/// uniform). With more than two such members one outside a farthest-apart
/// pair is removed; otherwise this is [`remove_original`], drawing the same
/// random numbers.
pub fn remove_diversity<O: Observer>(
    pool: &[Individual],
    r: &ReferencePoint,
    rng: &mut RandomSource,
    observer: &mut O,
) -> usize {
    check_pool(pool, r);
    let (order, sorted) = sorted_pool(pool);
    let genome = |p: usize| &pool[order[p]].genome;
    order[LastLayer::default().remove_diversity(&sorted, genome, r, rng, observer)]
}

/// One steady-state iteration.
pub fn sms_step<O: Observer>(
    state: &mut SmsState,
    cfg: &SmsConfig,
    problem: &Problem,
    rng: &mut RandomSource,
    observer: &mut O,
) -> std::result::Result<(), BudgetExhausted> {
    if state.evaluations >= cfg.max_evaluations {
        return Err(BudgetExhausted);
    }
    if state.steps == 0 {
        check_pool(&state.population, &cfg.reference);
    }
    let pop = &state.population;
    let child = steady_state_offspring(|i| &pop[i].genome, pop.len(), &cfg.variation, rng);
    let child = Individual::evaluate(child, problem);
    check_pool(std::slice::from_ref(&child), &cfg.reference);
    let was_single_layer = state.single_layer;
    let (at, run) = state.insert(child);
    state.evaluations += 1;
    state.steps += 1;

    let r = &cfg.reference;
    if was_single_layer && state.stays_single_layer(run) {
        let mut removal = SingleLayerRemoval { state: &mut *state, r, observer };
        let (position, run) = if cfg.diversity { removal.diversity(rng) } else { removal.min_delta(rng) };
        state.remove(position, run);
        return Ok(());
    }
    if was_single_layer && run > 0 && dominates_later(&state.run_vectors[run - 1], &state.run_vectors[run]) {
        // The child is dominated by the rest, which stays one layer: the
        // last layer is the child alone, and both rules remove it.
        let v = state.run_vectors[run];
        let delta = ((v.get(0) - r[0]) * (v.get(1) - r[1])) as u64;
        observer.on_sms_removal(&[v], Some(&[delta]));
        let pick = rng.below(1);
        state.remove(at + pick, run);
        return Ok(());
    }

    state.sorted.clear();
    state.sorted.extend(state.population.iter().map(|ind| ind.objectives));
    let doomed = if cfg.diversity {
        let pop = &state.population;
        let genome = |p: usize| &pop[p].genome;
        state.scratch.remove_diversity(&state.sorted, genome, r, rng, observer)
    } else {
        state.scratch.remove_original(&state.sorted, r, rng, observer)
    };
    state.population.remove(doomed);
    state.rebuild_runs();
    Ok(())
}
