use std::collections::HashMap;

use ea_diversity::nsga2::{crowding_distance, diversity_reorder, non_dominated_sort};
use ea_diversity::sms::{delta_contributions, hypervolume_2d, sms_step, SmsConfig, SmsState};
use ea_diversity::variation::{bitwise_mutation, uniform_crossover};
use ea_diversity::{
    dominates, hamming, max_hamming_pair, ojzj_eval, pareto_front, BitString, Dominance, Individual, ObjectiveVector,
    Problem, ProblemParams, RandomSource, VariationConfig,
};
use proptest::prelude::*;

fn bits(len: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), len).prop_map(|b| BitString::from_bits(&b))
}

fn pair_of_strings() -> impl Strategy<Value = (BitString, BitString)> {
    (1usize..150).prop_flat_map(|n| (bits(n), bits(n)))
}

fn ojzj_instance() -> impl Strategy<Value = (usize, usize)> {
    (5usize..40).prop_flat_map(|n| (Just(n), 2..n.div_ceil(2)))
}

fn objectives(max: i64, len: usize) -> impl Strategy<Value = Vec<ObjectiveVector>> {
    prop::collection::vec((1..=max, 1..=max), 1..len)
        .prop_map(|v| v.into_iter().map(|(a, b)| ObjectiveVector::pair(a, b)).collect())
}

proptest! {
    #[test]
    fn hamming_is_popcount_of_xor((x, y) in pair_of_strings()) {
        let d = hamming(&x, &y).unwrap();
        prop_assert_eq!(d, x.xor(&y).unwrap().ones_count());
        prop_assert_eq!(d, hamming(&y, &x).unwrap());
        prop_assert_eq!(hamming(&x, &x).unwrap(), 0);
        prop_assert_eq!(hamming(&x, &x.complement()).unwrap(), x.len());
    }

    #[test]
    fn farthest_pair_is_a_maximum(set in (2usize..70).prop_flat_map(|n| prop::collection::vec(bits(n), 2..12)), seed: u64) {
        let refs: Vec<_> = set.iter().collect();
        let pair = max_hamming_pair(&refs, &mut RandomSource::new(seed)).unwrap();
        let mut best = 0;
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                best = best.max(hamming(&set[i], &set[j]).unwrap());
            }
        }
        prop_assert!(pair.first < pair.second);
        prop_assert_eq!(pair.distance, best);
        prop_assert_eq!(hamming(&set[pair.first], &set[pair.second]).unwrap(), best);
    }

    #[test]
    fn ojzj_is_jump_and_its_mirror(((n, k), seed) in (ojzj_instance(), any::<u64>())) {
        let p = ProblemParams::ojzj(n, k).unwrap();
        let jump = Problem::jump(n, k).unwrap();
        let x = BitString::random(n, &mut RandomSource::new(seed));
        let v = ojzj_eval(&x, &p);
        prop_assert_eq!(v.get(0), jump.evaluate(&x).get(0));
        prop_assert_eq!(v.get(1), jump.evaluate(&x.complement()).get(0));
        prop_assert_eq!(ojzj_eval(&x.complement(), &p), v.swapped());
    }

    #[test]
    fn optimal_exactly_when_sum_is_maximal((n, k) in ojzj_instance(), ones in 0usize..40) {
        let ones = ones.min(n);
        let p = ProblemParams::ojzj(n, k).unwrap();
        let v = ojzj_eval(&BitString::with_leading_ones(n, ones), &p);
        let front = pareto_front(&p);
        prop_assert_eq!(front.contains(&v), v.sum() == (n + 2 * k) as i64);
        prop_assert!(v.sum() <= (n + 2 * k) as i64);
    }

    #[test]
    fn dominance_is_antisymmetric(a in (0i64..6, 0i64..6), b in (0i64..6, 0i64..6)) {
        let (u, v) = (ObjectiveVector::pair(a.0, a.1), ObjectiveVector::pair(b.0, b.1));
        let flipped = match dominates(&u, &v).unwrap() {
            Dominance::Dominates => Dominance::Dominated,
            Dominance::Dominated => Dominance::Dominates,
            other => other,
        };
        prop_assert_eq!(dominates(&v, &u).unwrap(), flipped);
        prop_assert_eq!(dominates(&u, &v).unwrap() == Dominance::Equal, u == v);
    }

    #[test]
    fn hypervolume_grows_with_the_set(set in objectives(60, 15), extra in (1i64..=60, 1i64..=60)) {
        let before = hypervolume_2d(&set, &[0, 0]).unwrap();
        let mut more = set.clone();
        more.push(ObjectiveVector::pair(extra.0, extra.1));
        prop_assert!(hypervolume_2d(&more, &[0, 0]).unwrap() >= before);
    }

    #[test]
    fn duplicates_contribute_nothing(set in objectives(20, 25)) {
        let layer = &non_dominated_sort(&set).fronts[0];
        let front: Vec<_> = layer.iter().map(|&i| set[i]).collect();
        let deltas = delta_contributions(&front, &[0, 0]).unwrap();
        let mut positive: HashMap<ObjectiveVector, usize> = HashMap::new();
        let mut copies: HashMap<ObjectiveVector, usize> = HashMap::new();
        for (v, &d) in front.iter().zip(&deltas) {
            *copies.entry(*v).or_default() += 1;
            if d > 0 {
                *positive.entry(*v).or_default() += 1;
            }
        }
        for (v, &d) in front.iter().zip(&deltas) {
            if copies[v] > 1 {
                prop_assert_eq!(d, 0);
            }
        }
        prop_assert!(positive.values().all(|&c| c <= 1));
    }

    #[test]
    fn crowding_ledger((n, k) in ojzj_instance(), size in 2usize..60, seed: u64, reorder: bool) {
        let problem = Problem::ojzj(n, k).unwrap();
        let mut rng = RandomSource::new(seed);
        let pool: Vec<_> = (0..size).map(|_| Individual::evaluate(BitString::random(n, &mut rng), &problem)).collect();
        let objectives: Vec<_> = pool.iter().map(|ind| ind.objectives).collect();
        for layer in non_dominated_sort(&objectives).fronts {
            let members: Vec<_> = layer.iter().map(|&i| &pool[i]).collect();
            let c = crowding_distance(&members, reorder, &mut rng);
            for per in &c.per_objective {
                let interior: f64 = per.iter().filter(|d| d.is_finite()).sum();
                prop_assert!(interior <= 2.0 + 1e-9);
                prop_assert_eq!(per.iter().filter(|d| d.is_infinite()).count(), members.len().min(2));
            }
            let mut positive: HashMap<ObjectiveVector, usize> = HashMap::new();
            for (ind, &d) in members.iter().zip(&c.total) {
                if d > 0.0 {
                    *positive.entry(ind.objectives).or_default() += 1;
                }
            }
            prop_assert!(positive.values().all(|&c| c <= 4));
        }
    }

    #[test]
    fn reorder_puts_a_farthest_pair_at_run_ends((n, k) in ojzj_instance(), size in 2usize..40, seed: u64) {
        let problem = Problem::ojzj(n, k).unwrap();
        let mut rng = RandomSource::new(seed);
        // Few distinct one-counts, so objective values repeat.
        let pool: Vec<_> = (0..size)
            .map(|_| {
                let ones = n / 2 + rng.below(3);
                let mut bits: Vec<bool> = (0..n).map(|i| i < ones).collect();
                for i in (1..n).rev() {
                    bits.swap(i, rng.below(i + 1));
                }
                Individual::evaluate(BitString::from_bits(&bits), &problem)
            })
            .collect();
        let refs: Vec<_> = pool.iter().collect();
        for objective in 0..2 {
            let mut order: Vec<usize> = (0..size).collect();
            order.sort_by_key(|&i| pool[i].objectives.get(objective));
            let before = order.clone();
            diversity_reorder(&mut order, &refs, objective, &mut rng);
            let mut start = 0;
            while start < size {
                let value = pool[order[start]].objectives.get(objective);
                let end = (start..size).find(|&p| pool[order[p]].objectives.get(objective) != value).unwrap_or(size);
                let mut run = order[start..end].to_vec();
                let mut was = before[start..end].to_vec();
                run.sort_unstable();
                was.sort_unstable();
                prop_assert_eq!(run, was);
                if end - start >= 2 {
                    let genomes: Vec<_> = order[start..end].iter().map(|&i| &pool[i].genome).collect();
                    let best = max_hamming_pair(&genomes, &mut rng).unwrap().distance;
                    prop_assert_eq!(hamming(genomes[0], genomes[end - start - 1]).unwrap(), best);
                }
                start = end;
            }
        }
    }

    #[test]
    fn variation_respects_lengths_and_bit_counts((x, y) in pair_of_strings(), seed: u64) {
        let mut rng = RandomSource::new(seed);
        let (a, b) = uniform_crossover(&x, &y, &mut rng).unwrap();
        for i in 0..x.len() {
            prop_assert_eq!(a.get(i) as u8 + b.get(i) as u8, x.get(i) as u8 + y.get(i) as u8);
        }
        prop_assert_eq!(bitwise_mutation(&x, &mut rng).len(), x.len());
    }
}

#[test]
fn mutation_flips_one_bit_on_average() {
    let mut rng = RandomSource::new(9);
    let x = BitString::zeros(50);
    let flips: usize = (0..20_000).map(|_| bitwise_mutation(&x, &mut rng).ones_count()).sum();
    let mean = flips as f64 / 20_000.0;
    assert!((mean - 1.0).abs() < 0.03, "mean flips {mean}");
}

#[test]
fn original_sms_never_loses_hypervolume() {
    let problem = Problem::ojzj(12, 3).unwrap();
    for seed in 0..10 {
        let cfg = SmsConfig::new(8, VariationConfig::default(), false, u64::MAX).unwrap();
        let mut rng = RandomSource::new(seed);
        let mut state = SmsState::initialize(&cfg, &problem, &mut rng);
        let mut hv = 0;
        for _ in 0..2000 {
            sms_step(&mut state, &cfg, &problem, &mut rng, &mut ()).unwrap();
            let objectives: Vec<_> = state.population().iter().map(|ind| ind.objectives).collect();
            let now = hypervolume_2d(&objectives, &cfg.reference).unwrap();
            assert!(now >= hv, "seed {seed}: {hv} -> {now}");
            assert_eq!(state.population().len(), 8);
            hv = now;
        }
    }
}
