use super::sorting::bucket_order;
use crate::bitstring::max_hamming_pair;
use crate::individual::Individual;
use crate::rng::RandomSource;

/// Crowding distances of one front.
///
/// `per_objective[j][i]` is member `i`'s contribution from objective `j`;
/// `total[i]` is their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Crowding {
    pub total: Vec<f64>,
    pub per_objective: Vec<Vec<f64>>,
}

/// Crowding distance of every member of `front`.
///
/// For each objective the members are stably sorted by that objective
/// (equal values stay contiguous, in input order), optionally reordered by
/// [`diversity_reorder`], and then the first and last positions get `∞` while
/// interior positions get the neighbour gap normalised by the objective's
/// range. A zero range gives interior members 0.
pub fn crowding_distance(front: &[&Individual], reorder: bool, rng: &mut RandomSource) -> Crowding {
    let size = front.len();
    let objectives = front.first().map_or(0, |ind| ind.objectives.arity());
    let mut per_objective = vec![vec![0.0; size]; objectives];

    for (j, dist) in per_objective.iter_mut().enumerate() {
        let value = |i: usize| front[i].objectives.get(j);
        let all: Vec<usize> = (0..size).collect();
        let mut order = bucket_order(&all, value, false).unwrap_or_else(|| {
            let mut order = all;
            order.sort_by_key(|&i| value(i));
            order
        });
        if reorder {
            diversity_reorder(&mut order, front, j, rng);
        }

        let lo = value(order[0]);
        let hi = value(order[size - 1]);
        let range = (hi - lo) as f64;
        dist[order[0]] = f64::INFINITY;
        dist[order[size - 1]] = f64::INFINITY;
        for l in 1..size.saturating_sub(1) {
            dist[order[l]] = if range > 0.0 { (value(order[l + 1]) - value(order[l - 1])) as f64 / range } else { 0.0 };
        }
    }

    let total = (0..size).map(|i| per_objective.iter().map(|d| d[i]).sum()).collect();
    Crowding { total, per_objective }
}

/// Moves a maximum-Hamming pair of every run of equal objective-`objective`
/// values to the run's first and last positions.
///
/// `order` lists front positions sorted ascending by that objective. Runs of
/// length one are untouched.
pub fn diversity_reorder(order: &mut [usize], front: &[&Individual], objective: usize, rng: &mut RandomSource) {
    let value = |i: usize| front[i].objectives.get(objective);
    let mut start = 0;
    while start < order.len() {
        let g = value(order[start]);
        let mut end = start + 1;
        while end < order.len() && value(order[end]) == g {
            end += 1;
        }
        if end - start >= 2 {
            let genomes: Vec<_> = order[start..end].iter().map(|&i| &front[i].genome).collect();
            let pair = max_hamming_pair(&genomes, rng).expect("run of at least two");
            let a = order[start + pair.first];
            let b = order[start + pair.second];
            order.swap(start, start + pair.first);
            let b_pos = start + order[start..end].iter().position(|&i| i == b).expect("b in run");
            order.swap(b_pos, end - 1);
            debug_assert_eq!((order[start], order[end - 1]), (a, b));
        }
        start = end;
    }
}
