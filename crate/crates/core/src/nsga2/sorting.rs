use std::cmp::Reverse;

use crate::problems::{strictly_dominates, ObjectiveVector};

/// Successive non-dominated layers `R_1, .., R_v` of a pool, as pool indices.
/// Indices within a layer are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    pub fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    pub fn len(&self) -> usize {
        self.fronts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fronts.is_empty()
    }

    pub fn last(&self) -> &[usize] {
        self.fronts.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// 0-based layer index of every pool member.
    pub fn ranks(&self, pool_size: usize) -> Vec<usize> {
        let mut ranks = vec![usize::MAX; pool_size];
        for (r, front) in self.fronts.iter().enumerate() {
            for &i in front {
                ranks[i] = r;
            }
        }
        ranks
    }
}

/// Non-dominated sorting for one or two objectives.
///
/// Members are visited in decreasing lexicographic order of their objective
/// vectors, so every dominator of a member is placed before it. Inside a
/// layer the most recently placed member has the largest second objective,
/// which makes it the only candidate that can dominate the current member;
/// each member goes to the first layer whose latest member does not dominate
/// it.
pub fn non_dominated_sort(objectives: &[ObjectiveVector]) -> FrontPartition {
    let all: Vec<usize> = (0..objectives.len()).collect();
    let by_second = bucket_order(&all, |i| objectives[i].get_raw(1), true);
    let order = match by_second.and_then(|o| bucket_order(&o, |i| objectives[i].get_raw(0), true)) {
        Some(order) => order,
        None => {
            let mut keyed: Vec<_> = objectives.iter().enumerate().map(|(i, &v)| (Reverse(v), i)).collect();
            keyed.sort_unstable();
            keyed.into_iter().map(|(_, i)| i).collect()
        }
    };

    let mut layer_of = vec![0; objectives.len()];
    let mut latest: Vec<usize> = Vec::new();
    for i in order {
        let v = &objectives[i];
        let layer = latest.iter().position(|&l| !strictly_dominates(&objectives[l], v)).unwrap_or(latest.len());
        if layer == latest.len() {
            latest.push(i);
        }
        latest[layer] = i;
        layer_of[i] = layer;
    }
    let mut fronts = vec![Vec::new(); latest.len()];
    for (i, &layer) in layer_of.iter().enumerate() {
        fronts[layer].push(i);
    }
    FrontPartition { fronts }
}

/// Stable counting sort of `items` by `key`, or `None` when the key range is
/// too wide for buckets to pay off.
pub(crate) fn bucket_order(items: &[usize], key: impl Fn(usize) -> i64, descending: bool) -> Option<Vec<usize>> {
    let (lo, hi) = items.iter().fold((i64::MAX, i64::MIN), |(lo, hi), &i| (lo.min(key(i)), hi.max(key(i))));
    if items.is_empty() {
        return Some(Vec::new());
    }
    let span = hi.checked_sub(lo)? as u64;
    if span > 4 * items.len() as u64 + 64 {
        return None;
    }
    let bucket = |i: usize| {
        let b = (key(i) - lo) as usize;
        if descending {
            span as usize - b
        } else {
            b
        }
    };
    let mut starts = vec![0usize; span as usize + 2];
    for &i in items {
        starts[bucket(i) + 1] += 1;
    }
    for b in 1..starts.len() {
        starts[b] += starts[b - 1];
    }
    let mut out = vec![0; items.len()];
    for &i in items {
        let b = bucket(i);
        out[starts[b]] = i;
        starts[b] += 1;
    }
    Some(out)
}
