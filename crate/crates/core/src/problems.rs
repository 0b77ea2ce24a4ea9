//! Jump and OneJumpZeroJump, Pareto domination and the closed-form front.

use std::cmp::Ordering;
use std::fmt;

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// String length `n` and jump width `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProblemParams {
    pub n: usize,
    pub k: usize,
}

impl ProblemParams {
    /// Parameters valid for Jump: `2 <= k < n`.
    pub fn jump(n: usize, k: usize) -> Result<Self> {
        if k < 2 || k >= n {
            return Err(Error::InvalidParams(format!("Jump needs 2 <= k < n, got n={n}, k={k}")));
        }
        Ok(Self { n, k })
    }

    /// Parameters valid for OneJumpZeroJump: `2 <= k < n/2`.
    pub fn ojzj(n: usize, k: usize) -> Result<Self> {
        if k < 2 || 2 * k >= n {
            return Err(Error::InvalidParams(format!("OneJumpZeroJump needs 2 <= k < n/2, got n={n}, k={k}")));
        }
        Ok(Self { n, k })
    }

    /// Number of Pareto-optimal objective vectors, `n - 2k + 3`.
    pub fn front_size(&self) -> usize {
        self.n - 2 * self.k + 3
    }
}

/// One or two integer objective values, maximised.
///
/// The unused slot of a single-objective vector is always 0, so comparisons
/// can look at both slots unconditionally.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ObjectiveVector {
    values: [i64; 2],
    arity: u8,
}

/// Lexicographic on the values, then by arity. Spelled out on a tuple because
/// the derived array comparison does not inline well in hot loops.
impl Ord for ObjectiveVector {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        (self.values[0], self.values[1], self.arity).cmp(&(other.values[0], other.values[1], other.arity))
    }
}

impl PartialOrd for ObjectiveVector {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ObjectiveVector {
    pub fn single(f: i64) -> Self {
        Self { values: [f, 0], arity: 1 }
    }

    pub fn pair(f1: i64, f2: i64) -> Self {
        Self { values: [f1, f2], arity: 2 }
    }

    pub fn from_slice(values: &[i64]) -> Result<Self> {
        match *values {
            [f] => Ok(Self::single(f)),
            [f1, f2] => Ok(Self::pair(f1, f2)),
            _ => Err(Error::InvalidParams(format!("objective vectors have 1 or 2 values, got {}", values.len()))),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.values[..self.arity()]
    }

    /// Value of objective `j` (0-based).
    #[inline]
    pub fn get(&self, j: usize) -> i64 {
        debug_assert!(j < self.arity());
        self.values[j]
    }

    /// Slot `j` of the underlying pair; 0 past the arity.
    #[inline]
    pub(crate) fn get_raw(&self, j: usize) -> i64 {
        self.values[j]
    }

    /// The two objectives exchanged. Single-objective vectors are returned as is.
    pub fn swapped(&self) -> Self {
        match self.arity {
            2 => Self::pair(self.values[1], self.values[0]),
            _ => *self,
        }
    }

    #[inline]
    pub fn sum(&self) -> i64 {
        self.values[0] + self.values[1]
    }
}

impl fmt::Debug for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_slice() {
            [a] => write!(f, "({a})"),
            [a, b] => write!(f, "({a}, {b})"),
            _ => unreachable!(),
        }
    }
}

/// How `u` relates to `v` under maximisation.
///
/// Weak domination without strict domination only happens for equal
/// vectors, so four outcomes cover every pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Dominates,
    Dominated,
    Equal,
    Incomparable,
}

pub fn dominates(u: &ObjectiveVector, v: &ObjectiveVector) -> Result<Dominance> {
    if u.arity() != v.arity() {
        return Err(Error::ArityMismatch { left: u.arity(), right: v.arity() });
    }
    Ok(compare(u, v))
}

#[inline]
pub(crate) fn compare(u: &ObjectiveVector, v: &ObjectiveVector) -> Dominance {
    debug_assert_eq!(u.arity, v.arity);
    let [a0, a1] = u.values;
    let [b0, b1] = v.values;
    let better = (a0 > b0) | (a1 > b1);
    let worse = (a0 < b0) | (a1 < b1);
    match (better, worse) {
        (true, false) => Dominance::Dominates,
        (false, true) => Dominance::Dominated,
        (false, false) => Dominance::Equal,
        (true, true) => Dominance::Incomparable,
    }
}

/// `u ⪰ v`: at least as good in every objective.
pub fn weakly_dominates(u: &ObjectiveVector, v: &ObjectiveVector) -> bool {
    matches!(compare(u, v), Dominance::Dominates | Dominance::Equal)
}

/// `u ≻ v`: weakly dominates and strictly better somewhere.
#[inline]
pub fn strictly_dominates(u: &ObjectiveVector, v: &ObjectiveVector) -> bool {
    compare(u, v) == Dominance::Dominates
}

fn jump_value(ones: usize, n: usize, k: usize) -> i64 {
    if ones <= n - k || ones == n {
        (k + ones) as i64
    } else {
        (n - ones) as i64
    }
}

/// Jump: `k + |x|_1` when `|x|_1 <= n-k` or `x = 1^n`, otherwise `n - |x|_1`.
pub fn jump_eval(x: &BitString, p: &ProblemParams) -> ObjectiveVector {
    debug_assert_eq!(x.len(), p.n);
    ObjectiveVector::single(jump_value(x.ones_count(), p.n, p.k))
}

/// OneJumpZeroJump: Jump on the 1-bits paired with Jump on the 0-bits.
pub fn ojzj_eval(x: &BitString, p: &ProblemParams) -> ObjectiveVector {
    debug_assert_eq!(x.len(), p.n);
    let ones = x.ones_count();
    ObjectiveVector::pair(jump_value(ones, p.n, p.k), jump_value(p.n - ones, p.n, p.k))
}

/// `{(a, n+2k-a) | a ∈ [2k..n] ∪ {k, n+k}}`, sorted by ascending `a`.
pub fn pareto_front(p: &ProblemParams) -> Vec<ObjectiveVector> {
    let (n, k) = (p.n as i64, p.k as i64);
    std::iter::once(k)
        .chain(2 * k..=n)
        .chain(std::iter::once(n + k))
        .map(|a| ObjectiveVector::pair(a, n + 2 * k - a))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Jump(ProblemParams),
    OneJumpZeroJump(ProblemParams),
}

impl Problem {
    pub fn jump(n: usize, k: usize) -> Result<Self> {
        ProblemParams::jump(n, k).map(Problem::Jump)
    }

    pub fn ojzj(n: usize, k: usize) -> Result<Self> {
        ProblemParams::ojzj(n, k).map(Problem::OneJumpZeroJump)
    }

    pub fn params(&self) -> &ProblemParams {
        match self {
            Problem::Jump(p) | Problem::OneJumpZeroJump(p) => p,
        }
    }

    pub fn n(&self) -> usize {
        self.params().n
    }

    pub fn objectives(&self) -> usize {
        match self {
            Problem::Jump(_) => 1,
            Problem::OneJumpZeroJump(_) => 2,
        }
    }

    pub fn evaluate(&self, x: &BitString) -> ObjectiveVector {
        match self {
            Problem::Jump(p) => jump_eval(x, p),
            Problem::OneJumpZeroJump(p) => ojzj_eval(x, p),
        }
    }

    /// Jump: `1^n` is present. OneJumpZeroJump: every Pareto-front vector is
    /// attained by some member.
    pub fn is_success<'a>(&self, population: impl IntoIterator<Item = &'a BitString>) -> bool {
        match self {
            Problem::Jump(_) => population.into_iter().any(BitString::is_all_ones),
            Problem::OneJumpZeroJump(_) => self.objectives_reach_goal(population.into_iter().map(|x| self.evaluate(x))),
        }
    }

    /// Same predicate as [`Problem::is_success`], on already evaluated members.
    pub fn objectives_reach_goal(&self, objectives: impl IntoIterator<Item = ObjectiveVector>) -> bool {
        match self {
            Problem::Jump(p) => {
                let optimum = (p.n + p.k) as i64;
                objectives.into_iter().any(|v| v.get(0) == optimum)
            }
            Problem::OneJumpZeroJump(_) => GoalTracker::new(self).reached(objectives),
        }
    }
}

/// Reusable success check: the same predicate as
/// [`Problem::objectives_reach_goal`] without allocating per call.
#[derive(Debug, Clone)]
pub struct GoalTracker {
    kind: Problem,
    // For OneJumpZeroJump: `stamp[a] == epoch` marks front vector `a` as seen
    // in the current call; non-front entries are never stamped.
    on_front: Vec<bool>,
    stamp: Vec<u64>,
    epoch: u64,
    target_sum: i64,
    front_size: usize,
}

impl GoalTracker {
    pub fn new(problem: &Problem) -> Self {
        let p = problem.params();
        let mut on_front = vec![false; p.n + p.k + 1];
        if let Problem::OneJumpZeroJump(_) = problem {
            for v in pareto_front(p) {
                on_front[v.get(0) as usize] = true;
            }
        }
        Self {
            kind: *problem,
            stamp: vec![0; on_front.len()],
            on_front,
            epoch: 0,
            target_sum: (p.n + 2 * p.k) as i64,
            front_size: p.front_size(),
        }
    }

    pub fn reached(&mut self, objectives: impl IntoIterator<Item = ObjectiveVector>) -> bool {
        match self.kind {
            Problem::Jump(p) => {
                let optimum = (p.n + p.k) as i64;
                objectives.into_iter().any(|v| v.get(0) == optimum)
            }
            Problem::OneJumpZeroJump(_) => {
                self.epoch += 1;
                let mut missing = self.front_size;
                for v in objectives {
                    if v.sum() != self.target_sum {
                        continue;
                    }
                    let a = v.get(0) as usize;
                    if self.on_front[a] && self.stamp[a] != self.epoch {
                        self.stamp[a] = self.epoch;
                        missing -= 1;
                        if missing == 0 {
                            return true;
                        }
                    }
                }
                false
            }
        }
    }

    /// [`GoalTracker::reached`] for vectors in decreasing order. The
    /// extreme front vectors are looked up by binary search first, which
    /// settles most calls without a scan.
    pub fn reached_descending(&mut self, descending: &[ObjectiveVector]) -> bool {
        debug_assert!(descending.windows(2).all(|w| w[0] >= w[1]));
        match self.kind {
            Problem::Jump(p) => descending.first().is_some_and(|v| v.get(0) == (p.n + p.k) as i64),
            Problem::OneJumpZeroJump(p) => {
                let (high, low) = ((p.n + p.k) as i64, p.k as i64);
                let extremes = [ObjectiveVector::pair(high, low), ObjectiveVector::pair(low, high)];
                extremes.iter().all(|e| descending.binary_search_by(|u| e.cmp(u)).is_ok())
                    && self.reached(descending.iter().copied())
            }
        }
    }
}
