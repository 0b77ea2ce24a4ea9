//! Brute-force references for tests.
//!
//! Everything here is deliberately naive and shares no code with the
//! implementations it checks: domination is re-derived from raw slices,
//! sorting is repeated full scans, and hypervolume is unit-cell counting.

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::problems::{ObjectiveVector, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest string length enumerated exhaustively.
    pub max_n: usize,
    /// Largest pool sorted by repeated scans.
    pub max_pool: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_n: 14, max_pool: 256 }
    }
}

fn naive_dominates(a: &[i64], b: &[i64]) -> bool {
    let mut strictly = false;
    for i in 0..a.len() {
        if a[i] < b[i] {
            return false;
        }
        if a[i] > b[i] {
            strictly = true;
        }
    }
    strictly
}

fn all_strings(n: usize) -> impl Iterator<Item = BitString> {
    (0u64..1 << n).map(move |mask| {
        let bits: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        BitString::from_bits(&bits)
    })
}

/// Objective vectors of all `2^n` strings that no attained vector dominates,
/// sorted ascending.
pub fn brute_pareto_front(problem: &Problem, budget: &OracleBudget) -> Result<Vec<ObjectiveVector>> {
    let n = problem.n();
    if n > budget.max_n {
        return Err(Error::OracleBudget(format!("n = {n} exceeds max_n = {}", budget.max_n)));
    }
    let mut attained: Vec<ObjectiveVector> = all_strings(n).map(|x| problem.evaluate(&x)).collect();
    attained.sort();
    attained.dedup();
    let front = attained
        .iter()
        .filter(|v| !attained.iter().any(|u| naive_dominates(u.as_slice(), v.as_slice())))
        .copied()
        .collect();
    Ok(front)
}

/// Every string whose objective vector is on the brute-force front.
pub fn brute_optimal_solutions(problem: &Problem, budget: &OracleBudget) -> Result<Vec<BitString>> {
    let front = brute_pareto_front(problem, budget)?;
    Ok(all_strings(problem.n()).filter(|x| front.contains(&problem.evaluate(x))).collect())
}

/// Layers by repeatedly peeling off the members nobody remaining dominates.
/// Indices within a layer are ascending.
pub fn brute_nondominated_sort(pool: &[ObjectiveVector], budget: &OracleBudget) -> Result<Vec<Vec<usize>>> {
    if pool.len() > budget.max_pool {
        return Err(Error::OracleBudget(format!("pool of {} exceeds max_pool = {}", pool.len(), budget.max_pool)));
    }
    let mut remaining: Vec<usize> = (0..pool.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let layer: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| !remaining.iter().any(|&j| naive_dominates(pool[j].as_slice(), pool[i].as_slice())))
            .collect();
        remaining.retain(|i| !layer.contains(i));
        fronts.push(layer);
    }
    Ok(fronts)
}

/// Number of unit cells `[c, c+1)^2` with `c >= r` whose upper corner is
/// weakly dominated by some point. Points must have two objectives.
pub fn grid_hypervolume(points: &[ObjectiveVector], r: &[i64; 2]) -> u64 {
    let max_x = points.iter().map(|p| p.as_slice()[0]).max().unwrap_or(r[0]);
    let max_y = points.iter().map(|p| p.as_slice()[1]).max().unwrap_or(r[1]);
    let mut cells = 0;
    for x in r[0]..max_x {
        for y in r[1]..max_y {
            let covered = points.iter().any(|p| {
                let p = p.as_slice();
                p[0] > x && p[1] > y
            });
            if covered {
                cells += 1;
            }
        }
    }
    cells
}

/// `grid_hypervolume(front) - grid_hypervolume(front without member index)`.
pub fn grid_delta(index: usize, front: &[ObjectiveVector], r: &[i64; 2]) -> u64 {
    let rest: Vec<_> = front.iter().enumerate().filter(|&(i, _)| i != index).map(|(_, p)| *p).collect();
    grid_hypervolume(front, r) - grid_hypervolume(&rest, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn front_for_small_instances() {
        let budget = OracleBudget::default();
        let f = brute_pareto_front(&Problem::ojzj(10, 2).unwrap(), &budget).unwrap();
        assert_eq!(f.len(), 10 - 4 + 3);
        let f = brute_pareto_front(&Problem::ojzj(6, 2).unwrap(), &budget).unwrap();
        assert!(f.contains(&ObjectiveVector::pair(8, 2)));
        assert!(f.contains(&ObjectiveVector::pair(2, 8)));
    }

    #[test]
    fn jump_optimum_is_unique() {
        let budget = OracleBudget::default();
        let problem = Problem::jump(5, 2).unwrap();
        assert_eq!(brute_pareto_front(&problem, &budget).unwrap(), vec![ObjectiveVector::single(7)]);
        assert_eq!(brute_optimal_solutions(&problem, &budget).unwrap(), vec![BitString::ones(5)]);
    }

    #[test]
    fn budget_enforced() {
        let budget = OracleBudget { max_n: 8, max_pool: 3 };
        assert!(brute_pareto_front(&Problem::ojzj(10, 2).unwrap(), &budget).is_err());
        let pool = vec![ObjectiveVector::pair(1, 1); 4];
        assert!(brute_nondominated_sort(&pool, &budget).is_err());
    }

    #[test]
    fn sorting_small_cases() {
        let budget = OracleBudget::default();
        assert_eq!(brute_nondominated_sort(&[ObjectiveVector::pair(1, 2)], &budget).unwrap(), vec![vec![0]]);
        let eq = [ObjectiveVector::pair(3, 3), ObjectiveVector::pair(3, 3)];
        assert_eq!(brute_nondominated_sort(&eq, &budget).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn grid_examples() {
        let origin = [0, 0];
        assert_eq!(grid_hypervolume(&[ObjectiveVector::pair(4, 5)], &origin), 20);
        let nested = [ObjectiveVector::pair(3, 3), ObjectiveVector::pair(1, 1)];
        assert_eq!(grid_hypervolume(&nested, &origin), 9);
        let front = [ObjectiveVector::pair(3, 1), ObjectiveVector::pair(2, 2), ObjectiveVector::pair(1, 3)];
        assert_eq!(grid_hypervolume(&front, &origin), 6);
        assert_eq!(grid_delta(1, &front, &origin), 1);
    }
}
