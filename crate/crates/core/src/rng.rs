//! Seeded randomness shared by every algorithm in the crate.
//!
//! All draws go through [`RandomSource`], a thin wrapper over ChaCha8 so that
//! a given seed produces the same stream on every platform. Integer draws are
//! always made in `u64` space, never `usize`, to keep 32- and 64-bit targets
//! in lockstep.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Success probability of a geometric distribution, stored as `ln(1 - p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometric {
    ln_q: f64,
}

impl Geometric {
    /// `p` must lie in `[0, 1]`.
    pub fn new(p: f64) -> Self {
        assert!((0.0..=1.0).contains(&p), "probability {p} outside [0, 1]");
        Self { ln_q: (-p).ln_1p() }
    }
}

/// SplitMix64 output function. A bijection on `u64`.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for replication `run` under `master`.
///
/// Distinct run indices map to distinct seeds: the input
/// `master + GOLDEN_GAMMA * (run + 1)` is injective in `run` (the multiplier
/// is odd) and `mix64` is a bijection.
pub fn derive_seed(master: u64, run: u64) -> u64 {
    mix64(master.wrapping_add(GOLDEN_GAMMA.wrapping_mul(run.wrapping_add(1))))
}

#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Source for replication `run`, see [`derive_seed`].
    pub fn for_replication(master: u64, run: u64) -> Self {
        Self::new(derive_seed(master, run))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform index in `0..bound`. Panics if `bound == 0`.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "empty range");
        self.rng.random_range(0..bound as u64) as usize
    }

    /// `true` with probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        if p <= 0.0 {
            false
        } else if p >= 1.0 {
            true
        } else {
            self.rng.random_bool(p)
        }
    }

    /// Uniform sample from `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Failures before the first success in independent trials, by
    /// inversion of the geometric distribution function.
    pub fn geometric(&mut self, gaps: &Geometric) -> u64 {
        if gaps.ln_q == 0.0 {
            return u64::MAX;
        }
        if gaps.ln_q == f64::NEG_INFINITY {
            return 0;
        }
        // 1 - unit() lies in (0, 1], so the logarithm is finite.
        let u = 1.0 - self.unit();
        let k = (u.ln() / gaps.ln_q).floor();
        if k >= u64::MAX as f64 {
            u64::MAX
        } else {
            k as u64
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = RandomSource::new(42);
        let mut b = RandomSource::new(42);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn derived_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> = (0..10_000).map(|r| derive_seed(7, r)).collect();
        assert_eq!(seeds.len(), 10_000);
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = RandomSource::new(1);
        for bound in 1..50 {
            for _ in 0..100 {
                assert!(rng.below(bound) < bound);
            }
        }
    }

    #[test]
    fn chance_extremes() {
        let mut rng = RandomSource::new(3);
        assert!((0..100).all(|_| rng.chance(1.0)));
        assert!((0..100).all(|_| !rng.chance(0.0)));
    }

    #[test]
    fn geometric_matches_its_law() {
        let mut rng = RandomSource::new(5);
        let p = 0.2;
        let gaps = Geometric::new(p);
        let draws: Vec<u64> = (0..200_000).map(|_| rng.geometric(&gaps)).collect();
        let zeros = draws.iter().filter(|&&g| g == 0).count() as f64 / draws.len() as f64;
        let mean = draws.iter().sum::<u64>() as f64 / draws.len() as f64;
        assert!((zeros - p).abs() < 0.005, "P(0) = {zeros}");
        assert!((mean - (1.0 - p) / p).abs() < 0.05, "mean = {mean}");
    }

    #[test]
    fn geometric_extremes() {
        let mut rng = RandomSource::new(6);
        assert_eq!(rng.geometric(&Geometric::new(1.0)), 0);
        assert_eq!(rng.geometric(&Geometric::new(0.0)), u64::MAX);
    }
}
