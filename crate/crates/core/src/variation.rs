//! Uniform crossover and standard bit-wise mutation.

use smallvec::SmallVec;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::rng::{Geometric, RandomSource};

/// Reproduction settings. The mutation rate is always `1/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationConfig {
    crossover_prob: f64,
}

impl VariationConfig {
    pub fn new(crossover_prob: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&crossover_prob) {
            return Err(Error::InvalidParams(format!(
                "crossover probability must lie in [0, 1], got {crossover_prob}"
            )));
        }
        Ok(Self { crossover_prob })
    }

    pub fn crossover_prob(&self) -> f64 {
        self.crossover_prob
    }

    /// Samples `u ~ U[0,1)` and reports `u < p_c`.
    pub(crate) fn use_crossover(&self, rng: &mut RandomSource) -> bool {
        rng.unit() < self.crossover_prob
    }
}

impl Default for VariationConfig {
    fn default() -> Self {
        Self { crossover_prob: 0.5 }
    }
}

/// Exchanges each bit of `x` and `y` independently with probability 1/2.
///
/// Only positions where the parents differ can change, so the exchange mask is
/// a random word restricted to `x ^ y`.
pub fn uniform_crossover(x: &BitString, y: &BitString, rng: &mut RandomSource) -> Result<(BitString, BitString)> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let mut first = SmallVec::<[u64; 1]>::from_slice(x.words());
    let mut second = SmallVec::<[u64; 1]>::from_slice(y.words());
    for (a, b) in first.iter_mut().zip(second.iter_mut()) {
        let diff = *a ^ *b;
        if diff == 0 {
            continue;
        }
        let swap = diff & rng.next_u64();
        *a ^= swap;
        *b ^= swap;
    }
    Ok((BitString::from_words(first, x.len()), BitString::from_words(second, y.len())))
}

/// First child of [`uniform_crossover`].
pub fn crossover_first_child(x: &BitString, y: &BitString, rng: &mut RandomSource) -> Result<BitString> {
    uniform_crossover(x, y, rng).map(|(child, _)| child)
}

/// Flips each bit independently with probability `1/n`.
pub fn bitwise_mutation(x: &BitString, rng: &mut RandomSource) -> BitString {
    let n = x.len();
    if n == 0 {
        return x.clone();
    }
    let mut words = SmallVec::<[u64; 1]>::from_slice(x.words());
    // Gaps between flipped positions of independent 1/n coins are geometric,
    // so jumping from flip to flip draws the same law with ~2 samples.
    let gaps = Geometric::new(1.0 / n as f64);
    let mut i = rng.geometric(&gaps);
    while i < n as u64 {
        let bit = i as usize;
        words[bit / 64] ^= 1 << (bit % 64);
        i = i.saturating_add(1).saturating_add(rng.geometric(&gaps));
    }
    BitString::from_words(words, n)
}

/// One offspring of a steady-state algorithm: a uniformly chosen parent,
/// crossed with a second uniformly chosen parent with probability `p_c`
/// (keeping the first child), then mutated.
pub(crate) fn steady_state_offspring<'a>(
    parents: impl Fn(usize) -> &'a BitString,
    size: usize,
    cfg: &VariationConfig,
    rng: &mut RandomSource,
) -> BitString {
    let x = parents(rng.below(size));
    let intermediate = if cfg.use_crossover(rng) {
        let y = parents(rng.below(size));
        crossover_first_child(x, y, rng).expect("population members share a length")
    } else {
        x.clone()
    };
    bitwise_mutation(&intermediate, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn identical_parents() {
        let x = bs("1011001");
        let mut rng = RandomSource::new(1);
        for _ in 0..100 {
            let (a, b) = uniform_crossover(&x, &x, &mut rng).unwrap();
            assert_eq!(a, x);
            assert_eq!(b, x);
        }
    }

    #[test]
    fn complementary_parents_give_complementary_children() {
        let mut rng = RandomSource::new(2);
        for _ in 0..100 {
            let (a, b) = uniform_crossover(&BitString::ones(70), &BitString::zeros(70), &mut rng).unwrap();
            assert_eq!(a.complement(), b);
        }
    }

    #[test]
    fn crossover_length_mismatch() {
        let mut rng = RandomSource::new(3);
        assert!(uniform_crossover(&bs("10"), &bs("101"), &mut rng).is_err());
    }

    #[test]
    fn child_distance_is_binomial() {
        // Parents differing in d positions: H(child, x) ~ Binomial(d, 1/2).
        let x = bs("110011001100110011001100");
        let y = bs("001111000011110000111100");
        let d = x.hamming(&y).unwrap() as f64;
        let mut rng = RandomSource::new(4);
        let trials = 10_000;
        let total: usize =
            (0..trials).map(|_| crossover_first_child(&x, &y, &mut rng).unwrap().hamming(&x).unwrap()).sum();
        let mean = total as f64 / trials as f64;
        let se = (d * 0.25 / trials as f64).sqrt();
        assert!((mean - d / 2.0).abs() < 3.0 * se, "mean {mean}, d {d}");
    }

    #[test]
    fn first_child_distribution_over_masks() {
        // 1100 x 0011 differ everywhere: each of the 16 strings is one
        // exchange mask, so the first child is uniform over {0,1}^4.
        let (x, y) = (bs("1100"), bs("0011"));
        let mut rng = RandomSource::new(5);
        let trials = 32_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..trials {
            *counts.entry(crossover_first_child(&x, &y, &mut rng).unwrap()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 16);
        let expected = trials as f64 / 16.0;
        let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // 15 dof, p = 0.001
        assert!(chi2 < 37.697, "chi2 {chi2}");
    }

    #[test]
    fn all_ones_from_disjoint_parents() {
        // n-k ones each, 2k disjoint differing bits (k = 2): all-ones child
        // needs all 2k exchanges to favour the ones, probability 2^-4.
        let x = bs("11110011");
        let y = bs("11111100");
        let mut rng = RandomSource::new(6);
        let trials = 64_000;
        let hits = (0..trials).filter(|_| crossover_first_child(&x, &y, &mut rng).unwrap().is_all_ones()).count();
        let p = 1.0 / 16.0;
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        let freq = hits as f64 / trials as f64;
        assert!((freq - p).abs() < 3.0 * se, "freq {freq}");
    }

    #[test]
    fn mutation_zero_flip_probability() {
        let n = 20;
        let x = BitString::zeros(n);
        let mut rng = RandomSource::new(7);
        let trials = 100_000;
        let unchanged = (0..trials).filter(|_| bitwise_mutation(&x, &mut rng) == x).count();
        let p = (1.0 - 1.0 / n as f64).powi(n as i32);
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        let freq = unchanged as f64 / trials as f64;
        assert!((freq - p).abs() < 3.0 * se, "freq {freq} vs {p}");
    }

    #[test]
    fn mutation_length_one_always_flips() {
        let mut rng = RandomSource::new(8);
        let x = bs("0");
        assert!((0..100).all(|_| bitwise_mutation(&x, &mut rng) == bs("1")));
    }

    #[test]
    fn mutation_expected_flips() {
        let x = BitString::zeros(20);
        let mut rng = RandomSource::new(9);
        let trials = 100_000;
        let flips: usize = (0..trials).map(|_| bitwise_mutation(&x, &mut rng).ones_count()).sum();
        let mean = flips as f64 / trials as f64;
        assert!((0.97..=1.03).contains(&mean), "mean {mean}");
    }

    #[test]
    fn no_crossover_means_copy_then_mutate() {
        let cfg = VariationConfig::new(0.0).unwrap();
        let pop = [bs("000000000000"), bs("111111111111")];
        let mut a = RandomSource::new(10);
        let mut b = RandomSource::new(10);
        for _ in 0..200 {
            let child = steady_state_offspring(|i| &pop[i], 2, &cfg, &mut a);
            let parent = &pop[b.below(2)];
            let _ = b.unit();
            assert_eq!(child, bitwise_mutation(parent, &mut b));
        }
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(VariationConfig::new(1.5).is_err());
        assert!(VariationConfig::new(-0.1).is_err());
    }
}
