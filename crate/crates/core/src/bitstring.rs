//! Fixed-length bit strings packed into 64-bit words.

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rng::RandomSource;

const WORD: usize = 64;

type Words = SmallVec<[u64; 1]>;

/// A binary string of fixed length `n >= 1`.
///
/// Bits beyond `n` in the last word are always zero, so popcount and
/// equality can work on whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Words,
    len: usize,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

fn tail_mask(len: usize) -> u64 {
    match len % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "bit strings must have positive length");
        Self { words: SmallVec::from_elem(0, word_count(len)), len }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = Self::zeros(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_tail();
        s
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.words[i / WORD] |= 1 << (i % WORD);
            }
        }
        s
    }

    /// String of length `len` whose first `ones` positions are 1.
    pub fn with_leading_ones(len: usize, ones: usize) -> Self {
        assert!(ones <= len);
        let mut s = Self::zeros(len);
        for i in 0..ones {
            s.words[i / WORD] |= 1 << (i % WORD);
        }
        s
    }

    /// Each bit independently 1 with probability 1/2.
    pub fn random(len: usize, rng: &mut RandomSource) -> Self {
        let mut s = Self::zeros(len);
        for w in s.words.iter_mut() {
            *w = rng.next_u64();
        }
        s.clear_tail();
        s
    }

    pub(crate) fn from_words(words: Words, len: usize) -> Self {
        debug_assert_eq!(words.len(), word_count(len));
        let mut s = Self { words, len };
        s.clear_tail();
        s
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let last = self.words.len() - 1;
        self.words[last] &= tail_mask(self.len);
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Copy of `self` with bit `i` inverted.
    pub fn with_flipped(&self, i: usize) -> Self {
        assert!(i < self.len);
        let mut s = self.clone();
        s.words[i / WORD] ^= 1 << (i % WORD);
        s
    }

    /// |x|_1
    pub fn ones_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// |x|_0
    pub fn zeros_count(&self) -> usize {
        self.len - self.ones_count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.ones_count() == self.len
    }

    pub fn is_all_zeros(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> Self {
        let words = self.words.iter().map(|w| !w).collect();
        Self::from_words(words, self.len)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(Self::from_words(words, self.len))
    }

    pub fn hamming(&self, other: &Self) -> Result<usize> {
        self.check_len(other)?;
        Ok(self.hamming_unchecked(other))
    }

    pub(crate) fn hamming_unchecked(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a ^ b).count_ones() as usize).sum()
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(Error::LengthMismatch { left: self.len, right: other.len })
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

/// Hamming distance between two strings of equal length.
pub fn hamming(x: &BitString, y: &BitString) -> Result<usize> {
    x.hamming(y)
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidParams("empty bit string".into()));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidParams(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bits(&bits))
    }
}

/// A maximum-distance pair found by [`max_hamming_pair`], as indices into
/// the input slice with `first < second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HammingPair {
    pub first: usize,
    pub second: usize,
    pub distance: usize,
}

/// Pair of distinct members of `set` with the largest Hamming distance.
///
/// Members are distinct by position, so duplicated strings can form a pair at
/// distance 0. When several pairs attain the maximum one is chosen uniformly
/// at random (reservoir sampling over the scan order).
pub fn max_hamming_pair(set: &[&BitString], rng: &mut RandomSource) -> Result<HammingPair> {
    if set.len() < 2 {
        return Err(Error::TooFewSolutions(set.len()));
    }
    let len = set[0].len();
    if let Some(bad) = set.iter().find(|s| s.len() != len) {
        return Err(Error::LengthMismatch { left: len, right: bad.len() });
    }

    let mut best = HammingPair { first: 0, second: 1, distance: 0 };
    let mut ties = 0usize;
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            let d = set[i].hamming_unchecked(set[j]);
            if ties == 0 || d > best.distance {
                best = HammingPair { first: i, second: j, distance: d };
                ties = 1;
            } else if d == best.distance {
                ties += 1;
                if rng.below(ties) == 0 {
                    best = HammingPair { first: i, second: j, distance: d };
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(BitString::ones(20).ones_count(), 20);
        assert_eq!(BitString::zeros(20).ones_count(), 0);
        assert_eq!(bs("101100").ones_count(), 3);
        assert_eq!(bs("101100").zeros_count(), 3);
    }

    #[test]
    fn hamming_examples() {
        let x = bs("110010");
        assert_eq!(hamming(&x, &x).unwrap(), 0);
        assert_eq!(hamming(&BitString::ones(13), &BitString::zeros(13)).unwrap(), 13);
        assert_eq!(hamming(&x, &bs("101010")).unwrap(), 2);
    }

    #[test]
    fn hamming_length_mismatch() {
        let err = hamming(&bs("101"), &bs("1010")).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn multiword_strings() {
        let x = BitString::ones(130);
        assert_eq!(x.ones_count(), 130);
        assert_eq!(x.complement().ones_count(), 0);
        assert!(x.is_all_ones());
        let y = x.with_flipped(129);
        assert_eq!(y.ones_count(), 129);
        assert!(!y.get(129));
        assert_eq!(hamming(&x, &y).unwrap(), 1);
    }

    #[test]
    fn display_round_trip() {
        let x = bs("0110001");
        assert_eq!(x.to_string(), "0110001");
        assert!("01a".parse::<BitString>().is_err());
        assert!("".parse::<BitString>().is_err());
    }

    #[test]
    fn random_length_one() {
        let mut rng = RandomSource::new(5);
        let x = BitString::random(1, &mut rng);
        assert_eq!(x.len(), 1);
        assert!(x.ones_count() <= 1);
    }

    #[test]
    fn random_is_seeded() {
        let a = BitString::random(100, &mut RandomSource::new(9));
        let b = BitString::random(100, &mut RandomSource::new(9));
        assert_eq!(a, b);
    }

    #[test]
    fn random_mean_ones() {
        let mut rng = RandomSource::new(11);
        let draws = 100_000;
        let total: usize = (0..draws).map(|_| BitString::random(20, &mut rng).ones_count()).sum();
        let mean = total as f64 / draws as f64;
        assert!((9.9..=10.1).contains(&mean), "mean {mean}");
    }

    #[test]
    fn max_pair_unique() {
        let s = [bs("1100"), bs("0011"), bs("1110")];
        let refs: Vec<_> = s.iter().collect();
        let p = max_hamming_pair(&refs, &mut RandomSource::new(0)).unwrap();
        assert_eq!((p.first, p.second, p.distance), (0, 1, 4));
    }

    #[test]
    fn max_pair_duplicates() {
        let x = bs("1011");
        let p = max_hamming_pair(&[&x, &x], &mut RandomSource::new(0)).unwrap();
        assert_eq!(p.distance, 0);
    }

    #[test]
    fn max_pair_needs_two() {
        let x = bs("1011");
        assert!(matches!(max_hamming_pair(&[&x], &mut RandomSource::new(0)), Err(Error::TooFewSolutions(1))));
    }

    #[test]
    fn max_pair_tie_is_uniform() {
        // All four strings of length 2: the maximising pairs are the two
        // complement pairs {00,11} and {01,10}, each at distance 2. Checked by
        // enumerating all six pairs.
        let s = [bs("00"), bs("01"), bs("10"), bs("11")];
        let refs: Vec<_> = s.iter().collect();
        let mut brute = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                brute.push((i, j, hamming(&s[i], &s[j]).unwrap()));
            }
        }
        let max = brute.iter().map(|t| t.2).max().unwrap();
        let maximisers: Vec<_> = brute.iter().filter(|t| t.2 == max).map(|t| (t.0, t.1)).collect();
        assert_eq!(maximisers, vec![(0, 3), (1, 2)]);

        let mut rng = RandomSource::new(2024);
        let trials = 10_000;
        let mut hits = [0usize; 2];
        for _ in 0..trials {
            let p = max_hamming_pair(&refs, &mut rng).unwrap();
            let k = maximisers.iter().position(|&m| m == (p.first, p.second)).unwrap();
            hits[k] += 1;
        }
        let expected = trials as f64 / 2.0;
        let chi2: f64 = hits.iter().map(|&h| (h as f64 - expected).powi(2) / expected).sum();
        // chi-square, 1 dof, p = 0.001 critical value
        assert!(chi2 < 10.828, "chi2 {chi2}, hits {hits:?}");
    }
}
