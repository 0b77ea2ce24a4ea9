use std::collections::BTreeMap;

use statrs::distribution::{ContinuousCDF, Normal};

use super::config::{AlgorithmKind, ProblemKind};
use super::runner::RunRecord;
use crate::nsga2::Selection;

pub fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Some(if sorted.len().is_multiple_of(2) { (sorted[mid - 1] + sorted[mid]) / 2.0 } else { sorted[mid] })
}

/// Sample standard deviation (`n - 1` denominator); 0 for a single value.
pub fn std_dev(values: &[f64]) -> Option<f64> {
    let m = mean(values)?;
    if values.len() < 2 {
        return Some(0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - m).powi(2)).sum();
    Some((ss / (values.len() - 1) as f64).sqrt())
}

/// One-sided Mann-Whitney U test of "`a` tends to be smaller than `b`".
///
/// Normal approximation with tie correction and continuity correction.
/// Returns the p-value.
pub fn mann_whitney_less(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    assert!(!a.is_empty() && !b.is_empty(), "samples must be non-empty");

    let mut pooled: Vec<(f64, bool)> = a.iter().map(|&v| (v, true)).chain(b.iter().map(|&v| (v, false))).collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));

    let total = pooled.len() as f64;
    let mut rank_sum_a = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i + 1;
        while j < pooled.len() && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        let t = (j - i) as f64;
        // Midrank of positions i+1 ..= j.
        let rank = (i + 1 + j) as f64 / 2.0;
        rank_sum_a += rank * pooled[i..j].iter().filter(|p| p.1).count() as f64;
        tie_term += t * t * t - t;
        i = j;
    }

    let u_a = rank_sum_a - na * (na + 1.0) / 2.0;
    let expected = na * nb / 2.0;
    let variance = na * nb / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if variance <= 0.0 {
        return 1.0;
    }
    let z = (u_a - expected + 0.5) / variance.sqrt();
    Normal::standard().cdf(z)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SummaryKey {
    pub algo: AlgorithmKind,
    pub problem: ProblemKind,
    pub n: usize,
    pub k: usize,
    pub mu: usize,
    /// `pc` as IEEE bits; ordering is monotone for the non-negative values used.
    pub pc_bits: u64,
    pub diversity: bool,
    pub selection: Option<Selection>,
}

impl SummaryKey {
    pub fn of(r: &RunRecord) -> Self {
        Self {
            algo: r.algo,
            problem: r.problem,
            n: r.n,
            k: r.k,
            mu: r.mu,
            pc_bits: r.pc.to_bits(),
            diversity: r.diversity,
            selection: r.selection,
        }
    }

    pub fn pc(&self) -> f64 {
        f64::from_bits(self.pc_bits)
    }
}

/// Statistics of one configuration. Mean, median and standard deviation are
/// over successful runs and absent when there are none.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub key: SummaryKey,
    pub runs: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub std_dev: Option<f64>,
}

pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<SummaryKey, Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(SummaryKey::of(r)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(key, rs)| {
            let evals: Vec<f64> = rs.iter().filter(|r| r.success).map(|r| r.evaluations as f64).collect();
            SummaryRow {
                key,
                runs: rs.len(),
                successes: evals.len(),
                success_rate: evals.len() as f64 / rs.len() as f64,
                mean: mean(&evals),
                median: median(&evals),
                std_dev: std_dev(&evals),
            }
        })
        .collect()
}

pub fn format_summary(rows: &[SummaryRow]) -> String {
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.1}"));
    let mut out = String::from(
        "algo      problem n   k  mu   pc    diversity selection  runs  success  mean         median       stddev\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{:<9} {:<7} {:<3} {:<2} {:<4} {:<5} {:<9} {:<10} {:<5} {:<8.3} {:<12} {:<12} {}\n",
            r.key.algo.as_str(),
            r.key.problem.as_str(),
            r.key.n,
            r.key.k,
            r.key.mu,
            r.key.pc(),
            if r.key.diversity { "on" } else { "off" },
            r.key.selection.map_or("none", |s| s.as_str()),
            r.runs,
            r.success_rate,
            opt(r.mean),
            opt(r.median),
            opt(r.std_dev),
        ));
    }
    out
}
