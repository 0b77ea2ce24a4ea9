use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rng::RandomSource;

/// Parent selection scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    /// Every member once, in uniformly random order.
    Fair,
    /// `μ` independent uniform draws with replacement.
    Uniform,
    /// `μ` binary tournaments (two uniform draws with replacement).
    Tournament,
}

impl Selection {
    pub fn as_str(&self) -> &'static str {
        match self {
            Selection::Fair => "fair",
            Selection::Uniform => "uniform",
            Selection::Tournament => "tournament",
        }
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Selection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fair" => Ok(Selection::Fair),
            "uniform" => Ok(Selection::Uniform),
            "tournament" => Ok(Selection::Tournament),
            other => Err(Error::Config(format!("unknown selection scheme {other:?}"))),
        }
    }
}

/// Rank (0 is best) and crowding distance used by tournaments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    pub rank: usize,
    pub crowding: f64,
}

fn better(a: &Score, b: &Score) -> Ordering {
    b.rank.cmp(&a.rank).then(a.crowding.total_cmp(&b.crowding))
}

/// Indices of `count` parents drawn from a population of `size`.
///
/// `scores` is only consulted by tournament selection and must then hold one
/// entry per member.
pub fn select_parents(
    size: usize,
    count: usize,
    scheme: Selection,
    scores: Option<&[Score]>,
    rng: &mut RandomSource,
) -> Vec<usize> {
    match scheme {
        Selection::Fair => {
            debug_assert_eq!(size, count);
            let mut order: Vec<usize> = (0..size).collect();
            rng.shuffle(&mut order);
            order
        }
        Selection::Uniform => (0..count).map(|_| rng.below(size)).collect(),
        Selection::Tournament => {
            let scores = scores.expect("tournament selection needs scores");
            (0..count)
                .map(|_| {
                    let a = rng.below(size);
                    let b = rng.below(size);
                    match better(&scores[a], &scores[b]) {
                        Ordering::Greater => a,
                        Ordering::Less => b,
                        Ordering::Equal => {
                            if rng.chance(0.5) {
                                a
                            } else {
                                b
                            }
                        }
                    }
                })
                .collect()
        }
    }
}
