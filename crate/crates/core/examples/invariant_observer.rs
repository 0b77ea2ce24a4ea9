//! Watching an algorithm from the inside through an `Observer`.
//!
//! Counts SMS-EMOA removals and checks on the fly that every duplicated
//! objective vector in the last layer has zero hypervolume contribution.

use std::collections::HashMap;

use ea_diversity::sms::{default_population_size, delta_contributions, sms_step, SmsConfig, SmsState};
use ea_diversity::{GoalTracker, ObjectiveVector, Observer, Problem, RandomSource, VariationConfig};

#[derive(Default)]
struct DuplicateWatch {
    removals: u64,
    with_duplicates: u64,
    violations: u64,
}

impl Observer for DuplicateWatch {
    fn on_sms_removal(&mut self, last: &[ObjectiveVector], deltas: Option<&[u64]>) {
        self.removals += 1;
        let computed;
        let deltas = match deltas {
            Some(d) => d,
            None => {
                computed = delta_contributions(last, &[0, 0]).expect("points above the reference");
                &computed
            }
        };
        let mut counts: HashMap<ObjectiveVector, usize> = HashMap::new();
        for v in last {
            *counts.entry(*v).or_default() += 1;
        }
        if counts.values().any(|&c| c > 1) {
            self.with_duplicates += 1;
        }
        self.violations += last.iter().zip(deltas).filter(|(v, &d)| counts[v] > 1 && d != 0).count() as u64;
    }
}

fn main() -> ea_diversity::Result<()> {
    let problem = Problem::ojzj(14, 3)?;
    let cfg = SmsConfig::new(default_population_size(problem.params()), VariationConfig::new(0.5)?, true, 10_000_000)?;
    let mut watch = DuplicateWatch::default();
    let mut rng = RandomSource::new(11);
    let mut state = SmsState::initialize(&cfg, &problem, &mut rng);
    let mut goal = GoalTracker::new(&problem);
    while !goal.reached_descending(state.distinct_objectives()) {
        if sms_step(&mut state, &cfg, &problem, &mut rng, &mut watch).is_err() {
            break;
        }
    }
    println!(
        "{} evaluations, {} removals, {} with duplicates in the last layer, {} violations",
        state.evaluations, watch.removals, watch.with_duplicates, watch.violations
    );
    Ok(())
}
