//! SMS-EMOA on OneJumpZeroJump, tracing how the Pareto front fills up.
//!
//! ```text
//! cargo run --release --example ojzj_sms_emoa -- [n] [k] [seed] [diversity: 0|1]
//! ```

use ea_diversity::sms::{default_population_size, sms_step, SmsConfig, SmsState};
use ea_diversity::{GoalTracker, Problem, RandomSource, VariationConfig};

fn arg(i: usize, default: u64) -> u64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> ea_diversity::Result<()> {
    let (n, k) = (arg(1, 16) as usize, arg(2, 4) as usize);
    let (seed, diversity) = (arg(3, 0), arg(4, 1) == 1);
    let problem = Problem::ojzj(n, k)?;
    let front_size = problem.params().front_size();
    let cfg =
        SmsConfig::new(default_population_size(problem.params()), VariationConfig::new(0.5)?, diversity, 50_000_000)?;
    cfg.validate_for(&problem)?;

    let mut rng = RandomSource::new(seed);
    let mut state = SmsState::initialize(&cfg, &problem, &mut rng);
    let mut goal = GoalTracker::new(&problem);
    let mut covered = 0;
    loop {
        let optimal = state.distinct_objectives().iter().filter(|v| v.sum() == (n + 2 * k) as i64).count();
        if optimal != covered {
            covered = optimal;
            println!("{:>10} evaluations: {covered}/{front_size} front points", state.evaluations);
        }
        if goal.reached_descending(state.distinct_objectives()) {
            println!("whole front covered after {} evaluations", state.evaluations);
            break;
        }
        if sms_step(&mut state, &cfg, &problem, &mut rng, &mut ()).is_err() {
            println!("budget exhausted");
            break;
        }
    }
    Ok(())
}
