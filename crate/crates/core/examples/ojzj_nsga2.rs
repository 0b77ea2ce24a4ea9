//! NSGA-II on OneJumpZeroJump under each parent selection scheme.
//!
//! ```text
//! cargo run --release --example ojzj_nsga2 -- [n] [k] [runs]
//! ```

use ea_diversity::nsga2::{default_population_size, nsga2_generation, Nsga2Config, Nsga2State, Selection};
use ea_diversity::{GoalTracker, Problem, RandomSource, VariationConfig};

fn arg(i: usize, default: usize) -> usize {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> ea_diversity::Result<()> {
    let (n, k, runs) = (arg(1, 16), arg(2, 4), arg(3, 10) as u64);
    let problem = Problem::ojzj(n, k)?;
    let mu = default_population_size(problem.params());
    println!("OneJumpZeroJump n={n} k={k}, mu={mu}, front size {}", problem.params().front_size());

    for selection in [Selection::Uniform, Selection::Fair, Selection::Tournament] {
        for diversity in [false, true] {
            let cfg = Nsga2Config::new(mu, VariationConfig::new(0.5)?, diversity, selection, 50_000_000)?;
            let mut evaluations = Vec::new();
            for seed in 0..runs {
                let mut rng = RandomSource::for_replication(2, seed);
                let mut state = Nsga2State::initialize(&cfg, &problem, &mut rng);
                let mut goal = GoalTracker::new(&problem);
                while !goal.reached(state.population.iter().map(|ind| ind.objectives)) {
                    if nsga2_generation(&mut state, &cfg, &problem, &mut rng, &mut ()).is_err() {
                        break;
                    }
                }
                evaluations.push(state.evaluations as f64);
            }
            let mean = evaluations.iter().sum::<f64>() / evaluations.len() as f64;
            println!("  {:<10} diversity={:<5} mean evaluations {mean:.0}", selection.as_str(), diversity);
        }
    }
    Ok(())
}
