//! (μ+1)-GA on Jump, with and without diversity-aware removal.
//!
//! ```text
//! cargo run --release --example jump_ga -- [n] [k] [runs]
//! ```

use ea_diversity::ga::{ga_step, GaConfig, GaState};
use ea_diversity::{Problem, RandomSource, VariationConfig};

fn arg(i: usize, default: usize) -> usize {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> ea_diversity::Result<()> {
    let (n, k, runs) = (arg(1, 20), arg(2, 4), arg(3, 20) as u64);
    let problem = Problem::jump(n, k)?;

    for diversity in [false, true] {
        let cfg = GaConfig::new(2, VariationConfig::new(0.5)?, diversity, 100_000_000)?;
        let mut total = 0u64;
        for seed in 0..runs {
            let mut rng = RandomSource::for_replication(1, seed);
            let mut state = GaState::initialize(&cfg, &problem, &mut rng);
            while !problem.is_success(state.population.iter().map(|ind| &ind.genome)) {
                if ga_step(&mut state, &cfg, &problem, &mut rng).is_err() {
                    break;
                }
            }
            total += state.evaluations;
        }
        let label = if diversity { "diversity" } else { "original" };
        println!("Jump n={n} k={k} {label:>9}: {:.0} evaluations on average", total as f64 / runs as f64);
    }
    Ok(())
}
