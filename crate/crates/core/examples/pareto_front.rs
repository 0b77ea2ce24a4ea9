//! Closed-form OneJumpZeroJump front against exhaustive enumeration.

use ea_diversity::oracles::{brute_pareto_front, OracleBudget};
use ea_diversity::{ojzj_eval, pareto_front, BitString, Problem};

fn main() -> ea_diversity::Result<()> {
    let problem = Problem::ojzj(10, 3)?;
    let front = pareto_front(problem.params());
    let brute = brute_pareto_front(&problem, &OracleBudget::default())?;
    println!("n=10 k=3: {} points, matches enumeration: {}", front.len(), front == brute);
    for v in &front {
        println!("  ({:>2}, {:>2})", v.get(0), v.get(1));
    }

    // Inside the gaps both objectives drop.
    let x = BitString::with_leading_ones(10, 9);
    let v = ojzj_eval(&x, problem.params());
    println!("nine ones -> ({}, {})", v.get(0), v.get(1));
    Ok(())
}
