//! Exact 2-D hypervolume and per-point contributions.

use ea_diversity::oracles::{grid_delta, grid_hypervolume};
use ea_diversity::sms::{delta_contributions, hypervolume_2d};
use ea_diversity::ObjectiveVector;

fn main() -> ea_diversity::Result<()> {
    let r = [0, 0];
    let front: Vec<_> =
        [(6, 1), (5, 3), (5, 3), (3, 4), (1, 6)].iter().map(|&(a, b)| ObjectiveVector::pair(a, b)).collect();

    let hv = hypervolume_2d(&front, &r)?;
    println!("HV = {hv} (unit-cell count {})", grid_hypervolume(&front, &r));
    let deltas = delta_contributions(&front, &r)?;
    for (i, (v, d)) in front.iter().zip(&deltas).enumerate() {
        println!("  {:?} contributes {d} (grid {})", v.as_slice(), grid_delta(i, &front, &r));
    }
    // The duplicated (5, 3) contributes nothing: removing one copy leaves the
    // dominated region unchanged.
    Ok(())
}
