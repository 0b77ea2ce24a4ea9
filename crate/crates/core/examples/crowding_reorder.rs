//! Crowding distance on a front with repeated objective vectors, with and
//! without moving a farthest-apart pair of each tie group to the boundary.

use ea_diversity::nsga2::crowding_distance;
use ea_diversity::{Individual, Problem, RandomSource};

fn main() -> ea_diversity::Result<()> {
    let problem = Problem::ojzj(8, 2)?;
    let genomes = ["11111100", "11110011", "00111111", "11001111", "11110000", "00001111"];
    let front: Vec<_> = genomes.iter().map(|g| Individual::evaluate(g.parse().unwrap(), &problem)).collect();
    let refs: Vec<_> = front.iter().collect();

    for reorder in [false, true] {
        let c = crowding_distance(&refs, reorder, &mut RandomSource::new(3));
        println!("reorder = {reorder}");
        for (ind, d) in front.iter().zip(&c.total) {
            println!("  {} {:?} crowding {d}", ind.genome, ind.objectives.as_slice());
        }
    }
    Ok(())
}
