//! Evolutionary algorithms for multimodal pseudo-Boolean benchmarks, with
//! optional diversity maintenance in the solution space.
//!
//! Three algorithms are provided, each with its classic population update and
//! a diversity-aware variant that, among solutions of equal objective value,
//! protects a pair at maximum Hamming distance:
//!
//! - [`ga`]: the steady-state (μ+1) genetic algorithm, on Jump.
//! - [`nsga2`]: NSGA-II, on OneJumpZeroJump.
//! - [`sms`]: the steady-state SMS-EMOA with exact 2-D hypervolume, on
//!   OneJumpZeroJump.
//!
//! [`harness`] runs seeded experiment sweeps and writes CSV records and SVG
//! charts; [`oracles`] holds brute-force references used by the tests.

pub mod bitstring;
pub mod error;
pub mod ga;
pub mod harness;
pub mod individual;
pub mod nsga2;
pub mod observe;
pub mod oracles;
pub mod problems;
pub mod rng;
pub mod sms;
pub mod variation;

pub use bitstring::{hamming, max_hamming_pair, BitString, HammingPair};
pub use error::{Error, Result};
pub use individual::{BudgetExhausted, Individual};
pub use observe::Observer;
pub use problems::{
    dominates, jump_eval, ojzj_eval, pareto_front, Dominance, GoalTracker, ObjectiveVector, Problem, ProblemParams,
};
pub use rng::{derive_seed, Geometric, RandomSource};
pub use variation::VariationConfig;
