use crate::bitstring::BitString;
use crate::problems::{ObjectiveVector, Problem};

/// A genome together with its (cached) objective vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub genome: BitString,
    pub objectives: ObjectiveVector,
}

impl Individual {
    pub fn evaluate(genome: BitString, problem: &Problem) -> Self {
        let objectives = problem.evaluate(&genome);
        Self { genome, objectives }
    }
}

/// Returned by a step when running it would exceed the evaluation budget.
/// The state is left untouched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExhausted;

impl std::fmt::Display for BudgetExhausted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("evaluation budget exhausted")
    }
}

impl std::error::Error for BudgetExhausted {}
