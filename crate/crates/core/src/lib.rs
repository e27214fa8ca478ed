//! Choosing where to bootstrap in a circuit evaluated under homomorphic
//! encryption.
//!
//! Gate outputs carry a noise level: inputs start at 0, linear (blue) gates
//! take the maximum of their inputs and multiplicative (red) gates add one.
//! Bootstrapping a gate output resets what its successors see to 0. Given a
//! budget `L`, the goal is a smallest set of bootstrapped vertices keeping
//! every level at most `L`.
//!
//! The main pipeline solves an LP relaxation with one covering constraint
//! per interesting path ([`lp::solve_relaxation`]) and rounds it through the
//! level-indexed distance tables ([`rounding::derandomized_round`]), which
//! yields a feasible marking of size at most `L` times the optimum.

pub mod baselines;
pub mod circuit;
pub mod dvd;
pub mod error;
pub mod exact;
pub mod format;
pub mod generate;
pub mod length;
pub mod lp;
pub mod paths;
pub mod rounding;
pub mod weights;

pub use circuit::{Budget, Circuit, CircuitBuilder, Color, LevelAssignment, MarkSet, VertexId};
pub use error::{Error, Result};
pub use length::Length;
pub use weights::FractionalWeights;

use lp::LpResult;
use rounding::RoundingOutcome;

/// LP relaxation followed by derandomized rounding.
pub fn approximate(circuit: &Circuit, budget: Budget) -> Result<(LpResult, RoundingOutcome)> {
    let relaxation = lp::solve_relaxation(circuit, budget)?;
    let outcome = rounding::derandomized_round(circuit, &relaxation.tables)?;
    Ok((relaxation, outcome))
}
