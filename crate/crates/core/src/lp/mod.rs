//! LP relaxation over interesting-path constraints, solved by row generation.
//!
//! The master starts with no rows (`x = 0`). Each round recomputes the level
//! tables at the current point, adds one most-violated path per red final
//! vertex whose `f_{L+1}` is below `1 - VIOLATION_TOL`, and re-optimizes.
//! Rows that went slack are dropped after every round that raised the
//! objective; they come back through separation if they are violated again.

mod simplex;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

pub use simplex::{CoveringLp, PIVOT_TOL};

use crate::circuit::{Budget, Circuit, VertexId};
use crate::error::{Error, Result};
use crate::paths::{extract_violated_paths, level_lengths, LevelTables};
use crate::weights::FractionalWeights;

/// Rows whose surplus exceeds this are dropped from the master.
const PRUNE_SLACK: f64 = 1e-6;
const PRUNE_GAIN: f64 = 1e-9;

/// Optimal point of `min sum x` over the given covering rows with `0 <= x <= 1`.
pub fn solve_restricted_master(
    n: usize,
    rows: &[Vec<VertexId>],
) -> Result<(FractionalWeights, f64)> {
    if let Some(v) = rows.iter().flatten().find(|v| v.index() >= n) {
        return Err(Error::UnknownVertex(*v));
    }
    let mut lp = CoveringLp::from_rows(rows);
    lp.solve()?;
    Ok((FractionalWeights::from_vec(lp.solution(n)), lp.objective()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub objective: f64,
    pub rows_added: usize,
}

#[derive(Clone, Debug)]
pub struct LpResult {
    pub weights: FractionalWeights,
    pub objective: f64,
    pub constraints_generated: usize,
    pub iterations: usize,
    pub trace: Vec<IterationRecord>,
    /// Level tables at `weights`; they certify that no constraint is violated.
    pub tables: LevelTables,
}

impl LpResult {
    /// Tab-separated `iteration objective rows_added` lines.
    pub fn trace_tsv(&self) -> String {
        let mut out = String::from("iteration\tobjective\trows_added\n");
        for rec in &self.trace {
            let _ = writeln!(
                out,
                "{}\t{:.12}\t{}",
                rec.iteration, rec.objective, rec.rows_added
            );
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RelaxationOptions {
    /// Defaults to `10 * |V| * L`.
    pub max_iterations: Option<usize>,
    /// Wall-clock budget, checked between rounds and inside the simplex.
    pub time_limit: Option<Duration>,
}

pub fn solve_relaxation(circuit: &Circuit, budget: Budget) -> Result<LpResult> {
    solve_relaxation_with(circuit, budget, RelaxationOptions::default())
}

pub fn solve_relaxation_with(
    circuit: &Circuit,
    budget: Budget,
    options: RelaxationOptions,
) -> Result<LpResult> {
    let n = circuit.len();
    let cap = options
        .max_iterations
        .unwrap_or_else(|| (10 * n * budget.get()).max(1));
    let deadline = options
        .time_limit
        .map(|limit| (Instant::now() + limit, limit));
    let fresh_master = |rows: &[Vec<VertexId>]| {
        let mut lp = CoveringLp::from_rows(rows);
        if let Some((at, limit)) = deadline {
            lp.set_deadline(at, limit);
        }
        lp
    };
    let mut lp = fresh_master(&[]);
    let mut seen: HashSet<Vec<VertexId>> = HashSet::new();
    let mut x = FractionalWeights::zeros(n);
    let mut trace = Vec::new();
    let mut rebuilt = false;
    let mut generated = 0;
    let mut last_objective = 0.0;

    for iteration in 0.. {
        let tables = level_lengths(circuit, budget, &x);
        let mut fresh = Vec::new();
        let mut violated = 0;
        for path in extract_violated_paths(&tables, circuit) {
            violated += 1;
            let mut row = path.non_final().to_vec();
            row.sort_unstable();
            row.dedup();
            if seen.insert(row.clone()) {
                fresh.push(row);
            }
        }
        if violated == 0 {
            return Ok(LpResult {
                objective: x.sum(),
                weights: x,
                constraints_generated: generated,
                iterations: iteration,
                trace,
                tables,
            });
        }
        if iteration >= cap {
            return Err(Error::IterationLimitExceeded(cap));
        }
        if let Some((at, limit)) = deadline {
            if Instant::now() >= at {
                return Err(Error::TimeLimitExceeded(limit));
            }
        }
        if fresh.is_empty() {
            // every violated row is already in the master: tableau drift
            if rebuilt {
                return Err(Error::NumericalFailure(
                    "known rows remain violated after a fresh re-solve".into(),
                ));
            }
            rebuilt = true;
            lp = fresh_master(lp.rows());
        } else {
            rebuilt = false;
            generated += fresh.len();
            for row in &fresh {
                lp.add_row(row);
            }
        }
        if let Err(err) = lp.solve() {
            if rebuilt {
                return Err(err);
            }
            rebuilt = true;
            lp = fresh_master(lp.rows());
            lp.solve()?;
        }
        x = FractionalWeights::from_vec(lp.solution(n));
        let objective = lp.objective();
        // pruning only after strict progress keeps the row sets from cycling
        if objective > last_objective + PRUNE_GAIN {
            for row in lp.prune_slack_rows(PRUNE_SLACK) {
                seen.remove(&row);
            }
        }
        last_objective = objective;
        trace.push(IterationRecord {
            iteration,
            objective,
            rows_added: fresh.len(),
        });
    }
    unreachable!()
}
