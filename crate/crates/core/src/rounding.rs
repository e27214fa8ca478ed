//! Threshold rounding of an LP point through the level tables.
//!
//! For a threshold `t`, vertex `v` is marked iff `f_i(v) <= t <= f_i(v) + x_v`
//! for some `i` in `1..=L`. Every `t` in `[0, 1]` yields a feasible marking,
//! and a uniform `t` marks `v` with probability at most `L * x_v`. The
//! marking is a step function of `t` that can only change at the values
//! `f_i(v)` and `f_i(v) + x_v`, so probing every such breakpoint and one
//! point strictly between each consecutive pair covers all outcomes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, MarkSet, VertexId};
use crate::error::{Error, Result};
use crate::paths::LevelTables;

/// Slack applied to both ends of every rounding interval.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct RoundingOutcome {
    pub marks: MarkSet,
    pub t_used: f64,
    pub cardinality: usize,
}

/// Finite rounding intervals `[f_i(v) - tol, f_i(v) + x_v + tol]` of `v`.
fn intervals(tables: &LevelTables, v: VertexId) -> impl Iterator<Item = (f64, f64)> + '_ {
    let x = tables.weights().get(v);
    (1..=tables.budget().get()).filter_map(move |i| {
        tables
            .get(i, v)
            .value()
            .map(|f| (f - MEMBERSHIP_TOL, f + x + MEMBERSHIP_TOL))
    })
}

pub fn round_at(tables: &LevelTables, t: f64) -> MarkSet {
    let n = tables.vertex_count();
    MarkSet::from_ids(
        n,
        (0..n)
            .map(VertexId::from)
            .filter(|&v| intervals(tables, v).any(|(lo, hi)| lo <= t && t <= hi)),
    )
}

/// Sorted distinct values `f_i(v)` and `f_i(v) + x_v` (`i <= L`, finite
/// only) clamped to `[0, 1]`, with both endpoints included.
pub fn breakpoints(tables: &LevelTables) -> Vec<f64> {
    let mut points = vec![0.0, 1.0];
    for v in (0..tables.vertex_count()).map(VertexId::from) {
        let x = tables.weights().get(v);
        for i in 1..=tables.budget().get() {
            if let Some(f) = tables.get(i, v).value() {
                points.push(f.clamp(0.0, 1.0));
                points.push((f + x).clamp(0.0, 1.0));
            }
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// Breakpoints interleaved with the midpoints of consecutive breakpoints.
pub fn candidate_thresholds(tables: &LevelTables) -> Vec<f64> {
    let points = breakpoints(tables);
    let mut out = Vec::with_capacity(2 * points.len());
    for w in points.windows(2) {
        out.push(w[0]);
        out.push(0.5 * (w[0] + w[1]));
    }
    out.extend(points.last());
    out
}

/// Number of marked vertices at each candidate, by a sweep over the merged
/// intervals of every vertex.
fn cardinalities(tables: &LevelTables, candidates: &[f64]) -> Vec<usize> {
    let mut diff = vec![0i64; candidates.len() + 1];
    let mut spans: Vec<(f64, f64)> = Vec::new();
    for v in (0..tables.vertex_count()).map(VertexId::from) {
        spans.clear();
        spans.extend(intervals(tables, v));
        spans.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(spans.len());
        for &(lo, hi) in &spans {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        for (lo, hi) in merged {
            let first = candidates.partition_point(|&c| c < lo);
            let past = candidates.partition_point(|&c| c <= hi);
            if first < past {
                diff[first] += 1;
                diff[past] -= 1;
            }
        }
    }
    let mut running = 0i64;
    diff[..candidates.len()]
        .iter()
        .map(|d| {
            running += d;
            running as usize
        })
        .collect()
}

/// Best feasible marking over all candidate thresholds: minimum
/// cardinality, then smallest `t`. Candidates are verified with the integer
/// level recursion in that order, so the first feasible one is the answer.
pub fn derandomized_round(circuit: &Circuit, tables: &LevelTables) -> Result<RoundingOutcome> {
    let candidates = candidate_thresholds(tables);
    let sizes = cardinalities(tables, &candidates);
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by_key(|&k| (sizes[k], k));
    for k in order {
        let t = candidates[k];
        let marks = round_at(tables, t);
        debug_assert_eq!(marks.len(), sizes[k]);
        if circuit.is_feasible_by_levels(&marks, tables.budget()) {
            return Ok(RoundingOutcome {
                cardinality: marks.len(),
                marks,
                t_used: t,
            });
        }
    }
    Err(Error::NoFeasibleCandidate)
}

/// Rounding at a threshold drawn uniformly from `[0, 1]` by a seeded ChaCha8
/// generator.
pub fn randomized_round(
    circuit: &Circuit,
    tables: &LevelTables,
    seed: u64,
) -> Result<RoundingOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t: f64 = rng.gen_range(0.0..=1.0);
    let marks = round_at(tables, t);
    if !circuit.is_feasible_by_levels(&marks, tables.budget()) {
        return Err(Error::NoFeasibleCandidate);
    }
    Ok(RoundingOutcome {
        cardinality: marks.len(),
        marks,
        t_used: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Budget, CircuitBuilder, Color};
    use crate::paths::level_lengths;
    use crate::weights::FractionalWeights;

    fn red_chain(reds: usize) -> Circuit {
        let mut b = CircuitBuilder::new();
        let mut prev = b.add_vertex("w", Color::White);
        for i in 1..=reds {
            let r = b.add_vertex(format!("r{i}"), Color::Red);
            b.add_edge(prev, r, 2);
            prev = r;
        }
        b.build().unwrap()
    }

    #[test]
    fn zero_weights_without_paths_mark_nothing() {
        let c = red_chain(2);
        let budget = Budget::new(2).unwrap();
        let t = level_lengths(&c, budget, &FractionalWeights::zeros(3));
        for &th in &[1e-6, 0.3, 0.5, 1.0] {
            assert!(round_at(&t, th).is_empty());
        }
        let out = derandomized_round(&c, &t).unwrap();
        assert!(out.marks.is_empty());
    }

    #[test]
    fn unit_weight_on_first_red_is_always_marked() {
        for l in 1..4 {
            let c = red_chain(l + 1);
            let mut x = FractionalWeights::zeros(c.len());
            x.set(VertexId(1), 1.0);
            let t = level_lengths(&c, Budget::new(l).unwrap(), &x);
            for k in 0..=20 {
                let marks = round_at(&t, k as f64 / 20.0);
                assert!(marks.contains(VertexId(1)));
                assert!(c.is_feasible_by_levels(&marks, t.budget()));
            }
            let out = derandomized_round(&c, &t).unwrap();
            assert_eq!(out.cardinality, 1);
        }
    }

    #[test]
    fn breakpoint_examples() {
        let c = red_chain(1);
        let budget = Budget::new(1).unwrap();
        let mut x = FractionalWeights::zeros(2);
        x.set(VertexId(1), 0.2);
        // white vertex only: every entry infinite
        let white_only = Circuit::validate(vec![("w".into(), Color::White)], vec![]).unwrap();
        let t = level_lengths(&white_only, budget, &FractionalWeights::zeros(1));
        assert_eq!(breakpoints(&t), vec![0.0, 1.0]);
        // f_1(r1) = 0 and x = 0.2
        let t = level_lengths(&c, budget, &x);
        assert_eq!(breakpoints(&t), vec![0.0, 0.2, 1.0]);
        assert_eq!(candidate_thresholds(&t), vec![0.0, 0.1, 0.2, 0.6, 1.0]);
    }

    #[test]
    fn randomized_is_reproducible() {
        let c = red_chain(5);
        let budget = Budget::new(2).unwrap();
        let lp = crate::lp::solve_relaxation(&c, budget).unwrap();
        let a = randomized_round(&c, &lp.tables, 7).unwrap();
        let b = randomized_round(&c, &lp.tables, 7).unwrap();
        assert_eq!(a, b);
    }
}
