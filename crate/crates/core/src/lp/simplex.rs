//! Bounded-variable primal simplex for covering programs
//!
//! ```text
//! minimize    sum_v x_v
//! subject to  sum_{v in row} x_v >= 1   for every row
//!             0 <= x_v <= 1
//! ```
//!
//! Each row is stored as `sum x - s_r (+ a_r) = 1` with a surplus `s_r >= 0`.
//! The dense tableau only holds columns for vertices that occur in some row;
//! every other vertex sits at zero. Rows added to a solved master are usually
//! violated at the current point, so they enter with an artificial basic
//! variable. The next solve minimizes the real objective plus a penalty on
//! the artificials, which is exact for covering rows, so no separate phase
//! one is needed.
//!
//! Pricing is Dantzig's largest reduced cost until a run of degenerate pivots
//! shows up, then Bland's rule takes over until the objective moves again.
//! The values are checked against the original rows every few dozen pivots
//! and before optimality is declared; once round-off shows, the tableau is
//! rebuilt from scratch.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::circuit::VertexId;
use crate::error::{Error, Result};

pub const PIVOT_TOL: f64 = 1e-12;
const COST_TOL: f64 = 1e-9;
/// Steps at most this long count as degenerate.
const DEGENERATE_STEP: f64 = 1e-12;
/// Bound relaxation in the ratio test.
const HARRIS_TOL: f64 = 1e-9;
/// In Bland mode, candidates below this share of the largest pivot are skipped.
const BLAND_PIVOT_SHARE: f64 = 0.1;
/// Tableau entries below this are treated as zero by the ratio test.
const RATIO_ENTRY_TOL: f64 = 1e-9;
const DROP_TOL: f64 = 1e-13;
const ARTIFICIAL_TOL: f64 = 1e-9;
/// Cost of an artificial; anything above 1 is an exact penalty here.
const ARTIFICIAL_PENALTY: f64 = 2.0;
/// Degenerate pivots in a row before switching to Bland's rule.
const STALL_LIMIT: usize = 50;
/// Pivots between consistency checks of the tableau against the rows.
const CHECK_INTERVAL: usize = 64;
/// Largest row residual tolerated before a rebuild.
const DRIFT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    Vertex(VertexId),
    Surplus(usize),
    Artificial(usize),
}

#[derive(Clone, Debug, Default)]
pub struct CoveringLp {
    kinds: Vec<Column>,
    upper: Vec<f64>,
    value: Vec<f64>,
    at_upper: Vec<bool>,
    /// Row in which each column is basic.
    basic_row: Vec<Option<usize>>,
    tableau: Vec<Vec<f64>>,
    basis: Vec<usize>,
    vertex_col: HashMap<VertexId, usize>,
    rows: Vec<Vec<VertexId>>,
    pivots: usize,
    since_check: usize,
    deadline: Option<(Instant, Duration)>,
}

impl CoveringLp {
    pub fn new() -> Self {
        Self::default()
    }

    /// Cold start at `x = 1` on every vertex in some row. Every row is then
    /// satisfied and the surplus basis is feasible, so no phase one is needed.
    pub fn from_rows(rows: &[Vec<VertexId>]) -> Self {
        let mut lp = Self::new();
        for row in rows {
            for &v in row {
                if !lp.vertex_col.contains_key(&v) {
                    let c = lp.push_column(Column::Vertex(v), 1.0);
                    lp.value[c] = 1.0;
                    lp.at_upper[c] = true;
                }
            }
        }
        for row in rows {
            lp.add_row(row);
        }
        lp
    }

    /// Makes `solve` fail with `TimeLimitExceeded(limit)` once `at` has passed.
    pub fn set_deadline(&mut self, at: Instant, limit: Duration) {
        self.deadline = Some((at, limit));
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    pub fn rows(&self) -> &[Vec<VertexId>] {
        &self.rows
    }

    fn push_column(&mut self, kind: Column, upper: f64) -> usize {
        let c = self.kinds.len();
        self.kinds.push(kind);
        self.upper.push(upper);
        self.value.push(0.0);
        self.at_upper.push(false);
        self.basic_row.push(None);
        for row in &mut self.tableau {
            row.push(0.0);
        }
        if let Column::Vertex(v) = kind {
            self.vertex_col.insert(v, c);
        }
        c
    }

    /// Adds `sum_{v in row} x_v >= 1`. Duplicate vertices count once.
    pub fn add_row(&mut self, vertices: &[VertexId]) {
        let mut members = vertices.to_vec();
        members.sort_unstable();
        members.dedup();
        let index = self.rows.len();

        let cols: Vec<usize> = members
            .iter()
            .map(|&v| match self.vertex_col.get(&v) {
                Some(&c) => c,
                None => self.push_column(Column::Vertex(v), 1.0),
            })
            .collect();
        let activity: f64 = cols.iter().map(|&c| self.value[c]).sum();
        let surplus = self.push_column(Column::Surplus(index), f64::INFINITY);
        let basic = if activity >= 1.0 {
            self.value[surplus] = activity - 1.0;
            surplus
        } else {
            let art = self.push_column(Column::Artificial(index), f64::INFINITY);
            self.value[art] = 1.0 - activity;
            art
        };

        let mut row = vec![0.0; self.kinds.len()];
        for &c in &cols {
            row[c] = 1.0;
        }
        row[surplus] = -1.0;
        if basic != surplus {
            row[basic] = 1.0;
        }
        for (k, &b) in self.basis.iter().enumerate() {
            let coef = row[b];
            if coef != 0.0 {
                eliminate(&mut row, &self.tableau[k], coef);
                row[b] = 0.0;
            }
        }
        let scale = row[basic];
        if scale != 1.0 {
            for r in &mut row {
                *r /= scale;
            }
        }
        row[basic] = 1.0;

        self.basic_row[basic] = Some(self.tableau.len());
        self.tableau.push(row);
        self.basis.push(basic);
        self.rows.push(members);
    }

    /// Re-optimizes after row additions.
    pub fn solve(&mut self) -> Result<()> {
        let is_artificial = |k: &Column| matches!(k, Column::Artificial(_));
        let has_artificials = self
            .kinds
            .iter()
            .zip(&self.upper)
            .any(|(k, &u)| is_artificial(k) && u > 0.0);
        if has_artificials {
            // Raising any x_v in a row by its artificial's value costs less
            // than the penalty saves, so an optimum of the penalized program
            // has every artificial at zero and is optimal for the real one.
            let cost: Vec<f64> = self
                .kinds
                .iter()
                .map(|k| match k {
                    Column::Vertex(_) => 1.0,
                    Column::Surplus(_) => 0.0,
                    Column::Artificial(_) => ARTIFICIAL_PENALTY,
                })
                .collect();
            self.run(&cost, true)?;
            let residual: f64 = self
                .kinds
                .iter()
                .zip(&self.value)
                .filter(|(k, _)| is_artificial(k))
                .map(|(_, &v)| v.max(0.0))
                .sum();
            if residual > ARTIFICIAL_TOL {
                return Err(Error::NumericalFailure(format!(
                    "penalized solve ended with artificial residual {residual:e}"
                )));
            }
            for c in 0..self.kinds.len() {
                if is_artificial(&self.kinds[c]) {
                    self.upper[c] = 0.0;
                    self.value[c] = 0.0;
                    self.at_upper[c] = false;
                }
            }
        }
        let cost: Vec<f64> = self
            .kinds
            .iter()
            .map(|k| matches!(k, Column::Vertex(_)) as u8 as f64)
            .collect();
        self.run(&cost, true)?;
        self.drop_dead_artificials();
        Ok(())
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut reduced = cost.to_vec();
        for (row, &b) in self.tableau.iter().zip(&self.basis) {
            let cb = cost[b];
            if cb != 0.0 {
                for (d, t) in reduced.iter_mut().zip(row) {
                    *d -= cb * t;
                }
            }
        }
        for &b in &self.basis {
            reduced[b] = 0.0;
        }
        reduced
    }

    fn eligible(&self, j: usize, reduced: &[f64]) -> bool {
        self.basic_row[j].is_none()
            && self.upper[j] > 0.0
            && if self.at_upper[j] {
                reduced[j] > COST_TOL
            } else {
                reduced[j] < -COST_TOL
            }
    }

    /// Largest violation of `sum x - s + a = 1` at the current values.
    /// Round-off in the tableau shows up here first.
    fn drift(&self) -> f64 {
        let mut residual: Vec<f64> = vec![-1.0; self.rows.len()];
        for (c, kind) in self.kinds.iter().enumerate() {
            match *kind {
                Column::Surplus(r) => residual[r] -= self.value[c],
                Column::Artificial(r) => residual[r] += self.value[c],
                Column::Vertex(_) => {}
            }
        }
        for (r, row) in self.rows.iter().enumerate() {
            residual[r] += row
                .iter()
                .map(|v| self.value[self.vertex_col[v]])
                .sum::<f64>();
        }
        residual.iter().map(|r| r.abs()).fold(0.0, f64::max)
    }

    /// Pivots to an optimum for `cost`. With `confirm`, optimality is only
    /// declared once the values agree with the original rows.
    fn run(&mut self, cost: &[f64], confirm: bool) -> Result<()> {
        let mut reduced = self.reduced_costs(cost);
        let pivot_limit = 1000 + 200 * (self.kinds.len() + self.tableau.len());
        let mut steps = 0usize;
        let mut stalled = 0usize;

        loop {
            if self.since_check >= CHECK_INTERVAL {
                if let Some((at, limit)) = self.deadline {
                    if Instant::now() >= at {
                        return Err(Error::TimeLimitExceeded(limit));
                    }
                }
                if self.drift() > DRIFT_TOL {
                    self.refactor()?;
                    reduced = self.reduced_costs(cost);
                }
                self.since_check = 0;
            }
            let bland = stalled >= STALL_LIMIT;
            let ncols = self.kinds.len();
            let entering = if bland {
                (0..ncols).find(|&j| self.eligible(j, &reduced))
            } else {
                (0..ncols)
                    .filter(|&j| self.eligible(j, &reduced))
                    .max_by(|&a, &b| {
                        reduced[a]
                            .abs()
                            .total_cmp(&reduced[b].abs())
                            .then(b.cmp(&a))
                    })
            };
            let Some(j) = entering else {
                if !confirm || self.drift() <= DRIFT_TOL {
                    return Ok(());
                }
                self.refactor()?;
                reduced = self.reduced_costs(cost);
                continue;
            };
            steps += 1;
            if steps > pivot_limit {
                return Err(Error::NumericalFailure(format!(
                    "no convergence after {pivot_limit} simplex steps"
                )));
            }
            let dir = if self.at_upper[j] { -1.0 } else { 1.0 };

            // Harris: bound the step with bounds relaxed by HARRIS_TOL, then
            // take the largest pivot among rows that block within it
            let rate_of = |a: f64| -dir * a;
            let mut relaxed = self.upper[j];
            for (row, &b) in self.tableau.iter().zip(&self.basis) {
                let a = row[j];
                if a.abs() <= RATIO_ENTRY_TOL {
                    continue;
                }
                let rate = rate_of(a);
                if rate < 0.0 {
                    relaxed = relaxed.min((self.value[b] + HARRIS_TOL) / -rate);
                } else if self.upper[b].is_finite() {
                    relaxed = relaxed.min((self.upper[b] - self.value[b] + HARRIS_TOL) / rate);
                }
            }
            let mut theta = self.upper[j];
            // (row, basic column, |entry|)
            let mut leaving: Option<(usize, usize, f64)> = None;
            if self.upper[j] > relaxed {
                let mut largest = 0.0f64;
                let mut blocking = Vec::new();
                for (r, (row, &b)) in self.tableau.iter().zip(&self.basis).enumerate() {
                    let a = row[j];
                    if a.abs() <= RATIO_ENTRY_TOL {
                        continue;
                    }
                    let rate = rate_of(a);
                    let limit = if rate < 0.0 {
                        self.value[b] / -rate
                    } else if self.upper[b].is_finite() {
                        (self.upper[b] - self.value[b]) / rate
                    } else {
                        continue;
                    };
                    if limit <= relaxed {
                        largest = largest.max(a.abs());
                        blocking.push((r, b, a.abs(), limit.max(0.0)));
                    }
                }
                let chosen = if bland {
                    // lowest index among the well-conditioned candidates
                    blocking
                        .iter()
                        .filter(|c| c.2 >= BLAND_PIVOT_SHARE * largest)
                        .min_by_key(|c| c.1)
                } else {
                    blocking
                        .iter()
                        .max_by(|x, y| x.2.total_cmp(&y.2).then(y.1.cmp(&x.1)))
                };
                if let Some(&(r, b, a, limit)) = chosen {
                    theta = limit;
                    leaving = Some((r, b, a));
                }
            }
            if !theta.is_finite() {
                return Err(Error::NumericalFailure(
                    "unbounded ray in a covering program".into(),
                ));
            }
            if theta > DEGENERATE_STEP {
                stalled = 0;
            } else {
                stalled += 1;
            }

            for (r, row) in self.tableau.iter().enumerate() {
                let a = row[j];
                if a != 0.0 {
                    let b = self.basis[r];
                    self.value[b] -= dir * a * theta;
                }
            }
            self.value[j] += dir * theta;

            match leaving {
                None => {
                    self.at_upper[j] = !self.at_upper[j];
                    self.value[j] = if self.at_upper[j] { self.upper[j] } else { 0.0 };
                }
                Some((r, b, _)) => {
                    let rate = -dir * self.tableau[r][j];
                    if rate < 0.0 {
                        self.value[b] = 0.0;
                        self.at_upper[b] = false;
                    } else {
                        self.value[b] = self.upper[b];
                        self.at_upper[b] = true;
                    }
                    self.basic_row[b] = None;
                    self.pivot(r, j, &mut reduced)?;
                    self.basis[r] = j;
                    self.basic_row[j] = Some(r);
                    self.at_upper[j] = false;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize, reduced: &mut [f64]) -> Result<()> {
        self.pivots += 1;
        self.since_check += 1;
        let p = self.tableau[r][j];
        if p.abs() < PIVOT_TOL {
            return Err(Error::NumericalFailure(format!("pivot magnitude {p:e}")));
        }
        let mut pivot_row = std::mem::take(&mut self.tableau[r]);
        for t in &mut pivot_row {
            *t /= p;
        }
        pivot_row[j] = 1.0;
        let mut support = support_of(&pivot_row);
        support.retain(|&(c, _)| c != j);
        for (k, row) in self.tableau.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let factor = row[j];
            if factor != 0.0 {
                eliminate_sparse(row, &support, factor);
                row[j] = 0.0;
            }
        }
        let factor = reduced[j];
        if factor != 0.0 {
            eliminate_sparse(reduced, &support, factor);
            reduced[j] = 0.0;
        }
        self.tableau[r] = pivot_row;
        Ok(())
    }

    /// Nonzeros of the original constraint column `c`.
    fn column_entries(
        &self,
        vertex_rows: &HashMap<VertexId, Vec<usize>>,
        c: usize,
    ) -> Vec<(usize, f64)> {
        match self.kinds[c] {
            Column::Vertex(v) => vertex_rows
                .get(&v)
                .map(|rs| rs.iter().map(|&r| (r, 1.0)).collect())
                .unwrap_or_default(),
            Column::Surplus(r) => vec![(r, -1.0)],
            Column::Artificial(r) => vec![(r, 1.0)],
        }
    }

    /// Recomputes the tableau and the basic values from the original rows
    /// and the current basis by Gauss-Jordan elimination with partial
    /// pivoting.
    fn refactor(&mut self) -> Result<()> {
        self.since_check = 0;
        let m = self.tableau.len();
        if m == 0 {
            return Ok(());
        }
        let ncols = self.kinds.len();
        let mut vertex_rows: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for &v in row {
                vertex_rows.entry(v).or_default().push(r);
            }
        }

        // [B | I] -> [I | B^-1]; row k of the inverse belongs to basis[k]
        let mut b = vec![vec![0.0; m]; m];
        for (k, &c) in self.basis.iter().enumerate() {
            for (r, a) in self.column_entries(&vertex_rows, c) {
                b[r][k] = a;
            }
        }
        let mut inv: Vec<Vec<f64>> = (0..m)
            .map(|r| {
                let mut e = vec![0.0; m];
                e[r] = 1.0;
                e
            })
            .collect();
        for k in 0..m {
            let p = (k..m)
                .max_by(|&x, &y| b[x][k].abs().total_cmp(&b[y][k].abs()))
                .expect("nonempty range");
            if b[p][k].abs() < PIVOT_TOL {
                return Err(Error::NumericalFailure(format!(
                    "singular basis at position {k}"
                )));
            }
            b.swap(k, p);
            inv.swap(k, p);
            let pivot = b[k][k];
            for t in b[k].iter_mut() {
                *t /= pivot;
            }
            for t in inv[k].iter_mut() {
                *t /= pivot;
            }
            let brow = support_of(&b[k]);
            let irow = support_of(&inv[k]);
            for r in 0..m {
                if r == k {
                    continue;
                }
                let factor = b[r][k];
                if factor != 0.0 {
                    eliminate_sparse(&mut b[r], &brow, factor);
                    eliminate_sparse(&mut inv[r], &irow, factor);
                    b[r][k] = 0.0;
                }
            }
        }

        for row in &mut self.tableau {
            row.iter_mut().for_each(|t| *t = 0.0);
        }
        for c in 0..ncols {
            let entries = self.column_entries(&vertex_rows, c);
            for (k, row) in self.tableau.iter_mut().enumerate() {
                let t: f64 = entries.iter().map(|&(r, a)| inv[k][r] * a).sum();
                row[c] = if t.abs() < DROP_TOL { 0.0 } else { t };
            }
        }
        for (k, &c) in self.basis.iter().enumerate() {
            for (r, row) in self.tableau.iter_mut().enumerate() {
                row[c] = (r == k) as u8 as f64;
            }
        }

        let mut rhs = vec![1.0; m];
        for c in 0..ncols {
            if self.basic_row[c].is_some() {
                continue;
            }
            self.value[c] = if self.at_upper[c] { self.upper[c] } else { 0.0 };
            if self.value[c] != 0.0 {
                for (r, a) in self.column_entries(&vertex_rows, c) {
                    rhs[r] -= a * self.value[c];
                }
            }
        }
        for (k, &c) in self.basis.iter().enumerate() {
            self.value[c] = inv[k].iter().zip(&rhs).map(|(i, r)| i * r).sum();
        }
        Ok(())
    }

    /// Removes nonbasic artificial columns that phase one already drove out.
    fn drop_dead_artificials(&mut self) {
        let keep: Vec<bool> = (0..self.kinds.len())
            .map(|c| !matches!(self.kinds[c], Column::Artificial(_)) || self.basic_row[c].is_some())
            .collect();
        self.retain_columns(&keep);
    }

    /// Deletes every row whose surplus is basic above `slack` and returns
    /// them. Such rows have zero dual value, so the current point stays
    /// optimal for what remains, and the remaining tableau rows are exact
    /// because the dropped equations only determined their own surplus.
    pub fn prune_slack_rows(&mut self, slack: f64) -> Vec<Vec<VertexId>> {
        let m = self.rows.len();
        let mut has_artificial = vec![false; m];
        for k in &self.kinds {
            if let Column::Artificial(r) = *k {
                has_artificial[r] = true;
            }
        }
        let mut drop_row = vec![false; m];
        let mut keep_col = vec![true; self.kinds.len()];
        for &b in &self.basis {
            if let Column::Surplus(r) = self.kinds[b] {
                if self.value[b] > slack && !has_artificial[r] {
                    drop_row[r] = true;
                    keep_col[b] = false;
                }
            }
        }
        if !drop_row.contains(&true) {
            return Vec::new();
        }

        let mut renumber = vec![usize::MAX; m];
        let mut next = 0;
        for r in 0..m {
            if !drop_row[r] {
                renumber[r] = next;
                next += 1;
            }
        }
        let mut kept_tableau = Vec::with_capacity(next);
        let mut kept_basis = Vec::with_capacity(next);
        for (row, &b) in std::mem::take(&mut self.tableau)
            .into_iter()
            .zip(&self.basis)
        {
            if keep_col[b] {
                kept_tableau.push(row);
                kept_basis.push(b);
            }
        }
        self.tableau = kept_tableau;
        self.basis = kept_basis;
        let mut pruned = Vec::new();
        let mut kept_rows = Vec::with_capacity(next);
        for (r, row) in std::mem::take(&mut self.rows).into_iter().enumerate() {
            if drop_row[r] {
                pruned.push(row);
            } else {
                kept_rows.push(row);
            }
        }
        self.rows = kept_rows;
        for k in &mut self.kinds {
            match k {
                Column::Surplus(r) | Column::Artificial(r) if !drop_row[*r] => *r = renumber[*r],
                _ => {}
            }
        }
        self.retain_columns(&keep_col);
        pruned
    }

    fn retain_columns(&mut self, keep: &[bool]) {
        if keep.iter().all(|&k| k) {
            return;
        }
        let mut remap = vec![usize::MAX; keep.len()];
        let mut next = 0;
        for (c, &k) in keep.iter().enumerate() {
            if k {
                remap[c] = next;
                next += 1;
            }
        }
        fn retain<T: Copy>(v: &mut Vec<T>, keep: &[bool]) {
            let mut i = 0;
            v.retain(|_| {
                i += 1;
                keep[i - 1]
            });
        }
        retain(&mut self.kinds, keep);
        retain(&mut self.upper, keep);
        retain(&mut self.value, keep);
        retain(&mut self.at_upper, keep);
        for row in &mut self.tableau {
            retain(row, keep);
        }
        for b in &mut self.basis {
            *b = remap[*b];
        }
        for c in self.vertex_col.values_mut() {
            *c = remap[*c];
        }
        self.basic_row = vec![None; self.kinds.len()];
        for (r, &b) in self.basis.iter().enumerate() {
            self.basic_row[b] = Some(r);
        }
    }

    /// Current value of every vertex variable, clamped to `[0, 1]`.
    pub fn solution(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (&v, &c) in &self.vertex_col {
            x[v.index()] = self.value[c].clamp(0.0, 1.0);
        }
        x
    }

    pub fn objective(&self) -> f64 {
        self.vertex_col
            .values()
            .map(|&c| self.value[c].clamp(0.0, 1.0))
            .sum()
    }
}

fn support_of(row: &[f64]) -> Vec<(usize, f64)> {
    row.iter()
        .enumerate()
        .filter(|&(_, &t)| t != 0.0)
        .map(|(c, &t)| (c, t))
        .collect()
}

#[inline]
fn eliminate_sparse(row: &mut [f64], support: &[(usize, f64)], factor: f64) {
    for &(c, p) in support {
        let t = &mut row[c];
        *t -= factor * p;
        if t.abs() < DROP_TOL {
            *t = 0.0;
        }
    }
}

#[inline]
fn eliminate(row: &mut [f64], pivot_row: &[f64], factor: f64) {
    for (t, &p) in row.iter_mut().zip(pivot_row) {
        if p != 0.0 {
            *t -= factor * p;
            if t.abs() < DROP_TOL {
                *t = 0.0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> Vec<VertexId> {
        v.iter().map(|&i| VertexId(i)).collect()
    }

    fn solve_cold(rows: &[Vec<VertexId>], n: usize) -> (Vec<f64>, f64) {
        let mut lp = CoveringLp::from_rows(rows);
        lp.solve().unwrap();
        (lp.solution(n), lp.objective())
    }

    #[test]
    fn no_rows() {
        let (x, obj) = solve_cold(&[], 3);
        assert_eq!(x, vec![0.0; 3]);
        assert_eq!(obj, 0.0);
    }

    #[test]
    fn single_row() {
        let (x, obj) = solve_cold(&[ids(&[0, 1])], 2);
        assert!((obj - 1.0).abs() < 1e-12);
        assert!((x[0] + x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_is_half_integral() {
        let rows = [ids(&[0, 1]), ids(&[1, 2]), ids(&[0, 2])];
        let (x, obj) = solve_cold(&rows, 3);
        assert!((obj - 1.5).abs() < 1e-9, "{obj}");
        for xi in x {
            assert!((xi - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn random_rows_stay_feasible() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for case in 0..300 {
            let n = rng.gen_range(2..25);
            let m = rng.gen_range(1..40);
            let rows: Vec<Vec<VertexId>> = (0..m)
                .map(|_| {
                    let k = rng.gen_range(1..=n.min(8));
                    (0..k)
                        .map(|_| VertexId(rng.gen_range(0..n) as u32))
                        .collect()
                })
                .collect();
            let mut warm = CoveringLp::new();
            for chunk in rows.chunks(5) {
                for row in chunk {
                    warm.add_row(row);
                }
                warm.solve().unwrap();
            }
            let (xc, cold) = solve_cold(&rows, n);
            let xw = warm.solution(n);
            for row in &rows {
                let lc: f64 = row.iter().map(|v| xc[v.index()]).sum();
                let lw: f64 = row.iter().map(|v| xw[v.index()]).sum();
                assert!(lc >= 1.0 - 1e-9, "case {case}: cold row {row:?} lhs {lc}");
                assert!(lw >= 1.0 - 1e-9, "case {case}: warm row {row:?} lhs {lw}");
            }
            assert!(
                (warm.objective() - cold).abs() < 1e-7,
                "case {case}: {} vs {cold}",
                warm.objective()
            );
        }
    }

    #[test]
    fn pruning_keeps_the_remaining_master_optimal() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for case in 0..200 {
            let n = rng.gen_range(3..20);
            let mut lp = CoveringLp::new();
            let mut all = Vec::new();
            for _ in 0..6 {
                for _ in 0..rng.gen_range(1..6) {
                    let k = rng.gen_range(1..=n.min(5));
                    let row: Vec<VertexId> = (0..k)
                        .map(|_| VertexId(rng.gen_range(0..n) as u32))
                        .collect();
                    lp.add_row(&row);
                    all.push(row);
                }
                lp.solve().unwrap();
                let before = lp.objective();
                lp.prune_slack_rows(1e-6);
                let (_, kept) = solve_cold(lp.rows(), n);
                assert!(
                    (kept - before).abs() < 1e-7,
                    "case {case}: {kept} vs {before}"
                );
            }
            let (_, full) = solve_cold(&all, n);
            assert!(lp.objective() <= full + 1e-7, "case {case}");
        }
    }

    #[test]
    fn warm_start_matches_cold_start() {
        let rows = [
            ids(&[0, 1]),
            ids(&[1, 2]),
            ids(&[0, 2]),
            ids(&[2, 3, 4]),
            ids(&[4]),
        ];
        let mut warm = CoveringLp::new();
        for row in &rows {
            warm.add_row(row);
            warm.solve().unwrap();
        }
        let (_, cold) = solve_cold(&rows, 5);
        assert!((warm.objective() - cold).abs() < 1e-9);
        assert!((cold - 2.5).abs() < 1e-9);
        let x = warm.solution(5);
        for row in &rows {
            let lhs: f64 = row.iter().map(|v| x[v.index()]).sum();
            assert!(lhs >= 1.0 - 1e-9);
        }
    }
}
