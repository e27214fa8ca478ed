//! Interesting paths and the level-indexed shortest-path tables.
//!
//! A path is *interesting* when it starts and ends at red vertices and
//! traverses exactly `L + 1` red vertices. A marking is feasible iff every
//! interesting path has a marked non-final vertex, which gives a second
//! feasibility check independent of the level recursion.
//!
//! `f_i(v)` is the minimum length (sum of weights over non-final vertices)
//! of a path that starts at a red vertex, ends at `v` and traverses exactly
//! `i` red vertices. Blue steps go through the red-to-blue distance table
//! `delta`, which collapses runs of blue vertices.

use crate::circuit::{Budget, Circuit, Color, MarkSet, VertexId};
use crate::error::{Error, Result};
use crate::length::Length;
use crate::weights::FractionalWeights;

/// LP constraints with `f_{L+1}(v)` below `1 - VIOLATION_TOL` are violated.
pub const VIOLATION_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InterestingPath {
    vertices: Vec<VertexId>,
}

impl InterestingPath {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        InterestingPath { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn final_vertex(&self) -> VertexId {
        *self.vertices.last().expect("empty path")
    }

    pub fn non_final(&self) -> &[VertexId] {
        &self.vertices[..self.vertices.len() - 1]
    }

    /// Sum of weights over the non-final vertices.
    pub fn length(&self, x: &FractionalWeights) -> f64 {
        x.total(self.non_final())
    }

    pub fn red_count(&self, circuit: &Circuit) -> usize {
        self.vertices
            .iter()
            .filter(|&&v| circuit.color(v) == Color::Red)
            .count()
    }

    pub fn is_hit_by(&self, marks: &MarkSet) -> bool {
        self.non_final().iter().any(|&v| marks.contains(v))
    }

    /// Checks the structural invariants: red endpoints, `L + 1` reds and
    /// consecutive vertices joined by an edge.
    pub fn is_valid(&self, circuit: &Circuit, budget: Budget) -> bool {
        let (Some(&first), Some(&last)) = (self.vertices.first(), self.vertices.last()) else {
            return false;
        };
        circuit.color(first) == Color::Red
            && circuit.color(last) == Color::Red
            && self.red_count(circuit) == budget.get() + 1
            && self.vertices.windows(2).all(|w| {
                circuit
                    .succs(w[0])
                    .binary_search_by_key(&w[1], |&(s, _)| s)
                    .is_ok()
            })
    }
}

/// Every interesting path in lexicographic order of vertex sequences.
/// Fails once more than `cap` paths have been found.
pub fn enumerate_interesting_paths(
    circuit: &Circuit,
    budget: Budget,
    cap: usize,
) -> Result<Vec<InterestingPath>> {
    struct Walk<'a> {
        circuit: &'a Circuit,
        target: usize,
        cap: usize,
        stack: Vec<VertexId>,
        out: Vec<InterestingPath>,
    }

    impl Walk<'_> {
        fn extend(&mut self, v: VertexId, reds: usize) -> Result<()> {
            for &(w, _) in self.circuit.succs(v) {
                let reds = reds + (self.circuit.color(w) == Color::Red) as usize;
                self.stack.push(w);
                if reds == self.target {
                    if self.out.len() == self.cap {
                        return Err(Error::CapExceeded { cap: self.cap });
                    }
                    self.out.push(InterestingPath::new(self.stack.clone()));
                } else {
                    self.extend(w, reds)?;
                }
                self.stack.pop();
            }
            Ok(())
        }
    }

    let mut walk = Walk {
        circuit,
        target: budget.get() + 1,
        cap,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for start in circuit.vertices_of(Color::Red) {
        walk.stack.push(start);
        walk.extend(start, 1)?;
        walk.stack.pop();
    }
    walk.out.sort();
    Ok(walk.out)
}

/// Feasibility through the path characterization: every interesting path
/// must contain a marked non-final vertex.
pub fn is_feasible_by_paths(
    circuit: &Circuit,
    marks: &MarkSet,
    budget: Budget,
    cap: usize,
) -> Result<bool> {
    Ok(enumerate_interesting_paths(circuit, budget, cap)?
        .iter()
        .all(|p| p.is_hit_by(marks)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct DeltaEntry {
    source: VertexId,
    dist: f64,
    /// Vertex preceding the target on a shortest blue-intermediate path.
    pred: VertexId,
}

/// Sparse table of `delta(u, v)` for red `u` and blue `v`: the minimum of
/// `x_u` plus the weights of the blue intermediates over paths from `u` to
/// `v` whose intermediates are all blue. Absent pairs are infinite.
#[derive(Clone, Debug)]
pub struct BlueDistances {
    by_target: Vec<Vec<DeltaEntry>>,
}

impl BlueDistances {
    pub fn get(&self, source: VertexId, target: VertexId) -> Length {
        self.entry(source, target)
            .map_or(Length::Infinite, |e| Length::Finite(e.dist))
    }

    /// Finite entries ending at `target`, ascending by source.
    pub fn sources_of(&self, target: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        self.by_target[target.index()]
            .iter()
            .map(|e| (e.source, e.dist))
    }

    pub fn finite_entries(&self) -> usize {
        self.by_target.iter().map(Vec::len).sum()
    }

    fn entry(&self, source: VertexId, target: VertexId) -> Option<&DeltaEntry> {
        let row = &self.by_target[target.index()];
        row.binary_search_by_key(&source, |e| e.source)
            .ok()
            .map(|i| &row[i])
    }

    /// Shortest blue-intermediate path from `source` to `target`, both ends
    /// included.
    fn path(&self, source: VertexId, target: VertexId) -> Vec<VertexId> {
        let mut rev = vec![target];
        let mut cur = target;
        while cur != source {
            cur = self.entry(source, cur).expect("broken delta chain").pred;
            rev.push(cur);
        }
        rev.reverse();
        rev
    }
}

pub fn blue_distances(circuit: &Circuit, x: &FractionalWeights) -> BlueDistances {
    let n = circuit.len();
    let mut position = vec![0usize; n];
    for (pos, &v) in circuit.topological_order().iter().enumerate() {
        position[v.index()] = pos;
    }

    let mut by_target: Vec<Vec<DeltaEntry>> = vec![Vec::new(); n];
    // scratch reused across sources; `stamp[v] == round` means `dist[v]` is set
    let mut stamp = vec![u32::MAX; n];
    let mut dist = vec![0.0f64; n];
    let mut pred = vec![VertexId(0); n];
    let mut reached: Vec<VertexId> = Vec::new();
    let mut stack: Vec<VertexId> = Vec::new();
    let mut seen = vec![u32::MAX; n];

    for (round, source) in circuit.vertices_of(Color::Red).enumerate() {
        let round = round as u32;
        reached.clear();
        stack.push(source);
        while let Some(v) = stack.pop() {
            for &(w, _) in circuit.succs(v) {
                if circuit.color(w) == Color::Blue && seen[w.index()] != round {
                    seen[w.index()] = round;
                    reached.push(w);
                    stack.push(w);
                }
            }
        }
        reached.sort_unstable_by_key(|v| position[v.index()]);

        for &v in &reached {
            let mut best = f64::INFINITY;
            let mut best_pred = source;
            for &(w, _) in circuit.preds(v) {
                let candidate = if w == source {
                    x.get(source)
                } else if circuit.color(w) == Color::Blue && stamp[w.index()] == round {
                    dist[w.index()] + x.get(w)
                } else {
                    continue;
                };
                if candidate < best {
                    best = candidate;
                    best_pred = w;
                }
            }
            debug_assert!(best.is_finite());
            stamp[v.index()] = round;
            dist[v.index()] = best;
            pred[v.index()] = best_pred;
            by_target[v.index()].push(DeltaEntry {
                source,
                dist: best,
                pred: best_pred,
            });
        }
    }
    BlueDistances { by_target }
}

/// `f_i(v)` for `i = 1..=L+1` together with the inputs they were computed from.
#[derive(Clone, Debug)]
pub struct LevelTables {
    budget: Budget,
    delta: BlueDistances,
    /// `f[i - 1][v]`
    f: Vec<Vec<Length>>,
    weights: FractionalWeights,
}

pub fn level_lengths(circuit: &Circuit, budget: Budget, x: &FractionalWeights) -> LevelTables {
    let delta = blue_distances(circuit, x);
    let n = circuit.len();
    let levels = budget.get() + 1;
    let mut f: Vec<Vec<Length>> = Vec::with_capacity(levels);

    for i in 1..=levels {
        let mut row = vec![Length::Infinite; n];
        for v in circuit.vertices_of(Color::Red) {
            row[v.index()] = if i == 1 {
                Length::ZERO
            } else {
                let prev = &f[i - 2];
                circuit
                    .preds(v)
                    .iter()
                    .map(|&(u, _)| prev[u.index()] + x.get(u))
                    .fold(Length::Infinite, Length::min)
            };
        }
        for v in circuit.vertices_of(Color::Blue) {
            row[v.index()] = delta
                .sources_of(v)
                .map(|(u, d)| row[u.index()] + d)
                .fold(Length::Infinite, Length::min);
        }
        f.push(row);
    }

    LevelTables {
        budget,
        delta,
        f,
        weights: x.clone(),
    }
}

impl LevelTables {
    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn weights(&self) -> &FractionalWeights {
        &self.weights
    }

    pub fn delta(&self) -> &BlueDistances {
        &self.delta
    }

    /// `f_level(v)` for `level` in `1..=L+1`.
    pub fn get(&self, level: usize, v: VertexId) -> Length {
        self.f[level - 1][v.index()]
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    /// A minimum-length path that starts at a red vertex, ends at `v` and
    /// traverses exactly `level` red vertices. Among equal predecessors the
    /// lowest id wins.
    pub fn shortest_path(
        &self,
        circuit: &Circuit,
        v: VertexId,
        level: usize,
    ) -> Option<Vec<VertexId>> {
        if !self.get(level, v).is_finite() {
            return None;
        }
        let x = &self.weights;
        let mut rev = Vec::new();
        let (mut cur, mut i) = (v, level);
        loop {
            match circuit.color(cur) {
                Color::White => unreachable!("finite length at a white vertex"),
                Color::Red if i == 1 => {
                    rev.push(cur);
                    break;
                }
                Color::Red => {
                    rev.push(cur);
                    cur = argmin(
                        circuit
                            .preds(cur)
                            .iter()
                            .map(|&(u, _)| (u, self.get(i - 1, u) + x.get(u))),
                    );
                    i -= 1;
                }
                Color::Blue => {
                    let source = argmin(
                        self.delta
                            .sources_of(cur)
                            .map(|(u, d)| (u, self.get(i, u) + d)),
                    );
                    let blue_run = self.delta.path(source, cur);
                    rev.extend(blue_run[1..].iter().rev());
                    cur = source;
                }
            }
        }
        rev.reverse();
        Some(rev)
    }

    /// Red vertices whose `f_{L+1}` falls below `1 - VIOLATION_TOL`, i.e.
    /// final vertices of violated LP constraints, ascending by id.
    pub fn violated_finals<'a>(
        &'a self,
        circuit: &'a Circuit,
    ) -> impl Iterator<Item = VertexId> + 'a {
        let top = self.budget.get() + 1;
        circuit
            .vertices_of(Color::Red)
            .filter(move |&v| self.get(top, v).lt(1.0 - VIOLATION_TOL))
    }
}

fn argmin(candidates: impl Iterator<Item = (VertexId, Length)>) -> VertexId {
    let mut best: Option<(VertexId, Length)> = None;
    for (v, len) in candidates {
        if len.is_finite() && best.is_none_or(|(_, b)| len < b) {
            best = Some((v, len));
        }
    }
    best.expect("no finite predecessor behind a finite length")
        .0
}

/// The most violated interesting path (lowest final id on ties), if any.
pub fn extract_violated_path(tables: &LevelTables, circuit: &Circuit) -> Option<InterestingPath> {
    let top = tables.budget().get() + 1;
    let mut worst: Option<(VertexId, Length)> = None;
    for v in tables.violated_finals(circuit) {
        let len = tables.get(top, v);
        if worst.is_none_or(|(_, w)| len < w) {
            worst = Some((v, len));
        }
    }
    let (v, _) = worst?;
    tables
        .shortest_path(circuit, v, top)
        .map(InterestingPath::new)
}

/// One most-violated interesting path per violated red final vertex.
pub fn extract_violated_paths(tables: &LevelTables, circuit: &Circuit) -> Vec<InterestingPath> {
    let top = tables.budget().get() + 1;
    tables
        .violated_finals(circuit)
        .filter_map(|v| tables.shortest_path(circuit, v, top))
        .map(InterestingPath::new)
        .collect()
}
