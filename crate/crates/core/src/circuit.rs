//! Circuit data model, structural validation and the noise-level recursion.
//!
//! A circuit is a DAG whose vertices are inputs (white, indegree 0), linear
//! gates (blue, indegree 2) or multiplicative gates (red, indegree 2).
//! Parallel edges are allowed and stored once with a multiplicity.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(u32::try_from(i).expect("vertex index exceeds u32"))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Blue,
    Red,
}

impl Color {
    pub fn required_indegree(self) -> u32 {
        match self {
            Color::White => 0,
            Color::Blue | Color::Red => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Color::White => "white",
            Color::Blue => "blue",
            Color::Red => "red",
        }
    }
}

impl std::str::FromStr for Color {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "white" => Ok(Color::White),
            "blue" => Ok(Color::Blue),
            "red" => Ok(Color::Red),
            _ => Err(()),
        }
    }
}

/// Maximum admissible noise level. Always at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(u32);

impl Budget {
    pub fn new(level: usize) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidBudget { min: 1, got: 0 });
        }
        u32::try_from(level)
            .map(Budget)
            .map_err(|_| Error::InvalidBudget { min: 1, got: level })
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A group of parallel edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub multiplicity: u32,
}

/// Immutable, validated circuit.
#[derive(Clone, Debug)]
pub struct Circuit {
    names: Vec<String>,
    colors: Vec<Color>,
    edges: Vec<Edge>,
    preds: Vec<Vec<(VertexId, u32)>>,
    succs: Vec<Vec<(VertexId, u32)>>,
    topo: Vec<VertexId>,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.colors == other.colors && self.edges == other.edges
    }
}

impl Eq for Circuit {}

impl Circuit {
    /// Checks the structural constraints and builds the adjacency. Edges may
    /// be repeated; repeated pairs are merged by summing multiplicities.
    pub fn validate(
        vertices: Vec<(String, Color)>,
        raw_edges: impl IntoIterator<Item = (VertexId, VertexId, u32)>,
    ) -> Result<Circuit> {
        let n = vertices.len();
        let mut merged: BTreeMap<(VertexId, VertexId), u32> = BTreeMap::new();
        for (src, dst, mult) in raw_edges {
            for v in [src, dst] {
                if v.index() >= n {
                    return Err(Error::UnknownVertex(v));
                }
            }
            if mult == 0 {
                continue;
            }
            *merged.entry((src, dst)).or_insert(0) += mult;
        }

        let (names, colors): (Vec<String>, Vec<Color>) = vertices.into_iter().unzip();
        let mut preds = vec![Vec::new(); n];
        let mut succs = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(merged.len());
        for (&(src, dst), &multiplicity) in &merged {
            edges.push(Edge {
                src,
                dst,
                multiplicity,
            });
            preds[dst.index()].push((src, multiplicity));
            succs[src.index()].push((dst, multiplicity));
        }
        for (v, p) in preds.iter_mut().enumerate() {
            p.sort_unstable();
            let actual: u32 = p.iter().map(|&(_, m)| m).sum();
            let expected = colors[v].required_indegree();
            if actual != expected {
                return Err(Error::IndegreeViolation {
                    vertex: VertexId::from(v),
                    expected,
                    actual,
                });
            }
        }

        let topo = topological_order(&preds, &succs).ok_or(Error::CycleDetected)?;
        Ok(Circuit {
            names,
            colors,
            edges,
            preds,
            succs,
            topo,
        })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len()).map(VertexId::from)
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.colors[v.index()]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(VertexId::from)
    }

    /// Edge groups sorted by `(src, dst)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.multiplicity as usize).sum()
    }

    /// Distinct predecessors with their multiplicities, ascending by id.
    pub fn preds(&self, v: VertexId) -> &[(VertexId, u32)] {
        &self.preds[v.index()]
    }

    /// Distinct successors with their multiplicities, ascending by id.
    pub fn succs(&self, v: VertexId) -> &[(VertexId, u32)] {
        &self.succs[v.index()]
    }

    pub fn topological_order(&self) -> &[VertexId] {
        &self.topo
    }

    pub fn vertices_of(&self, color: Color) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(move |&v| self.color(v) == color)
    }

    pub fn red_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Color::Red).count()
    }

    /// Noise levels under the given marking. Marked predecessors contribute
    /// level 0 to their successors.
    pub fn eval_levels(&self, marks: &MarkSet) -> LevelAssignment {
        assert_eq!(
            marks.universe(),
            self.len(),
            "mark set belongs to another circuit"
        );
        let mut levels = vec![0u32; self.len()];
        self.fill_levels(marks.flags(), &mut levels);
        LevelAssignment(levels)
    }

    pub(crate) fn fill_levels(&self, marked: &[bool], levels: &mut [u32]) {
        for &v in &self.topo {
            let i = v.index();
            levels[i] = match self.colors[i] {
                Color::White => 0,
                color => {
                    let incoming = self.preds[i]
                        .iter()
                        .map(|&(u, _)| {
                            if marked[u.index()] {
                                0
                            } else {
                                levels[u.index()]
                            }
                        })
                        .max()
                        .unwrap_or(0);
                    if color == Color::Red {
                        incoming + 1
                    } else {
                        incoming
                    }
                }
            };
        }
    }

    pub fn is_feasible_by_levels(&self, marks: &MarkSet, budget: Budget) -> bool {
        self.eval_levels(marks).max() as usize <= budget.get()
    }
}

/// Kahn's algorithm, always releasing the smallest ready id. Returns the
/// identity order whenever it is already topological.
fn topological_order(
    preds: &[Vec<(VertexId, u32)>],
    succs: &[Vec<(VertexId, u32)>],
) -> Option<Vec<VertexId>> {
    let n = preds.len();
    let mut remaining: Vec<usize> = preds.iter().map(Vec::len).collect();
    let mut ready: BinaryHeap<Reverse<u32>> = remaining
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 0)
        .map(|(v, _)| Reverse(v as u32))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(VertexId(v));
        for &(w, _) in &succs[v as usize] {
            remaining[w.index()] -= 1;
            if remaining[w.index()] == 0 {
                ready.push(Reverse(w.0));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Incremental construction of a circuit with unique generated ids.
#[derive(Clone, Debug, Default)]
pub struct CircuitBuilder {
    vertices: Vec<(String, Color)>,
    edges: Vec<(VertexId, VertexId, u32)>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, color: Color) -> VertexId {
        self.vertices.push((name.into(), color));
        VertexId::from(self.vertices.len() - 1)
    }

    pub fn add_edge(&mut self, src: VertexId, dst: VertexId, multiplicity: u32) -> &mut Self {
        self.edges.push((src, dst, multiplicity));
        self
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn build(self) -> Result<Circuit> {
        Circuit::validate(self.vertices, self.edges)
    }
}

/// Set of vertices chosen for bootstrapping.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MarkSet {
    flags: Vec<bool>,
    count: usize,
}

impl MarkSet {
    pub fn empty(universe: usize) -> Self {
        MarkSet {
            flags: vec![false; universe],
            count: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        MarkSet {
            flags: vec![true; universe],
            count: universe,
        }
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = VertexId>) -> Self {
        let mut set = Self::empty(universe);
        for v in ids {
            set.insert(v);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.flags.len()
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.flags[v.index()]
    }

    /// Returns whether the vertex was newly inserted. Panics if `v` lies
    /// outside the universe.
    pub fn insert(&mut self, v: VertexId) -> bool {
        let slot = &mut self.flags[v.index()];
        let fresh = !*slot;
        *slot = true;
        self.count += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        let slot = &mut self.flags[v.index()];
        let present = *slot;
        *slot = false;
        self.count -= present as usize;
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| VertexId::from(i))
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn is_subset(&self, other: &MarkSet) -> bool {
        self.flags.iter().zip(&other.flags).all(|(&a, &b)| !a || b)
    }
}

impl fmt::Debug for MarkSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

/// Noise level of every vertex under some marking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAssignment(Vec<u32>);

impl LevelAssignment {
    pub fn get(&self, v: VertexId) -> u32 {
        self.0[v.index()]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Vertices whose level exceeds the budget, ascending by id.
    pub fn violations(&self, budget: Budget) -> Vec<VertexId> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &l)| l as usize > budget.get())
            .map(|(i, _)| VertexId::from(i))
            .collect()
    }

    /// `histogram[k]` is the number of vertices at level `k`.
    pub fn histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.max() as usize + 1];
        for &l in &self.0 {
            hist[l as usize] += 1;
        }
        hist
    }
}
