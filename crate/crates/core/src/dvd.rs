//! DAG Vertex Deletion and its reduction to bootstrap placement.
//!
//! DVD asks for a minimum vertex set whose removal leaves no path on `L`
//! vertices. The reduction builds a circuit `G` in which every original
//! vertex `v` turns red and gains a red clone `v'` fed twice by `v`, a white
//! source `s0` pads indegrees below two, and a vertex of indegree `d >= 3` is
//! fed through a chain of `d` blue gadget vertices instead of directly.
//! Optimal values coincide, and any feasible marking of `G` maps back to a
//! deletion set of no larger size.

use std::collections::BTreeSet;

use crate::circuit::{Budget, Circuit, CircuitBuilder, Color, MarkSet, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DvdInstance {
    names: Vec<String>,
    /// Distinct edges, sorted.
    edges: Vec<(VertexId, VertexId)>,
    preds: Vec<Vec<VertexId>>,
    topo: Vec<VertexId>,
    path_limit: usize,
}

impl DvdInstance {
    /// `path_limit` is the forbidden path size `L`, at least 2. Repeated
    /// edges collapse to one.
    pub fn new(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        path_limit: usize,
    ) -> Result<DvdInstance> {
        if path_limit < 2 {
            return Err(Error::InvalidBudget {
                min: 2,
                got: path_limit,
            });
        }
        let n = names.len();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v.index() >= n {
                    return Err(Error::UnknownVertex(v));
                }
            }
            set.insert((a, b));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut preds = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        let mut succs = vec![Vec::new(); n];
        for &(a, b) in &edges {
            preds[b.index()].push(a);
            succs[a.index()].push(b);
            indeg[b.index()] += 1;
        }
        let mut ready: BTreeSet<VertexId> = (0..n)
            .filter(|&v| indeg[v] == 0)
            .map(VertexId::from)
            .collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            topo.push(v);
            for &w in &succs[v.index()] {
                indeg[w.index()] -= 1;
                if indeg[w.index()] == 0 {
                    ready.insert(w);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::CycleDetected);
        }
        Ok(DvdInstance {
            names,
            edges,
            preds,
            topo,
            path_limit,
        })
    }

    /// Directed path `0 -> 1 -> ... -> n-1`.
    pub fn path(n: usize, path_limit: usize) -> Result<DvdInstance> {
        let names = (0..n).map(|i| format!("p{i}")).collect();
        let edges = (1..n).map(|i| (VertexId::from(i - 1), VertexId::from(i)));
        DvdInstance::new(names, edges, path_limit)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Direct predecessors of `v`, ascending.
    pub fn preds(&self, v: VertexId) -> &[VertexId] {
        &self.preds[v.index()]
    }

    pub fn path_limit(&self) -> usize {
        self.path_limit
    }

    /// Vertex count of the longest path avoiding the deleted vertices.
    pub fn longest_path_avoiding(&self, deleted: &[bool]) -> usize {
        let mut longest = vec![0usize; self.len()];
        let mut best = 0;
        for &v in &self.topo {
            if deleted[v.index()] {
                continue;
            }
            let len = 1 + self.preds[v.index()]
                .iter()
                .map(|u| longest[u.index()])
                .max()
                .unwrap_or(0);
            longest[v.index()] = len;
            best = best.max(len);
        }
        best
    }

    /// True iff no path of `L` vertices survives the deletion.
    pub fn is_feasible(&self, deleted: &MarkSet) -> bool {
        assert_eq!(deleted.universe(), self.len());
        self.longest_path_avoiding(deleted.flags()) < self.path_limit
    }
}

/// What a vertex of the constructed circuit stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Original(VertexId),
    Clone(VertexId),
    /// `index` is 1-based along the chain of `owner`.
    Gadget {
        owner: VertexId,
        index: usize,
    },
    Source,
}

#[derive(Clone, Debug)]
pub struct ReductionMap {
    pub circuit: Circuit,
    pub budget: Budget,
    /// Clone `v'` of every original vertex `v` (originals keep their ids).
    pub clone_of: Vec<VertexId>,
    /// Blue chain `w_1..w_d` for vertices of indegree `d >= 3`, empty otherwise.
    pub gadget_of: Vec<Vec<VertexId>>,
    pub source: VertexId,
    pub provenance: Vec<Provenance>,
}

fn fresh_name(taken: &BTreeSet<String>, wanted: String) -> String {
    let mut name = wanted;
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// Builds the bootstrap instance for `h` with the same `L`. Original vertex
/// `i` keeps id `i`, its clone gets `n + i`, the source `2n` and gadget
/// vertices follow. Gadget predecessors are taken in ascending id order.
pub fn reduce(h: &DvdInstance) -> Result<ReductionMap> {
    let n = h.len();
    let budget = Budget::new(h.path_limit())?;
    let mut taken: BTreeSet<String> = h.names().iter().cloned().collect();
    let mut b = CircuitBuilder::new();
    let mut provenance = Vec::new();

    for v in (0..n).map(VertexId::from) {
        b.add_vertex(h.name(v), Color::Red);
        provenance.push(Provenance::Original(v));
    }
    let mut clone_of = Vec::with_capacity(n);
    for v in (0..n).map(VertexId::from) {
        let name = fresh_name(&taken, format!("clone({})", h.name(v)));
        taken.insert(name.clone());
        clone_of.push(b.add_vertex(name, Color::Red));
        provenance.push(Provenance::Clone(v));
    }
    let source_name = fresh_name(&taken, "s0".into());
    taken.insert(source_name.clone());
    let source = b.add_vertex(source_name, Color::White);
    provenance.push(Provenance::Source);

    let mut gadget_of = vec![Vec::new(); n];
    for v in (0..n).map(VertexId::from) {
        b.add_edge(v, clone_of[v.index()], 2);
        let preds = h.preds(v);
        let d = preds.len();
        if d <= 2 {
            for &u in preds {
                b.add_edge(u, v, 1);
            }
            if d < 2 {
                b.add_edge(source, v, (2 - d) as u32);
            }
            continue;
        }
        let mut chain = Vec::with_capacity(d);
        for i in 1..=d {
            let name = fresh_name(&taken, format!("w{i}({})", h.name(v)));
            taken.insert(name.clone());
            chain.push(b.add_vertex(name, Color::Blue));
            provenance.push(Provenance::Gadget { owner: v, index: i });
        }
        b.add_edge(preds[0], chain[0], 2);
        for i in 1..d {
            b.add_edge(chain[i - 1], chain[i], 1);
            b.add_edge(preds[i], chain[i], 1);
        }
        b.add_edge(chain[d - 1], v, 2);
        gadget_of[v.index()] = chain;
    }

    Ok(ReductionMap {
        circuit: b.build()?,
        budget,
        clone_of,
        gadget_of,
        source,
        provenance,
    })
}

impl ReductionMap {
    pub fn original_count(&self) -> usize {
        self.clone_of.len()
    }

    /// Moves every marked gadget vertex onto its owner, checking feasibility
    /// after each move, and keeps only original vertices.
    pub fn pull_back(&self, marks: &MarkSet) -> Result<MarkSet> {
        if !self.circuit.is_feasible_by_levels(marks, self.budget) {
            return Err(Error::InfeasibleInput(
                "marking violates the noise budget".into(),
            ));
        }
        let mut current = marks.clone();
        for v in marks.iter() {
            if let Provenance::Gadget { owner, .. } = self.provenance[v.index()] {
                current.remove(v);
                current.insert(owner);
                if !self.circuit.is_feasible_by_levels(&current, self.budget) {
                    return Err(Error::InfeasibleInput(format!(
                        "relocating gadget vertex {v} broke feasibility"
                    )));
                }
            }
        }
        Ok(MarkSet::from_ids(
            self.original_count(),
            current.iter().filter(|v| v.index() < self.original_count()),
        ))
    }

    /// A deletion set of `H` seen as a marking of `G`.
    pub fn push_forward(&self, h: &DvdInstance, deleted: &MarkSet) -> Result<MarkSet> {
        if !h.is_feasible(deleted) {
            return Err(Error::InfeasibleInput(
                "deletion set leaves a path of L vertices".into(),
            ));
        }
        Ok(MarkSet::from_ids(self.circuit.len(), deleted.iter()))
    }
}
