//! Brute-force oracles shared by the integration targets. They only read the
//! circuit through its adjacency and never call the solvers under test.
#![allow(dead_code)]

use bootstrap_core::dvd::DvdInstance;
use bootstrap_core::{Budget, Circuit, Color, MarkSet, VertexId};
use rand::Rng;

/// Noise levels by memoized recursion over predecessors.
pub fn levels(circuit: &Circuit, marked: &[bool]) -> Vec<u32> {
    fn level(c: &Circuit, marked: &[bool], memo: &mut [Option<u32>], v: VertexId) -> u32 {
        if let Some(l) = memo[v.index()] {
            return l;
        }
        let l = match c.color(v) {
            Color::White => 0,
            color => {
                let mut top = 0;
                for &(u, _) in c.preds(v) {
                    let seen = if marked[u.index()] {
                        0
                    } else {
                        level(c, marked, memo, u)
                    };
                    top = top.max(seen);
                }
                top + (color == Color::Red) as u32
            }
        };
        memo[v.index()] = Some(l);
        l
    }

    let mut memo = vec![None; circuit.len()];
    circuit
        .vertices()
        .map(|v| level(circuit, marked, &mut memo, v))
        .collect()
}

pub fn feasible(circuit: &Circuit, marks: &MarkSet, budget: Budget) -> bool {
    let limit = budget.get() as u32;
    levels(circuit, marks.flags()).iter().all(|&l| l <= limit)
}

/// Every path that starts at a red vertex, ends at `v` and holds exactly
/// `reds` red vertices, listed first to last.
pub fn paths_into(circuit: &Circuit, v: VertexId, reds: usize) -> Vec<Vec<VertexId>> {
    fn back(
        c: &Circuit,
        stack: &mut Vec<VertexId>,
        count: usize,
        want: usize,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let w = *stack.last().unwrap();
        if c.color(w) == Color::Red && count == want {
            out.push(stack.iter().rev().copied().collect());
            return;
        }
        for &(u, _) in c.preds(w) {
            let next = count + (c.color(u) == Color::Red) as usize;
            if next <= want {
                stack.push(u);
                back(c, stack, next, want, out);
                stack.pop();
            }
        }
    }

    let mut out = Vec::new();
    let start = (circuit.color(v) == Color::Red) as usize;
    if start <= reds {
        back(circuit, &mut vec![v], start, reds, &mut out);
    }
    out
}

/// All interesting paths for `budget`.
pub fn interesting_paths(circuit: &Circuit, budget: Budget) -> Vec<Vec<VertexId>> {
    circuit
        .vertices_of(Color::Red)
        .flat_map(|v| paths_into(circuit, v, budget.get() + 1))
        .collect()
}

/// Sum of `x` over all but the last vertex.
pub fn non_final_length(path: &[VertexId], x: &[f64]) -> f64 {
    path[..path.len() - 1].iter().map(|v| x[v.index()]).sum()
}

pub fn hit(path: &[VertexId], marks: &MarkSet) -> bool {
    path[..path.len() - 1].iter().any(|&v| marks.contains(v))
}

/// Minimum feasible marking size by enumerating every subset of gates.
pub fn optimum(circuit: &Circuit, budget: Budget) -> usize {
    let gates: Vec<VertexId> = circuit
        .vertices()
        .filter(|&v| circuit.color(v) != Color::White)
        .collect();
    assert!(gates.len() <= 24, "too many gates for the oracle");
    let mut best = gates.len();
    for mask in 0u32..(1 << gates.len()) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let marks = MarkSet::from_ids(
            circuit.len(),
            gates
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v),
        );
        if feasible(circuit, &marks, budget) {
            best = size;
        }
    }
    best
}

/// Vertex count of the longest surviving path, by exhaustive walks.
pub fn longest_path(h: &DvdInstance, deleted: &[bool]) -> usize {
    fn walk(h: &DvdInstance, v: usize, deleted: &[bool]) -> usize {
        1 + h
            .edges()
            .iter()
            .filter(|(a, b)| a.index() == v && !deleted[b.index()])
            .map(|(_, b)| walk(h, b.index(), deleted))
            .max()
            .unwrap_or(0)
    }
    (0..h.len())
        .filter(|&v| !deleted[v])
        .map(|v| walk(h, v, deleted))
        .max()
        .unwrap_or(0)
}

pub fn dvd_optimum(h: &DvdInstance) -> usize {
    let n = h.len();
    assert!(n <= 20);
    (0u32..(1 << n))
        .filter(|mask| {
            let deleted: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
            longest_path(h, &deleted) < h.path_limit()
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

pub fn random_marks(rng: &mut impl Rng, n: usize, density: f64) -> MarkSet {
    MarkSet::from_ids(
        n,
        (0..n).filter(|_| rng.gen_bool(density)).map(VertexId::from),
    )
}

/// LP-like weights: a mix of zeros, ones and uniform values.
pub fn random_weights(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| match rng.gen_range(0..4) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.gen_range(0.0..1.0),
        })
        .collect()
}
