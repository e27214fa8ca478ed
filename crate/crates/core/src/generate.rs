//! Random and structured circuit generators. Every generator is a pure
//! function of its parameters and the supplied RNG, and builds circuits
//! that satisfy the indegree rules by construction.

use rand::Rng;

use crate::circuit::{Circuit, CircuitBuilder, Color, VertexId};
use crate::dvd::DvdInstance;

fn gate_color(rng: &mut impl Rng, red_fraction: f64) -> Color {
    if rng.gen_bool(red_fraction.clamp(0.0, 1.0)) {
        Color::Red
    } else {
        Color::Blue
    }
}

/// One white input feeding a chain of `length` red gates with doubled edges.
pub fn red_chain(length: usize) -> Circuit {
    let mut b = CircuitBuilder::new();
    let mut prev = b.add_vertex("in", Color::White);
    for i in 1..=length {
        let r = b.add_vertex(format!("r{i}"), Color::Red);
        b.add_edge(prev, r, 2);
        prev = r;
    }
    b.build().expect("chain is a valid circuit")
}

/// `width` white inputs followed by `layers` layers of `width` gates. Each
/// gate draws both inputs uniformly from the previous layer; a repeated
/// draw becomes a doubled edge.
pub fn layered(rng: &mut impl Rng, layers: usize, width: usize, red_fraction: f64) -> Circuit {
    assert!(width > 0, "layer width must be positive");
    let mut b = CircuitBuilder::new();
    let mut prev: Vec<VertexId> = (0..width)
        .map(|i| b.add_vertex(format!("in{i}"), Color::White))
        .collect();
    for layer in 1..=layers {
        let current: Vec<VertexId> = (0..width)
            .map(|i| {
                let color = gate_color(rng, red_fraction);
                let g = b.add_vertex(format!("g{layer}_{i}"), color);
                let a = prev[rng.gen_range(0..width)];
                let c = prev[rng.gen_range(0..width)];
                b.add_edge(a, g, 1).add_edge(c, g, 1);
                g
            })
            .collect();
        prev = current;
    }
    b.build().expect("layered construction is a valid circuit")
}

/// Two-terminal series-parallel circuit with `gates` gates hanging off one
/// white input. Parallel branches are joined by a gate reading both ends.
pub fn series_parallel(rng: &mut impl Rng, gates: usize, red_fraction: f64) -> Circuit {
    fn build(
        b: &mut CircuitBuilder,
        rng: &mut impl Rng,
        input: VertexId,
        gates: usize,
        red_fraction: f64,
    ) -> VertexId {
        if gates <= 1 {
            let color = gate_color(rng, red_fraction);
            let name = format!("g{}", b.len());
            let g = b.add_vertex(name, color);
            b.add_edge(input, g, 2);
            return g;
        }
        if gates >= 3 && rng.gen_bool(0.5) {
            let left = rng.gen_range(1..gates - 1);
            let a = build(b, rng, input, left, red_fraction);
            let c = build(b, rng, input, gates - 1 - left, red_fraction);
            let color = gate_color(rng, red_fraction);
            let name = format!("g{}", b.len());
            let join = b.add_vertex(name, color);
            b.add_edge(a, join, 1).add_edge(c, join, 1);
            join
        } else {
            let first = rng.gen_range(1..gates);
            let mid = build(b, rng, input, first, red_fraction);
            build(b, rng, mid, gates - first, red_fraction)
        }
    }

    let mut b = CircuitBuilder::new();
    let input = b.add_vertex("in", Color::White);
    if gates > 0 {
        build(&mut b, rng, input, gates, red_fraction);
    }
    b.build()
        .expect("series-parallel construction is a valid circuit")
}

/// Arbitrary small circuit: vertex 0 is white, later vertices are white with
/// probability `white_fraction` and otherwise gates reading two uniformly
/// drawn earlier vertices.
pub fn random_circuit(
    rng: &mut impl Rng,
    n: usize,
    white_fraction: f64,
    red_fraction: f64,
) -> Circuit {
    let mut b = CircuitBuilder::new();
    for i in 0..n {
        if i == 0 || rng.gen_bool(white_fraction) {
            b.add_vertex(format!("v{i}"), Color::White);
        } else {
            let color = gate_color(rng, red_fraction);
            let g = b.add_vertex(format!("v{i}"), color);
            let a = VertexId::from(rng.gen_range(0..i));
            let c = VertexId::from(rng.gen_range(0..i));
            b.add_edge(a, g, 1).add_edge(c, g, 1);
        }
    }
    b.build().expect("random construction is a valid circuit")
}

/// DAG on `n` vertices with each forward pair `(i, j)`, `i < j`, present
/// with probability `edge_prob`.
pub fn random_dvd(rng: &mut impl Rng, n: usize, edge_prob: f64, path_limit: usize) -> DvdInstance {
    let names = (0..n).map(|i| format!("h{i}")).collect();
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(edge_prob) {
                edges.push((VertexId::from(i), VertexId::from(j)));
            }
        }
    }
    DvdInstance::new(names, edges, path_limit).expect("forward edges are acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(red_chain(4).len(), 5);
        assert_eq!(red_chain(4).red_count(), 4);
        let c = layered(&mut rng, 3, 5, 0.5);
        assert_eq!(c.len(), 20);
        let c = series_parallel(&mut rng, 30, 0.5);
        assert_eq!(c.len(), 31);
        assert_eq!(series_parallel(&mut rng, 0, 0.5).len(), 1);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = layered(&mut ChaCha8Rng::seed_from_u64(9), 4, 6, 0.4);
        let b = layered(&mut ChaCha8Rng::seed_from_u64(9), 4, 6, 0.4);
        assert_eq!(a, b);
    }
}
