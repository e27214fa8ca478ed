//! Reference strategies the LP rounding is compared against.

use crate::circuit::{Budget, Circuit, Color, MarkSet};

/// Bootstraps the output of every multiplicative gate.
pub fn after_every_red(circuit: &Circuit) -> MarkSet {
    MarkSet::from_ids(circuit.len(), circuit.vertices_of(Color::Red))
}

/// Sweeps the circuit in topological order and marks every vertex whose
/// level reaches the budget, so its successors start from zero. Sinks are
/// left alone: a mark only affects successors.
pub fn greedy_topological(circuit: &Circuit, budget: Budget) -> MarkSet {
    let limit = budget.get() as u32;
    let mut marks = MarkSet::empty(circuit.len());
    let mut levels = vec![0u32; circuit.len()];
    for &v in circuit.topological_order() {
        let color = circuit.color(v);
        if color == Color::White {
            continue;
        }
        let incoming = circuit
            .preds(v)
            .iter()
            .map(|&(u, _)| {
                if marks.contains(u) {
                    0
                } else {
                    levels[u.index()]
                }
            })
            .max()
            .unwrap_or(0);
        let level = incoming + (color == Color::Red) as u32;
        levels[v.index()] = level;
        if level == limit && !circuit.succs(v).is_empty() {
            marks.insert(v);
        }
    }
    marks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{CircuitBuilder, VertexId};

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
    fn chain() {
        for l in 1..5 {
            let c = red_chain(l + 1);
            let budget = Budget::new(l).unwrap();
            let g = greedy_topological(&c, budget);
            assert_eq!(g.iter().collect::<Vec<_>>(), vec![VertexId::from(l)]);
            assert!(c.is_feasible_by_levels(&g, budget));
            assert_eq!(after_every_red(&c).len(), l + 1);
            assert!(greedy_topological(&red_chain(l), budget).is_empty());
        }
    }

    #[test]
    fn no_reds() {
        let c = Circuit::validate(vec![("w".into(), Color::White)], vec![]).unwrap();
        assert!(after_every_red(&c).is_empty());
    }
}
