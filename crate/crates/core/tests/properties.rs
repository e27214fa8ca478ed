mod common;

use bootstrap_core::baselines::{after_every_red, greedy_topological};
use bootstrap_core::dvd::{reduce, DvdInstance, Provenance};
use bootstrap_core::exact::{exact_bootstrap, exact_dvd, ExactOptions};
use bootstrap_core::paths::{enumerate_interesting_paths, is_feasible_by_paths, VIOLATION_TOL};
use bootstrap_core::{format, generate, lp, rounding};
use bootstrap_core::{Budget, Circuit, Color, MarkSet, VertexId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn circuit(seed: u64, n: usize, white: f64, red: f64) -> Circuit {
    generate::random_circuit(&mut ChaCha8Rng::seed_from_u64(seed), n, white, red)
}

prop_compose! {
    fn small_circuit(min: usize, max: usize)(seed in any::<u64>(), n in min..=max, white in 0.0..0.2, red in 0.5..0.95)
        -> Circuit
    {
        circuit(seed, n, white, red)
    }
}

fn budget(l: usize) -> Budget {
    Budget::new(l).unwrap()
}

fn marks_from(c: &Circuit, bits: u64) -> MarkSet {
    MarkSet::from_ids(
        c.len(),
        c.vertices().filter(|v| bits >> (v.index() % 64) & 1 == 1),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn levels_match_the_recursive_oracle(c in small_circuit(1, 16), bits in any::<u64>()) {
        let marks = marks_from(&c, bits);
        let levels = c.eval_levels(&marks);
        prop_assert_eq!(levels.as_slice(), &common::levels(&c, marks.flags())[..]);
    }

    #[test]
    fn enumerated_paths_match_the_oracle(c in small_circuit(1, 12), l in 1usize..=3) {
        let mut mine: Vec<Vec<VertexId>> = enumerate_interesting_paths(&c, budget(l), usize::MAX)
            .unwrap()
            .iter()
            .map(|p| p.vertices().to_vec())
            .collect();
        let mut oracle = common::interesting_paths(&c, budget(l));
        mine.sort();
        oracle.sort();
        prop_assert_eq!(mine, oracle);
    }

    #[test]
    fn adding_marks_preserves_feasibility(c in small_circuit(1, 14), l in 1usize..=3, a in any::<u64>(), b in any::<u64>()) {
        let small = marks_from(&c, a);
        let large = marks_from(&c, a | b);
        if c.is_feasible_by_levels(&small, budget(l)) {
            prop_assert!(c.is_feasible_by_levels(&large, budget(l)));
        }
    }

    #[test]
    fn white_marks_change_nothing(c in small_circuit(1, 14), bits in any::<u64>()) {
        let marks = marks_from(&c, bits);
        let mut with_white = marks.clone();
        for v in c.vertices_of(Color::White) {
            with_white.insert(v);
        }
        prop_assert_eq!(c.eval_levels(&marks), c.eval_levels(&with_white));
    }

    #[test]
    fn marking_everything_is_feasible(c in small_circuit(1, 16), l in 1usize..=4) {
        let all = MarkSet::full(c.len());
        prop_assert!(c.is_feasible_by_levels(&all, budget(l)));
        prop_assert!(is_feasible_by_paths(&c, &all, budget(l), usize::MAX).unwrap());
    }

    #[test]
    fn circuit_text_round_trips(c in small_circuit(1, 16)) {
        let text = format::write_circuit(&c);
        let back = format::parse_circuit(&text).unwrap();
        prop_assert_eq!(format::write_circuit(&back), text);
        prop_assert_eq!(back, c);
    }

    #[test]
    fn marks_text_round_trips(c in small_circuit(1, 16), bits in any::<u64>()) {
        let marks = marks_from(&c, bits);
        let back = format::parse_marks(&format::write_marks(&c, &marks), &c).unwrap();
        prop_assert_eq!(back, marks);
    }

    #[test]
    fn baselines_are_feasible(c in small_circuit(1, 14), l in 1usize..=3) {
        let b = budget(l);
        let every = after_every_red(&c);
        prop_assert_eq!(every.len(), c.red_count());
        prop_assert!(common::feasible(&c, &every, b));

        let greedy = greedy_topological(&c, b);
        prop_assert!(common::feasible(&c, &greedy, b));
        let levels = c.eval_levels(&greedy);
        for v in greedy.iter() {
            prop_assert!(c.color(v) != Color::White);
            prop_assert_eq!(levels.get(v) as usize, l);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn exact_matches_full_enumeration(c in small_circuit(6, 13), l in 1usize..=3) {
        let b = budget(l);
        let res = exact_bootstrap(&c, b, ExactOptions::default()).unwrap();
        prop_assert_eq!(res.optimum, common::optimum(&c, b));
        prop_assert_eq!(res.witness.len(), res.optimum);
        prop_assert!(common::feasible(&c, &res.witness, b));
        prop_assert!(greedy_topological(&c, b).len() >= res.optimum);
    }

    #[test]
    fn relaxation_is_a_lower_bound_and_feasible(c in small_circuit(6, 13), l in 1usize..=3) {
        let b = budget(l);
        let res = lp::solve_relaxation(&c, b).unwrap();
        let x = res.weights.as_slice();
        prop_assert!(x.iter().all(|&v| (0.0..=1.0).contains(&v)));
        prop_assert!((res.objective - res.weights.sum()).abs() < 1e-9);
        for path in common::interesting_paths(&c, b) {
            prop_assert!(common::non_final_length(&path, x) >= 1.0 - VIOLATION_TOL);
        }
        prop_assert!(res.objective <= common::optimum(&c, b) as f64 + 1e-6);

        let out = rounding::derandomized_round(&c, &res.tables).unwrap();
        prop_assert!(common::feasible(&c, &out.marks, b));
        for path in common::interesting_paths(&c, b) {
            prop_assert!(common::hit(&path, &out.marks));
        }
    }

    #[test]
    fn exact_dvd_matches_full_enumeration(seed in any::<u64>(), n in 1usize..=7, p in 0.1..0.6, l in 2usize..=3) {
        let h = generate::random_dvd(&mut ChaCha8Rng::seed_from_u64(seed), n, p, l);
        let res = exact_dvd(&h, ExactOptions::default()).unwrap();
        prop_assert_eq!(res.optimum, common::dvd_optimum(&h));
        prop_assert!(common::longest_path(&h, res.witness.flags()) < l);
    }

    #[test]
    fn reduction_shape_and_transfers(seed in any::<u64>(), n in 1usize..=7, p in 0.1..0.6, l in 2usize..=3) {
        let h = generate::random_dvd(&mut ChaCha8Rng::seed_from_u64(seed), n, p, l);
        let map = reduce(&h).unwrap();
        let g = &map.circuit;
        let gadgets: usize = (0..n)
            .map(|v| h.preds(VertexId::from(v)).len())
            .filter(|&d| d >= 3)
            .sum();
        prop_assert_eq!(g.len(), 2 * n + 1 + gadgets);
        prop_assert_eq!(g.red_count(), 2 * n);
        prop_assert_eq!(map.budget.get(), l);
        prop_assert_eq!(map.provenance.len(), g.len());
        prop_assert_eq!(
            map.provenance.iter().filter(|p| matches!(p, Provenance::Gadget { .. })).count(),
            gadgets
        );

        let deleted = exact_dvd(&h, ExactOptions::default()).unwrap().witness;
        let marks = map.push_forward(&h, &deleted).unwrap();
        prop_assert_eq!(marks.len(), deleted.len());
        prop_assert!(common::feasible(g, &marks, map.budget));

        let all_red = after_every_red(g);
        let back = map.pull_back(&all_red).unwrap();
        prop_assert!(h.is_feasible(&back));
        prop_assert!(back.len() <= all_red.len());
    }
}

#[test]
fn reduction_of_a_short_path() {
    let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
    let h = DvdInstance::new(
        names,
        [(VertexId(0), VertexId(1)), (VertexId(1), VertexId(2))],
        2,
    )
    .unwrap();
    let map = reduce(&h).unwrap();
    assert_eq!(map.circuit.len(), 7);
    assert_eq!(exact_dvd(&h, ExactOptions::default()).unwrap().optimum, 1);
    assert_eq!(
        exact_bootstrap(&map.circuit, map.budget, ExactOptions::default())
            .unwrap()
            .optimum,
        1
    );

    let empty = DvdInstance::new(vec![], [], 2).unwrap();
    let map = reduce(&empty).unwrap();
    assert_eq!(map.circuit.len(), 1);
    assert_eq!(map.circuit.color(map.source), Color::White);
}

#[test]
fn indegree_three_uses_a_gadget_chain() {
    let names = ["a", "b", "c", "d"].map(String::from).to_vec();
    let edges = [(0, 3), (1, 3), (2, 3)].map(|(a, b)| (VertexId(a), VertexId(b)));
    let h = DvdInstance::new(names, edges, 2).unwrap();
    let map = reduce(&h).unwrap();
    let chain = &map.gadget_of[3];
    assert_eq!(chain.len(), 3);
    assert!(chain.iter().all(|&w| map.circuit.color(w) == Color::Blue));
    assert_eq!(
        exact_bootstrap(&map.circuit, map.budget, ExactOptions::default())
            .unwrap()
            .optimum,
        common::dvd_optimum(&h)
    );

    // a mark on the gadget chain is moved onto its owner
    let mut marks = MarkSet::empty(map.circuit.len());
    marks.insert(chain[2]);
    let back = map.pull_back(&marks).unwrap();
    assert_eq!(back.iter().collect::<Vec<_>>(), vec![VertexId(3)]);
    assert!(h.is_feasible(&back));
}

#[test]
fn derandomized_beats_every_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let c = generate::layered(&mut rng, 4, 4, 0.6);
        let b = budget(2);
        let res = lp::solve_relaxation(&c, b).unwrap();
        let best = rounding::derandomized_round(&c, &res.tables).unwrap();
        for k in 0..=100 {
            let marks = rounding::round_at(&res.tables, k as f64 / 100.0);
            assert!(common::feasible(&c, &marks, b));
            assert!(best.cardinality <= marks.len());
        }
    }
}
