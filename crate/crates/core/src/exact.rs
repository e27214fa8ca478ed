//! Brute-force optima for small instances.
//!
//! Subsets are enumerated by increasing cardinality and the first feasible
//! one is returned. No pruning: these solvers exist to be obviously right.

use itertools::Itertools;

use crate::circuit::{Budget, Circuit, Color, MarkSet, VertexId};
use crate::dvd::DvdInstance;
use crate::error::{Error, Result};

pub const DEFAULT_SUBSET_CAP: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult {
    pub optimum: usize,
    pub witness: MarkSet,
    /// Subsets checked, the witness included.
    pub explored: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct ExactOptions {
    /// Largest subset size to try; `None` means no limit.
    pub max_size: Option<usize>,
    /// Fail with `TooLarge` once this many subsets have been examined.
    pub max_subsets: u64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            max_size: None,
            max_subsets: DEFAULT_SUBSET_CAP,
        }
    }
}

fn smallest_feasible(
    universe: usize,
    candidates: &[VertexId],
    options: ExactOptions,
    mut feasible: impl FnMut(&[bool]) -> bool,
) -> Result<Option<ExactResult>> {
    let mut flags = vec![false; universe];
    let mut explored = 0u64;
    let max_size = options
        .max_size
        .unwrap_or(candidates.len())
        .min(candidates.len());
    for size in 0..=max_size {
        for subset in candidates.iter().combinations(size) {
            if explored == options.max_subsets {
                return Err(Error::TooLarge {
                    cap: options.max_subsets,
                });
            }
            explored += 1;
            for &&v in &subset {
                flags[v.index()] = true;
            }
            let ok = feasible(&flags);
            for &&v in &subset {
                flags[v.index()] = false;
            }
            if ok {
                return Ok(Some(ExactResult {
                    optimum: size,
                    witness: MarkSet::from_ids(universe, subset.into_iter().copied()),
                    explored,
                }));
            }
        }
    }
    Ok(None)
}

/// Minimum feasible marking. White vertices are never candidates since
/// marking them leaves every level unchanged. Returns `InfeasibleInput` only
/// when `max_size` is set below the optimum.
pub fn exact_bootstrap(
    circuit: &Circuit,
    budget: Budget,
    options: ExactOptions,
) -> Result<ExactResult> {
    let candidates: Vec<VertexId> = circuit
        .vertices()
        .filter(|&v| circuit.color(v) != Color::White)
        .collect();
    let mut levels = vec![0u32; circuit.len()];
    let limit = budget.get() as u32;
    smallest_feasible(circuit.len(), &candidates, options, |marked| {
        circuit.fill_levels(marked, &mut levels);
        levels.iter().all(|&l| l <= limit)
    })?
    .ok_or_else(|| Error::InfeasibleInput("no marking within the size limit".into()))
}

/// Minimum deletion set leaving no path of `L` vertices.
pub fn exact_dvd(h: &DvdInstance, options: ExactOptions) -> Result<ExactResult> {
    let candidates: Vec<VertexId> = (0..h.len()).map(VertexId::from).collect();
    smallest_feasible(h.len(), &candidates, options, |deleted| {
        h.longest_path_avoiding(deleted) < h.path_limit()
    })?
    .ok_or_else(|| Error::InfeasibleInput("no deletion set within the size limit".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;

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
    fn chain_optimum_is_one() {
        for l in 1..4 {
            let budget = Budget::new(l).unwrap();
            let res = exact_bootstrap(&red_chain(l + 1), budget, ExactOptions::default()).unwrap();
            assert_eq!(res.optimum, 1);
            let res = exact_bootstrap(&red_chain(l), budget, ExactOptions::default()).unwrap();
            assert_eq!(res.optimum, 0);
            assert!(res.witness.is_empty());
            assert_eq!(res.explored, 1);
        }
    }

    #[test]
    fn subset_cap() {
        let c = red_chain(9);
        let opts = ExactOptions {
            max_size: None,
            max_subsets: 5,
        };
        assert_eq!(
            exact_bootstrap(&c, Budget::new(1).unwrap(), opts).unwrap_err(),
            Error::TooLarge { cap: 5 }
        );
    }

    #[test]
    fn size_limit_below_optimum() {
        let c = red_chain(5);
        let opts = ExactOptions {
            max_size: Some(1),
            ..ExactOptions::default()
        };
        assert!(matches!(
            exact_bootstrap(&c, Budget::new(1).unwrap(), opts),
            Err(Error::InfeasibleInput(_))
        ));
    }

    #[test]
    fn path_of_three() {
        let h = DvdInstance::path(3, 2).unwrap();
        let res = exact_dvd(&h, ExactOptions::default()).unwrap();
        assert_eq!(res.optimum, 1);
        assert_eq!(res.witness.iter().collect::<Vec<_>>(), vec![VertexId(1)]);

        let edgeless = DvdInstance::new(vec!["a".into(), "b".into()], vec![], 2).unwrap();
        assert_eq!(
            exact_dvd(&edgeless, ExactOptions::default())
                .unwrap()
                .optimum,
            0
        );
    }
}
