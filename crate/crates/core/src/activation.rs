//! The irreversible threshold activation process.
//!
//! A vertex becomes active once at least `tau(v)` of its neighbors are
//! active; active vertices stay active. [`step`] and [`closure`] follow the
//! synchronous round structure literally. [`Propagator`] computes only the
//! final active set with a work queue and is what the solvers use.

use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::ThresholdGraph;
use crate::vertex_set::VertexSet;

/// `A^(0)(S), A^(1)(S), ..., A^(k)(S)` where `A^(k)` is the first fixpoint.
///
/// Every stored step strictly contains the previous one; the repeated
/// fixpoint entry is not stored, so `converged_at == steps.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivationTrace {
    pub steps: Vec<VertexSet>,
    pub converged_at: usize,
}

impl ActivationTrace {
    /// The active vertex set `A(S)`.
    pub fn final_set(&self) -> &VertexSet {
        self.steps.last().expect("trace is never empty")
    }

    /// 1-based id lists, one per step.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(
            self.steps
                .iter()
                .map(|s| serde_json::Value::from(s.to_one_based()))
                .collect::<Vec<_>>(),
        )
    }
}

/// One synchronous round: `active ∪ { v : |N(v) ∩ active| >= tau(v) }`.
pub fn step(g: &ThresholdGraph, active: &VertexSet) -> Result<VertexSet> {
    g.check_set(active)?;
    Ok(step_unchecked(g, active))
}

fn step_unchecked(g: &ThresholdGraph, active: &VertexSet) -> VertexSet {
    let mut next = active.clone();
    for v in g.vertices() {
        if active.contains(v) {
            continue;
        }
        let hits = g.neighbors(v).iter().filter(|&&w| active.contains(w)).count();
        if hits >= g.tau(v) as usize {
            next.insert(v);
        }
    }
    next
}

/// Iterates [`step`] until two consecutive rounds agree.
pub fn closure(g: &ThresholdGraph, s: &VertexSet) -> Result<ActivationTrace> {
    g.check_set(s)?;
    let mut steps = vec![s.clone()];
    loop {
        let cur = steps.last().unwrap();
        let next = step_unchecked(g, cur);
        if &next == cur {
            break;
        }
        steps.push(next);
    }
    let converged_at = steps.len() - 1;
    Ok(ActivationTrace {
        steps,
        converged_at,
    })
}

/// Final active set `A(S)`.
pub fn active_set(g: &ThresholdGraph, s: &VertexSet) -> Result<VertexSet> {
    g.check_set(s)?;
    Ok(Propagator::new(g).active_set(s))
}

/// `A(S) = V`.
pub fn is_target_set(g: &ThresholdGraph, s: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    Ok(Propagator::new(g).is_target_set(s))
}

/// Queue-based activation with reusable scratch buffers. The final set does
/// not depend on processing order because activation is monotone.
pub struct Propagator<'g> {
    g: &'g ThresholdGraph,
    hits: Vec<u32>,
    active: Vec<bool>,
    queue: VecDeque<u32>,
}

impl<'g> Propagator<'g> {
    pub fn new(g: &'g ThresholdGraph) -> Self {
        Propagator {
            g,
            hits: vec![0; g.n()],
            active: vec![false; g.n()],
            queue: VecDeque::new(),
        }
    }

    pub fn graph(&self) -> &'g ThresholdGraph {
        self.g
    }

    /// Runs the cascade from `seeds` and returns how many vertices end active.
    /// Members of `seeds` must be in range.
    fn run(&mut self, seeds: impl IntoIterator<Item = u32>) -> usize {
        let g = self.g;
        self.hits.iter_mut().for_each(|h| *h = 0);
        self.active.iter_mut().for_each(|a| *a = false);
        self.queue.clear();
        let mut count = 0;
        for v in seeds {
            if !self.active[v as usize] {
                self.active[v as usize] = true;
                self.queue.push_back(v);
                count += 1;
            }
        }
        for v in g.vertices() {
            if !self.active[v as usize] && g.tau(v) == 0 {
                self.active[v as usize] = true;
                self.queue.push_back(v);
                count += 1;
            }
        }
        while let Some(u) = self.queue.pop_front() {
            for &w in g.neighbors(u) {
                let wi = w as usize;
                if self.active[wi] {
                    continue;
                }
                self.hits[wi] += 1;
                if self.hits[wi] >= g.tau(w) {
                    self.active[wi] = true;
                    self.queue.push_back(w);
                    count += 1;
                }
            }
        }
        count
    }

    pub fn active_set(&mut self, s: &VertexSet) -> VertexSet {
        self.run(s.iter());
        self.active
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(v, _)| v as u32)
            .collect()
    }

    pub fn active_count(&mut self, s: &VertexSet) -> usize {
        self.run(s.iter())
    }

    pub fn is_target_set(&mut self, s: &VertexSet) -> bool {
        self.run(s.iter()) == self.g.n()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{set_cover_thresholds, CoverMode};
    use proptest::prelude::*;

    fn set(v: &[u32]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn triangle() -> ThresholdGraph {
        ThresholdGraph::uniform(3, &[(0, 1), (1, 2), (0, 2)], 2).unwrap()
    }

    fn p3() -> ThresholdGraph {
        ThresholdGraph::uniform(3, &[(0, 1), (1, 2)], 1).unwrap()
    }

    #[test]
    fn step_below_threshold_everywhere() {
        assert_eq!(step(&triangle(), &set(&[0])).unwrap(), set(&[0]));
    }

    #[test]
    fn step_on_path() {
        assert_eq!(step(&p3(), &set(&[0])).unwrap(), set(&[0, 1]));
    }

    #[test]
    fn full_set_is_fixed() {
        let g = triangle();
        assert_eq!(step(&g, &g.vertex_set()).unwrap(), g.vertex_set());
        let t = closure(&g, &g.vertex_set()).unwrap();
        assert_eq!(t.converged_at, 0);
    }

    #[test]
    fn closure_on_path() {
        let t = closure(&p3(), &set(&[0])).unwrap();
        assert_eq!(t.final_set(), &set(&[0, 1, 2]));
        assert_eq!(t.converged_at, 2);
        assert_eq!(t.steps, vec![set(&[0]), set(&[0, 1]), set(&[0, 1, 2])]);
    }

    #[test]
    fn empty_seed_stays_empty() {
        let t = closure(&p3(), &VertexSet::new()).unwrap();
        assert_eq!(t.final_set(), &VertexSet::new());
        assert_eq!(t.converged_at, 0);
    }

    #[test]
    fn zero_threshold_fires_in_first_round() {
        let g = ThresholdGraph::uniform(2, &[], 0).unwrap();
        let t = closure(&g, &VertexSet::new()).unwrap();
        assert_eq!(t.converged_at, 1);
        assert!(is_target_set(&g, &VertexSet::new()).unwrap());
    }

    #[test]
    fn gadget_is_one_way() {
        // tail v=0, head w=1, t=2, h=3, b1=4, b2=5
        let edges = [(0, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5)];
        let g = ThresholdGraph::from_edges(6, &edges, vec![99, 99, 1, 2, 1, 1]).unwrap();
        let from_tail = closure(&g, &set(&[0])).unwrap();
        assert!(set(&[0, 2, 3, 4, 5]).is_subset(from_tail.final_set()));
        let from_head = closure(&g, &set(&[1])).unwrap();
        assert_eq!(from_head.final_set(), &set(&[1]));
    }

    #[test]
    fn target_set_examples() {
        let g = triangle();
        assert!(is_target_set(&g, &g.vertex_set()).unwrap());
        assert!(is_target_set(&g, &set(&[0, 1])).unwrap());
        assert!(!is_target_set(&g, &set(&[0])).unwrap());
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert!(step(&p3(), &set(&[3])).is_err());
        assert!(closure(&p3(), &set(&[7])).is_err());
        assert!(is_target_set(&p3(), &set(&[3])).is_err());
    }

    fn small_graph() -> impl Strategy<Value = (ThresholdGraph, u64)> {
        (1usize..9).prop_flat_map(|n| {
            let pairs: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
                .collect();
            let m = pairs.len();
            (
                prop::collection::vec(any::<bool>(), m),
                prop::collection::vec(0u32..4, n),
                any::<u64>(),
            )
                .prop_map(move |(pick, tau, mask)| {
                    let edges: Vec<_> = pairs
                        .iter()
                        .zip(&pick)
                        .filter(|(_, &b)| b)
                        .map(|(&e, _)| e)
                        .collect();
                    let g = ThresholdGraph::from_edges(n, &edges, tau).unwrap();
                    (g, mask & ((1u64 << n) - 1))
                })
        })
    }

    proptest! {
        #[test]
        fn trace_is_strictly_growing_and_short((g, mask) in small_graph()) {
            let s = VertexSet::from_mask(mask);
            let t = closure(&g, &s).unwrap();
            prop_assert!(t.converged_at <= g.n());
            for w in t.steps.windows(2) {
                prop_assert!(w[0].is_subset(&w[1]) && w[0] != w[1]);
            }
            prop_assert_eq!(t.final_set(), &active_set(&g, &s).unwrap());
        }

        #[test]
        fn extensive_idempotent_monotone((g, mask) in small_graph(), extra in any::<u64>()) {
            let s = VertexSet::from_mask(mask);
            let bigger = VertexSet::from_mask(mask | (extra & ((1u64 << g.n()) - 1)));
            let a = active_set(&g, &s).unwrap();
            prop_assert!(s.is_subset(&a));
            prop_assert_eq!(active_set(&g, &a).unwrap(), a.clone());
            prop_assert!(a.is_subset(&active_set(&g, &bigger).unwrap()));
            if is_target_set(&g, &s).unwrap() {
                prop_assert!(is_target_set(&g, &bigger).unwrap());
            }
        }

        #[test]
        fn degree_thresholds_give_vertex_covers((g, mask) in small_graph()) {
            let vc = set_cover_thresholds(&g, CoverMode::VertexCover);
            let s = VertexSet::from_mask(mask);
            let covers = g.edges().all(|(u, v)| s.contains(u) || s.contains(v));
            prop_assert_eq!(is_target_set(&vc, &s).unwrap(), covers);
        }
    }
}
