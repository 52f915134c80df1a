//! Reconfiguration of target sets under token addition and removal.
//!
//! A sequence `S(1), ..., S(T)` moves from `X` to `Y` one vertex at a time
//! and must consist of target sets only. Its size is the largest `|S(t)|`;
//! the minmax problem asks for the smallest achievable size.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::activation::Propagator;
use crate::error::{Error, Result};
use crate::graph::ThresholdGraph;
use crate::vertex_set::VertexSet;
use crate::SearchLimits;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReconfigSequence {
    pub sets: Vec<VertexSet>,
}

impl ReconfigSequence {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        ReconfigSequence { sets }
    }

    pub fn single(s: VertexSet) -> Self {
        ReconfigSequence { sets: vec![s] }
    }

    /// `max_t |S(t)|`, zero for an empty sequence.
    pub fn size(&self) -> usize {
        self.sets.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn first(&self) -> Option<&VertexSet> {
        self.sets.first()
    }

    pub fn last(&self) -> Option<&VertexSet> {
        self.sets.last()
    }

    /// Appends `last ⊕ {v}`.
    pub fn push_toggle(&mut self, v: u32) {
        let next = self.sets.last().expect("non-empty sequence").toggled(v);
        self.sets.push(next);
    }

    /// Same sets, reversed order.
    pub fn reversed(&self) -> Self {
        ReconfigSequence {
            sets: self.sets.iter().rev().cloned().collect(),
        }
    }

    /// Merges runs of equal consecutive sets into one entry.
    pub fn dedup(mut self) -> Self {
        self.sets.dedup();
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(
            self.sets
                .iter()
                .map(|s| serde_json::Value::from(s.to_one_based()))
                .collect::<Vec<_>>(),
        )
    }
}

/// Why a sequence was rejected. `index` is 0-based into the sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    WrongStart,
    WrongEnd,
    OutOfRange { index: usize },
    NotTarget { index: usize },
    BadStep { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceVerdict {
    pub valid: bool,
    /// Meaningful only when `valid`.
    pub size: usize,
    pub first_violation: Option<Violation>,
}

/// Structural validation with an arbitrary membership oracle. `in_range`
/// guards the oracle against ids it cannot handle.
pub fn validate_with(
    seq: &ReconfigSequence,
    x: &VertexSet,
    y: &VertexSet,
    mut in_range: impl FnMut(&VertexSet) -> bool,
    mut is_member: impl FnMut(&VertexSet) -> bool,
) -> SequenceVerdict {
    let fail = |v: Violation| SequenceVerdict {
        valid: false,
        size: seq.size(),
        first_violation: Some(v),
    };
    if seq.is_empty() {
        return fail(Violation::Empty);
    }
    if &seq.sets[0] != x {
        return fail(Violation::WrongStart);
    }
    for (i, s) in seq.sets.iter().enumerate() {
        if !in_range(s) {
            return fail(Violation::OutOfRange { index: i });
        }
        if i > 0 && seq.sets[i - 1].symmetric_difference(s).len() != 1 {
            return fail(Violation::BadStep { index: i });
        }
        if !is_member(s) {
            return fail(Violation::NotTarget { index: i });
        }
    }
    if seq.last() != Some(y) {
        return fail(Violation::WrongEnd);
    }
    SequenceVerdict {
        valid: true,
        size: seq.size(),
        first_violation: None,
    }
}

/// Checks that `seq` runs from `x` to `y` through target sets of `g`, one
/// vertex at a time.
pub fn validate_sequence(
    g: &ThresholdGraph,
    seq: &ReconfigSequence,
    x: &VertexSet,
    y: &VertexSet,
) -> SequenceVerdict {
    let mut prop = Propagator::new(g);
    validate_with(
        seq,
        x,
        y,
        |s| g.check_set(s).is_ok(),
        |s| prop.is_target_set(s),
    )
}

fn require_target(g: &ThresholdGraph, prop: &mut Propagator<'_>, s: &VertexSet, name: &str) -> Result<()> {
    g.check_set(s)?;
    if !prop.is_target_set(s) {
        return Err(Error::NotTargetSet(name.to_string()));
    }
    Ok(())
}

/// `X -> X ∪ Y -> Y`: add `Y \ X` in ascending order, then remove `X \ Y`
/// in ascending order. Size is `|X ∪ Y|`.
pub fn two_approx(g: &ThresholdGraph, x: &VertexSet, y: &VertexSet) -> Result<ReconfigSequence> {
    let mut prop = Propagator::new(g);
    require_target(g, &mut prop, x, "X")?;
    require_target(g, &mut prop, y, "Y")?;
    Ok(union_path(x, y))
}

pub(crate) fn union_path(x: &VertexSet, y: &VertexSet) -> ReconfigSequence {
    let mut seq = ReconfigSequence::single(x.clone());
    for v in &y.difference(x) {
        seq.push_toggle(v);
    }
    for v in &x.difference(y) {
        seq.push_toggle(v);
    }
    seq
}

/// Result of a cap search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinmaxResult {
    pub value: usize,
    pub witness: ReconfigSequence,
    pub caps_tried: Vec<usize>,
    pub states_explored: usize,
}

impl MinmaxResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": self.value,
            "cap_tried": self.caps_tried,
            "states_explored": self.states_explored,
            "witness": self.witness.to_json(),
        })
    }
}

/// Membership oracle memoized on the canonical set encoding.
pub struct Memo<F> {
    oracle: F,
    cache: HashMap<VertexSet, bool>,
}

impl<F: FnMut(&VertexSet) -> bool> Memo<F> {
    pub fn new(oracle: F) -> Self {
        Memo {
            oracle,
            cache: HashMap::new(),
        }
    }

    pub fn test(&mut self, s: &VertexSet) -> bool {
        if let Some(&hit) = self.cache.get(s) {
            return hit;
        }
        let r = (self.oracle)(s);
        self.cache.insert(s.clone(), r);
        r
    }
}

/// Breadth-first search from `x` to `y` over member sets of size at most
/// `cap`, toggling vertices of `universe`. Neighbors are generated in the
/// order of `universe`, so with an ascending universe the first discovery
/// of every state uses the smallest toggled vertex.
///
/// Returns the witness path (if any) and the number of states expanded.
pub fn cap_bfs<F: FnMut(&VertexSet) -> bool>(
    universe: &[u32],
    member: &mut Memo<F>,
    x: &VertexSet,
    y: &VertexSet,
    cap: usize,
) -> (Option<ReconfigSequence>, usize) {
    if x.len() > cap || y.len() > cap {
        return (None, 0);
    }
    let mut nodes: Vec<VertexSet> = vec![x.clone()];
    let mut parent: Vec<usize> = vec![usize::MAX];
    let mut index: HashMap<VertexSet, usize> = HashMap::from([(x.clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut explored = 0;

    let path_to = |nodes: &[VertexSet], parent: &[usize], mut i: usize| {
        let mut sets = Vec::new();
        while i != usize::MAX {
            sets.push(nodes[i].clone());
            i = parent[i];
        }
        sets.reverse();
        ReconfigSequence::new(sets)
    };

    if x == y {
        return (Some(ReconfigSequence::single(x.clone())), 1);
    }
    while let Some(i) = queue.pop_front() {
        explored += 1;
        let cur = nodes[i].clone();
        for &v in universe {
            if !cur.contains(v) && cur.len() + 1 > cap {
                continue;
            }
            let next = cur.toggled(v);
            if index.contains_key(&next) || !member.test(&next) {
                continue;
            }
            let j = nodes.len();
            index.insert(next.clone(), j);
            nodes.push(next);
            parent.push(i);
            if &nodes[j] == y {
                return (Some(path_to(&nodes, &parent, j)), explored);
            }
            queue.push_back(j);
        }
    }
    (None, explored)
}

/// Ascending cap search `b = max(|x|,|y|), +1, ...` up to `max_cap`.
/// The caller guarantees `x` and `y` are members.
pub fn minmax_search<F: FnMut(&VertexSet) -> bool>(
    universe: &[u32],
    member: &mut Memo<F>,
    x: &VertexSet,
    y: &VertexSet,
    max_cap: usize,
) -> Option<MinmaxResult> {
    let mut caps_tried = Vec::new();
    let mut states = 0;
    for cap in x.len().max(y.len())..=max_cap {
        caps_tried.push(cap);
        let (path, explored) = cap_bfs(universe, member, x, y, cap);
        states += explored;
        if let Some(witness) = path {
            return Some(MinmaxResult {
                value: cap,
                witness,
                caps_tried,
                states_explored: states,
            });
        }
    }
    None
}

fn exact_preconditions<'g>(
    g: &'g ThresholdGraph,
    x: &VertexSet,
    y: &VertexSet,
    limits: &SearchLimits,
) -> Result<Propagator<'g>> {
    if g.n() > limits.max_n {
        return Err(Error::TooLarge {
            size: g.n(),
            limit: limits.max_n,
        });
    }
    let mut prop = Propagator::new(g);
    require_target(g, &mut prop, x, "X")?;
    require_target(g, &mut prop, y, "Y")?;
    Ok(prop)
}

/// `opt_G(X <-> Y)` with a witness sequence attaining it.
pub fn minmax_exact(
    g: &ThresholdGraph,
    x: &VertexSet,
    y: &VertexSet,
    limits: &SearchLimits,
) -> Result<MinmaxResult> {
    let mut prop = exact_preconditions(g, x, y, limits)?;
    let universe: Vec<u32> = g.vertices().collect();
    let mut memo = Memo::new(|s: &VertexSet| prop.is_target_set(s));
    // |X ∪ Y| always suffices: the union path is a witness.
    let r = minmax_search(&universe, &mut memo, x, y, x.union(y).len());
    Ok(r.expect("union path exists under cap |X ∪ Y|"))
}

/// Is there a sequence from `x` to `y` of size at most `cap`?
pub fn reachable_under_cap(
    g: &ThresholdGraph,
    x: &VertexSet,
    y: &VertexSet,
    cap: usize,
    limits: &SearchLimits,
) -> Result<bool> {
    let mut prop = exact_preconditions(g, x, y, limits)?;
    if cap < x.len().max(y.len()) {
        return Ok(false);
    }
    if cap >= x.union(y).len() {
        return Ok(true);
    }
    let universe: Vec<u32> = g.vertices().collect();
    let mut memo = Memo::new(|s: &VertexSet| prop.is_target_set(s));
    Ok(cap_bfs(&universe, &mut memo, x, y, cap).0.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn star() -> ThresholdGraph {
        ThresholdGraph::uniform(4, &[(0, 1), (0, 2), (0, 3)], 1).unwrap()
    }

    #[test]
    fn length_one_sequence() {
        let g = star();
        let x = set(&[1]);
        let v = validate_sequence(&g, &ReconfigSequence::single(x.clone()), &x, &x);
        assert!(v.valid);
        assert_eq!(v.size, 1);
    }

    #[test]
    fn non_target_intermediate() {
        let g = star();
        let seq = ReconfigSequence::new(vec![set(&[1]), VertexSet::new(), set(&[2])]);
        let v = validate_sequence(&g, &seq, &set(&[1]), &set(&[2]));
        assert!(!v.valid);
        assert_eq!(v.first_violation, Some(Violation::NotTarget { index: 1 }));
    }

    #[test]
    fn structural_violations() {
        let g = star();
        let x = set(&[1]);
        let y = set(&[2]);
        let check = |seq: Vec<VertexSet>| validate_sequence(&g, &ReconfigSequence::new(seq), &x, &y).first_violation;
        assert_eq!(check(vec![]), Some(Violation::Empty));
        assert_eq!(check(vec![y.clone()]), Some(Violation::WrongStart));
        assert_eq!(check(vec![x.clone(), y.clone()]), Some(Violation::BadStep { index: 1 }));
        assert_eq!(check(vec![x.clone(), set(&[1, 2])]), Some(Violation::WrongEnd));
        assert_eq!(check(vec![x.clone(), set(&[1, 9])]), Some(Violation::OutOfRange { index: 1 }));
    }

    #[test]
    fn two_approx_on_star() {
        let g = star();
        let seq = two_approx(&g, &set(&[1]), &set(&[2])).unwrap();
        assert_eq!(seq.sets, vec![set(&[1]), set(&[1, 2]), set(&[2])]);
        assert_eq!(seq.size(), 2);
        assert!(validate_sequence(&g, &seq, &set(&[1]), &set(&[2])).valid);
        let same = two_approx(&g, &set(&[1]), &set(&[1])).unwrap();
        assert_eq!(same.len(), 1);
    }

    #[test]
    fn two_approx_rejects_non_targets() {
        let g = ThresholdGraph::uniform(3, &[(0, 1), (1, 2), (0, 2)], 2).unwrap();
        assert!(matches!(
            two_approx(&g, &set(&[0]), &set(&[0, 1])),
            Err(Error::NotTargetSet(_))
        ));
    }

    #[test]
    fn exact_on_star() {
        let g = star();
        let r = minmax_exact(&g, &set(&[1]), &set(&[2]), &SearchLimits::default()).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.caps_tried, vec![1, 2]);
        assert!(validate_sequence(&g, &r.witness, &set(&[1]), &set(&[2])).valid);
        let r = minmax_exact(&g, &set(&[3]), &set(&[3]), &SearchLimits::default()).unwrap();
        assert_eq!(r.value, 1);
    }

    #[test]
    fn star_caps() {
        let g = star();
        let lim = SearchLimits::default();
        let (x, y) = (set(&[1]), set(&[2]));
        assert!(!reachable_under_cap(&g, &x, &y, 0, &lim).unwrap());
        assert!(!reachable_under_cap(&g, &x, &y, 1, &lim).unwrap());
        assert!(reachable_under_cap(&g, &x, &y, 2, &lim).unwrap());
        assert!(reachable_under_cap(&g, &x, &y, 4, &lim).unwrap());
    }

    #[test]
    fn witness_uses_smallest_toggle_first() {
        // every nonempty subset is a target set; from {1} to {2} under cap 2
        // the BFS should go through {1,2} rather than anything else.
        let g = star();
        let r = minmax_exact(&g, &set(&[1]), &set(&[2]), &SearchLimits::default()).unwrap();
        assert_eq!(r.witness.sets, vec![set(&[1]), set(&[1, 2]), set(&[2])]);
    }

    #[test]
    fn unequal_sizes_are_accepted() {
        let g = star();
        let r = minmax_exact(&g, &set(&[0]), &set(&[1, 2, 3]), &SearchLimits::default()).unwrap();
        assert_eq!(r.value, 3);
    }

    #[test]
    fn limit_is_enforced() {
        let g = star();
        let err = minmax_exact(&g, &set(&[1]), &set(&[2]), &SearchLimits { max_n: 3 }).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
    }

    #[test]
    fn random_sandwich_and_symmetry() {
        use crate::generate::{random_graph, TauRule};
        use crate::tss::all_min_target_sets;
        let lim = SearchLimits::default();
        for seed in 0..30 {
            let g = random_graph(8, 0.4, TauRule::Uniform, seed).unwrap();
            let mins = all_min_target_sets(&g, &lim).unwrap();
            let (x, y) = (mins.first().unwrap(), mins.last().unwrap());
            let fwd = minmax_exact(&g, x, y, &lim).unwrap();
            let back = minmax_exact(&g, y, x, &lim).unwrap();
            assert_eq!(fwd.value, back.value);
            assert!(fwd.value >= x.len().max(y.len()));
            assert!(fwd.value <= x.union(y).len());
            assert!(validate_sequence(&g, &fwd.witness, x, y).valid);
            assert_eq!(fwd.witness.size(), fwd.value);
            for cap in 0..=g.n() {
                let r = reachable_under_cap(&g, x, y, cap, &lim).unwrap();
                assert_eq!(r, cap >= fwd.value, "seed {seed} cap {cap}");
            }
        }
    }
}
