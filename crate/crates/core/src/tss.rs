//! Target Set Selection: the minimum target set `opt(G)`.

use crate::activation::Propagator;
use crate::error::{Error, Result};
use crate::graph::ThresholdGraph;
use crate::vertex_set::VertexSet;
use crate::SearchLimits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinTargetSet {
    pub size: usize,
    pub witness: VertexSet,
}

/// Visits the `k`-subsets of `pool` in lexicographic order until `f` returns true.
fn for_each_combination(pool: &[u32], k: usize, mut f: impl FnMut(&[u32]) -> bool) {
    if k > pool.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut pick: Vec<u32> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        if f(&pick) {
            return;
        }
        // rightmost position that can still advance
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < pool.len() - k + i) else {
            return;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in pos..k {
            pick[j] = pool[idx[j]];
        }
    }
}

fn check_limit(g: &ThresholdGraph, limits: &SearchLimits) -> Result<()> {
    if g.n() > limits.max_n {
        return Err(Error::TooLarge {
            size: g.n(),
            limit: limits.max_n,
        });
    }
    Ok(())
}

/// Exhaustive search in cardinality-then-lexicographic order. Vertices with
/// `tau(v) > deg(v)` are placed in every candidate up front.
///
/// The witness is the lexicographically smallest minimum target set.
pub fn min_target_set_exact(g: &ThresholdGraph, limits: &SearchLimits) -> Result<MinTargetSet> {
    check_limit(g, limits)?;
    let forced = g.forced_vertices();
    let pool: Vec<u32> = g.vertices().filter(|&v| !forced.contains(v)).collect();
    let mut prop = Propagator::new(g);
    for extra in 0..=pool.len() {
        let mut found = None;
        for_each_combination(&pool, extra, |pick| {
            let mut s = forced.clone();
            s.extend(pick.iter().copied());
            if prop.is_target_set(&s) {
                found = Some(s);
                true
            } else {
                false
            }
        });
        if let Some(witness) = found {
            return Ok(MinTargetSet {
                size: witness.len(),
                witness,
            });
        }
    }
    unreachable!("V is always a target set")
}

/// Every minimum target set, in lexicographic order.
pub fn all_min_target_sets(g: &ThresholdGraph, limits: &SearchLimits) -> Result<Vec<VertexSet>> {
    let opt = min_target_set_exact(g, limits)?;
    let forced = g.forced_vertices();
    let pool: Vec<u32> = g.vertices().filter(|&v| !forced.contains(v)).collect();
    let mut prop = Propagator::new(g);
    let mut all = Vec::new();
    for_each_combination(&pool, opt.size - forced.len(), |pick| {
        let mut s = forced.clone();
        s.extend(pick.iter().copied());
        if prop.is_target_set(&s) {
            all.push(s);
        }
        false
    });
    Ok(all)
}

/// Greedy upper bound: repeatedly seed the vertex whose addition activates
/// the most vertices (smallest id on ties) until everything is active.
pub fn min_target_set_greedy(g: &ThresholdGraph) -> VertexSet {
    let mut prop = Propagator::new(g);
    let mut cur = VertexSet::new();
    while prop.active_count(&cur) < g.n() {
        let mut best: Option<(usize, u32)> = None;
        for v in g.vertices().filter(|&v| !cur.contains(v)) {
            let mut cand = cur.clone();
            cand.insert(v);
            let reach = prop.active_count(&cand);
            if best.is_none_or(|(b, _)| reach > b) {
                best = Some((reach, v));
            }
        }
        cur.insert(best.expect("an inactive vertex exists").1);
    }
    cur
}
