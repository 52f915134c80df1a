//! Sequence-level operations on `(H; X, Y)`: the explicit completeness
//! sequence and the two normalizing projections.

use super::build::{ReductionOutput, Role};
use crate::activation::Propagator;
use crate::error::{Error, Result};
use crate::reconfig::{validate_sequence, ReconfigSequence};
use crate::vertex_set::VertexSet;

/// `X -> X ⊎ S -> S -> Y ⊎ S -> Y`, each phase in ascending id order.
///
/// Every set contains `X`, `Y` or `S`, so the sequence is valid for `H`
/// whenever `S` is a target set of `G`. Its size is `|S| + ell`.
pub fn canonical_sequence(r: &ReductionOutput, s: &VertexSet) -> Result<ReconfigSequence> {
    r.g.check_set(s)?;
    if !Propagator::new(&r.g).is_target_set(s) {
        return Err(Error::NotTargetSet("S (in G)".into()));
    }
    let mut seq = ReconfigSequence::single(r.x.clone());
    for v in s {
        seq.push_toggle(v);
    }
    for v in &r.x {
        seq.push_toggle(v);
    }
    for v in &r.y {
        seq.push_toggle(v);
    }
    for v in s {
        seq.push_toggle(v);
    }
    Ok(seq)
}

fn require_valid(r: &ReductionOutput, seq: &ReconfigSequence) -> Result<()> {
    let verdict = validate_sequence(&r.h, seq, &r.x, &r.y);
    match verdict.first_violation {
        None => Ok(()),
        Some(v) => Err(Error::InvalidSequence(format!("{v:?}"))),
    }
}

/// Replaces every chosen gadget-internal vertex by the tail of its gadget.
pub fn project_gadgets(r: &ReductionOutput, s: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for v in s {
        match r.owner(v) {
            Some(d) => out.insert(d.tail),
            None => out.insert(v),
        };
    }
    out
}

/// Replaces every `a_{v,j}` / `b_{v,j}` by `v`. Internals are kept as-is;
/// callers strip them first.
pub fn project_ab(r: &ReductionOutput, s: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for id in s {
        match r.roles[id as usize] {
            Role::A { v, .. } | Role::B { v, .. } => out.insert(v),
            _ => out.insert(id),
        };
    }
    out
}

/// Maps a valid sequence for `H` onto subsets of `V ⊎ X ⊎ Y ⊎ A ⊎ B` by
/// projecting internals to gadget tails, then merges repeated neighbors.
pub fn collapse_gadgets(r: &ReductionOutput, seq: &ReconfigSequence) -> Result<ReconfigSequence> {
    require_valid(r, seq)?;
    Ok(ReconfigSequence::new(seq.sets.iter().map(|s| project_gadgets(r, s)).collect()).dedup())
}

/// Maps a valid internal-free sequence onto subsets of `V ⊎ X ⊎ Y` by
/// sending each `A`/`B` vertex to its original vertex.
pub fn collapse_ab(r: &ReductionOutput, seq: &ReconfigSequence) -> Result<ReconfigSequence> {
    if let Some(id) = seq
        .sets
        .iter()
        .flat_map(|s| s.iter())
        .find(|&id| r.is_internal(id))
    {
        return Err(Error::InvalidSequence(format!(
            "gadget-internal vertex {} present; collapse gadgets first",
            id + 1
        )));
    }
    require_valid(r, seq)?;
    Ok(ReconfigSequence::new(seq.sets.iter().map(|s| project_ab(r, s)).collect()).dedup())
}

/// The largest set projecting onto `s`: `s` plus every `a_{v,j}` and
/// `b_{v,j}` with `v ∈ s`.
pub fn expand_ab(r: &ReductionOutput, s: &VertexSet) -> Result<VertexSet> {
    if let Some(m) = s.max_vertex() {
        if m as usize >= r.restricted_count() {
            return Err(Error::Parameter(format!(
                "vertex {} lies outside V ⊎ X ⊎ Y",
                m + 1
            )));
        }
    }
    let mut out = s.clone();
    for v in s.iter().filter(|&v| (v as usize) < r.n()) {
        out.extend(r.a_of(v).iter().copied());
        out.extend(r.b_of(v).iter().copied());
    }
    Ok(out)
}
