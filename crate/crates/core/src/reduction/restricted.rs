//! Exact reasoning inside the restricted universe `V ⊎ X ⊎ Y`.
//!
//! For `S ⊆ V ⊎ X ⊎ Y`, `S` is a target set of `H` iff `X ⊆ S`, `Y ⊆ S`,
//! or `S ∩ V` is a target set of `G`. That turns a cascade on `H` into a
//! cascade on `G`, and optimal sequences can be assumed to live in this
//! universe, so the cap search below computes `opt_H(X <-> Y)` exactly.

use serde::Serialize;

use super::build::ReductionOutput;
use crate::activation::Propagator;
use crate::error::{Error, Result};
use crate::reconfig::{minmax_search, validate_with, Memo, MinmaxResult, ReconfigSequence, SequenceVerdict};
use crate::vertex_set::VertexSet;
use crate::SearchLimits;

/// Position of a restricted set relative to the groups `X` and `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    /// Contains `X` but not `Y`.
    C1,
    /// Contains `Y` but not `X`.
    C2,
    /// Contains neither.
    C3,
    /// Contains both.
    XY,
}

fn check_restricted(r: &ReductionOutput, s: &VertexSet) -> Result<()> {
    match s.max_vertex() {
        Some(m) if m as usize >= r.restricted_count() => Err(Error::Parameter(format!(
            "vertex {} lies outside V ⊎ X ⊎ Y",
            m + 1
        ))),
        _ => Ok(()),
    }
}

/// Restricted membership test with a caller-held propagator on `G`.
pub(crate) fn restricted_member(r: &ReductionOutput, prop: &mut Propagator<'_>, s: &VertexSet) -> bool {
    r.x.is_subset(s) || r.y.is_subset(s) || prop.is_target_set(&s.intersection(&r.originals()))
}

pub fn is_target_restricted(r: &ReductionOutput, s: &VertexSet) -> Result<bool> {
    check_restricted(r, s)?;
    Ok(restricted_member(r, &mut Propagator::new(&r.g), s))
}

pub fn classify(r: &ReductionOutput, s: &VertexSet) -> Result<Class> {
    check_restricted(r, s)?;
    Ok(match (r.x.is_subset(s), r.y.is_subset(s)) {
        (true, false) => Class::C1,
        (false, true) => Class::C2,
        (false, false) => Class::C3,
        (true, true) => Class::XY,
    })
}

/// Validates a sequence over `V ⊎ X ⊎ Y` with the restricted oracle.
pub fn validate_restricted(r: &ReductionOutput, seq: &ReconfigSequence) -> SequenceVerdict {
    let mut prop = Propagator::new(&r.g);
    let bound = r.restricted_count();
    validate_with(
        seq,
        &r.x,
        &r.y,
        |s| s.max_vertex().is_none_or(|m| (m as usize) < bound),
        |s| restricted_member(r, &mut prop, s),
    )
}

/// `opt_H(X <-> Y)` by cap search over subsets of `V ⊎ X ⊎ Y`.
pub fn restricted_minmax(r: &ReductionOutput, limits: &SearchLimits) -> Result<MinmaxResult> {
    if r.restricted_count() > limits.max_n {
        return Err(Error::TooLarge {
            size: r.restricted_count(),
            limit: limits.max_n,
        });
    }
    let universe: Vec<u32> = (0..r.restricted_count() as u32).collect();
    let mut prop = Propagator::new(&r.g);
    let mut memo = Memo::new(|s: &VertexSet| restricted_member(r, &mut prop, s));
    let result = minmax_search(&universe, &mut memo, &r.x, &r.y, 2 * r.ell);
    Ok(result.expect("X -> X ⊎ Y -> Y exists under cap 2·ell"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activation::is_target_set;
    use crate::graph::ThresholdGraph;
    use crate::reduction::build_h;

    fn set(v: &[u32]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn x_is_target_and_c1() {
        let r = build_h(&ThresholdGraph::uniform(2, &[(0, 1)], 1).unwrap(), 2).unwrap();
        assert!(is_target_restricted(&r, &r.x).unwrap());
        assert_eq!(classify(&r, &r.x).unwrap(), Class::C1);
        assert_eq!(classify(&r, &r.y).unwrap(), Class::C2);
        assert_eq!(classify(&r, &r.x.union(&r.y)).unwrap(), Class::XY);
        assert_eq!(classify(&r, &set(&[0])).unwrap(), Class::C3);
    }

    #[test]
    fn partial_groups_are_not_targets() {
        let r = build_h(&ThresholdGraph::uniform(2, &[(0, 1)], 1).unwrap(), 2).unwrap();
        let s = set(&[2, 4]); // x1, y1
        assert!(!is_target_restricted(&r, &s).unwrap());
        assert!(!is_target_set(&r.h, &s).unwrap());
    }

    #[test]
    fn rejects_outside_universe() {
        let r = build_h(&ThresholdGraph::uniform(2, &[(0, 1)], 1).unwrap(), 2).unwrap();
        assert!(is_target_restricted(&r, &set(&[6])).is_err());
        assert!(classify(&r, &set(&[80])).is_err());
    }

    #[test]
    fn p2_value() {
        let r = build_h(&ThresholdGraph::uniform(2, &[(0, 1)], 1).unwrap(), 2).unwrap();
        let res = restricted_minmax(&r, &SearchLimits::default()).unwrap();
        assert_eq!(res.value, 3);
        assert!(validate_restricted(&r, &res.witness).valid);
    }

    #[test]
    fn two_k2_soundness_gap() {
        let g = ThresholdGraph::uniform(4, &[(0, 1), (2, 3)], 1).unwrap();
        let r = build_h(&g, 2).unwrap();
        let res = restricted_minmax(&r, &SearchLimits::default()).unwrap();
        assert!(res.value >= 4);
        assert_eq!(res.value, 4);
    }

    #[test]
    fn limit_applies_to_restricted_universe() {
        let r = build_h(&ThresholdGraph::uniform(2, &[(0, 1)], 1).unwrap(), 2).unwrap();
        assert!(matches!(
            restricted_minmax(&r, &SearchLimits { max_n: 5 }),
            Err(Error::TooLarge { size: 6, limit: 5 })
        ));
    }
}
