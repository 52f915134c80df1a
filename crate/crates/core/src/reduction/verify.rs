use serde::Serialize;

use super::build::build_h;
use super::restricted::{classify, restricted_minmax, Class};
use super::sequence::canonical_sequence;
use crate::error::{Error, Result};
use crate::graph::ThresholdGraph;
use crate::reconfig::validate_sequence;
use crate::tss::min_target_set_exact;
use crate::{SearchLimits, SCHEMA_VERSION};

/// Outcome of one implication `antecedent => consequent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub triggered: bool,
    /// `None` when not triggered.
    pub holds: Option<bool>,
}

impl Implication {
    fn eval(antecedent: bool, consequent: bool) -> Self {
        Implication {
            triggered: antecedent,
            holds: antecedent.then_some(consequent),
        }
    }

    pub fn ok(&self) -> bool {
        self.holds != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub n: usize,
    pub m: usize,
    pub ell: usize,
    pub k_c: usize,
    pub k_s: usize,
    pub opt_g: usize,
    pub opt_h: usize,
    pub h_vertices: usize,
    pub h_edges: usize,
    /// `|V| + |X| + |Y| + |A| + |B|`, the count without gadget internals.
    pub h_named_vertices: usize,
    pub gadgets: usize,
    /// `n^2 + ell`, the shape of the advertised size bound.
    pub quadratic_bound_term: usize,
    pub completeness: Implication,
    pub soundness: Implication,
    /// `ell >= k_s + 1`, the standing hypothesis of the soundness argument.
    pub soundness_hypothesis: bool,
    pub canonical_size: usize,
    pub canonical_valid: bool,
    /// When `opt_h < 2·ell`: the witness avoids `X ⊎ Y` and passes through a C3 set.
    pub witness_structure: Option<bool>,
}

impl VerifyReport {
    pub fn all_hold(&self) -> bool {
        self.completeness.ok()
            && self.soundness.ok()
            && self.canonical_valid
            && self.witness_structure != Some(false)
    }
}

/// Runs both directions of the gap on a concrete `G`.
///
/// Requires `ell > k_s >= k_c`.
pub fn verify_reduction(
    g: &ThresholdGraph,
    ell: usize,
    k_c: usize,
    k_s: usize,
    limits: &SearchLimits,
) -> Result<VerifyReport> {
    if !(ell > k_s && k_s >= k_c) {
        return Err(Error::Parameter(format!(
            "need ell > k_s >= k_c, got ell={ell}, k_s={k_s}, k_c={k_c}"
        )));
    }
    let opt = min_target_set_exact(g, limits)?;
    let r = build_h(g, ell)?;
    let res = restricted_minmax(&r, limits)?;
    let canonical = canonical_sequence(&r, &opt.witness)?;
    let canonical_valid = validate_sequence(&r.h, &canonical, &r.x, &r.y).valid;

    let witness_structure = (res.value < 2 * ell).then(|| {
        let classes: Vec<Class> = res
            .witness
            .sets
            .iter()
            .map(|s| classify(&r, s).expect("witness stays in V ⊎ X ⊎ Y"))
            .collect();
        !classes.contains(&Class::XY) && classes.contains(&Class::C3)
    });

    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        n: g.n(),
        m: g.edge_count(),
        ell,
        k_c,
        k_s,
        opt_g: opt.size,
        opt_h: res.value,
        h_vertices: r.h.n(),
        h_edges: r.h.edge_count(),
        h_named_vertices: r.named_count(),
        gadgets: r.gadgets.len(),
        quadratic_bound_term: g.n() * g.n() + ell,
        completeness: Implication::eval(opt.size <= k_c, res.value <= k_c + ell),
        soundness: Implication::eval(opt.size > k_s, res.value > k_s + ell),
        soundness_hypothesis: ell > k_s,
        canonical_size: canonical.size(),
        canonical_valid,
        witness_structure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completeness_triggered_on_p2() {
        let g = ThresholdGraph::uniform(2, &[(0, 1)], 1).unwrap();
        let rep = verify_reduction(&g, 2, 1, 1, &SearchLimits::default()).unwrap();
        assert_eq!(rep.opt_g, 1);
        assert_eq!(rep.opt_h, 3);
        assert_eq!(rep.completeness, Implication { triggered: true, holds: Some(true) });
        assert!(!rep.soundness.triggered);
        assert_eq!(rep.h_vertices, 90);
        assert_eq!(rep.h_named_vertices, 10);
        assert!(rep.all_hold());
        assert_eq!(rep.witness_structure, Some(true));
    }

    #[test]
    fn soundness_triggered_on_2k2() {
        let g = ThresholdGraph::uniform(4, &[(0, 1), (2, 3)], 1).unwrap();
        let rep = verify_reduction(&g, 2, 1, 1, &SearchLimits::default()).unwrap();
        assert_eq!(rep.opt_g, 2);
        assert_eq!(rep.soundness, Implication { triggered: true, holds: Some(true) });
        assert!(!rep.completeness.triggered);
    }

    #[test]
    fn vacuous_when_between_thresholds() {
        let g = ThresholdGraph::uniform(4, &[(0, 1), (2, 3)], 1).unwrap();
        let rep = verify_reduction(&g, 3, 1, 2, &SearchLimits::default()).unwrap();
        assert!(!rep.completeness.triggered && rep.completeness.holds.is_none());
        assert!(!rep.soundness.triggered && rep.soundness.holds.is_none());
    }

    #[test]
    fn parameter_order_enforced() {
        let g = ThresholdGraph::uniform(2, &[(0, 1)], 1).unwrap();
        assert!(verify_reduction(&g, 2, 2, 1, &SearchLimits::default()).is_err());
        assert!(verify_reduction(&g, 2, 1, 2, &SearchLimits::default()).is_err());
    }
}
