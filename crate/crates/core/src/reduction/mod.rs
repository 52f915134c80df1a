//! The gap-preserving reduction from Target Set Selection on `G` to Minmax
//! Target Set Reconfiguration on `(H; X, Y)`.
//!
//! `H` is a copy of `G` plus four vertex groups: `X` and `Y` (`ell` vertices
//! each, threshold `n`) and `A`, `B` (one vertex per `(v, j)` with
//! `j <= deg(v)`, threshold `ell`). One-way gadgets run `V -> X -> A -> V`
//! and `V -> Y -> B -> V`. `X` and `Y` are target sets of `H`, and
//! `opt_H(X <-> Y)` tracks `opt(G) + ell`: at most that when `opt(G)` is
//! small, more than `k_s + ell` when `opt(G) > k_s` and `ell > k_s`.

mod build;
mod gap;
mod restricted;
mod sample;
mod sequence;
mod verify;

pub use build::{build_h, Gadget, GadgetFamily, GadgetPart, ReductionOutput, Role};
pub use gap::{exponent_fixed, gap_ratio, GapRatio};
pub use restricted::{classify, is_target_restricted, restricted_minmax, validate_restricted, Class};
pub use sample::{lift_to_h, random_restricted_sequence};
pub use sequence::{canonical_sequence, collapse_ab, collapse_gadgets, expand_ab, project_ab, project_gadgets};
pub use verify::{verify_reduction, Implication, VerifyReport};
