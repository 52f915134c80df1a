//! Random valid sequences over `H`, for exercising the projections.

use rand::seq::SliceRandom;
use rand::Rng;

use super::build::ReductionOutput;
use super::restricted::restricted_member;
use super::sequence::expand_ab;
use crate::activation::Propagator;
use crate::reconfig::{union_path, ReconfigSequence};

/// Random walk from `X` through restricted target sets (`steps` proposed
/// toggles, invalid ones skipped), then closed off to `Y` by adding `Y` and
/// removing everything else.
pub fn random_restricted_sequence<R: Rng>(r: &ReductionOutput, rng: &mut R, steps: usize) -> ReconfigSequence {
    let mut prop = Propagator::new(&r.g);
    let bound = r.restricted_count() as u32;
    let mut seq = ReconfigSequence::single(r.x.clone());
    for _ in 0..steps {
        let u = rng.gen_range(0..bound);
        let next = seq.last().unwrap().toggled(u);
        if restricted_member(r, &mut prop, &next) {
            seq.sets.push(next);
        }
    }
    let tail = union_path(seq.last().unwrap(), &r.y);
    seq.sets.extend(tail.sets.into_iter().skip(1));
    seq
}

/// Lifts a restricted sequence to `H`: every original vertex travels with
/// all of its `A`/`B` copies (added after it, removed before it), and with
/// probability `pad` a set is followed by a detour through one or two extra
/// `A`, `B` or gadget-internal vertices. Every set produced contains a set
/// of the input, so validity carries over.
pub fn lift_to_h<R: Rng>(r: &ReductionOutput, seq: &ReconfigSequence, rng: &mut R, pad: f64) -> ReconfigSequence {
    let extra_pool: Vec<u32> = (r.restricted_count() as u32..r.h.n() as u32).collect();
    let mut out = ReconfigSequence::single(expand_ab(r, seq.first().unwrap()).expect("restricted input"));
    let maybe_pad = |out: &mut ReconfigSequence, rng: &mut R| {
        if extra_pool.is_empty() || !rng.gen_bool(pad) {
            return;
        }
        let base = out.last().unwrap().clone();
        let k = rng.gen_range(1..=2);
        let picks: Vec<u32> = extra_pool
            .choose_multiple(rng, k)
            .copied()
            .filter(|&v| !base.contains(v))
            .collect();
        for &v in &picks {
            out.push_toggle(v);
        }
        for &v in picks.iter().rev() {
            out.push_toggle(v);
        }
    };
    maybe_pad(&mut out, rng);
    for w in seq.sets.windows(2) {
        let diff = w[0].symmetric_difference(&w[1]);
        let u = diff.iter().next().expect("single-vertex step");
        let copies: Vec<u32> = if (u as usize) < r.n() {
            r.a_of(u).iter().chain(r.b_of(u)).copied().collect()
        } else {
            Vec::new()
        };
        if w[1].contains(u) {
            out.push_toggle(u);
            for &c in &copies {
                out.push_toggle(c);
            }
        } else {
            for &c in &copies {
                out.push_toggle(c);
            }
            out.push_toggle(u);
        }
        maybe_pad(&mut out, rng);
    }
    out
}
