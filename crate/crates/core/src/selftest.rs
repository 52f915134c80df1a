//! Invariant sweep behind the `selftest` command.
//!
//! Each check recomputes a property through a second, independent route
//! (naive round-by-round cascade, edge/cycle predicates, full cascades on
//! `H`) and records any disagreement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::activation::{closure, Propagator};
use crate::generate::{random_graph, random_graph_without_isolated, TauRule};
use crate::graph::{set_cover_thresholds, CoverMode, ThresholdGraph};
use crate::reconfig::{minmax_exact, two_approx, validate_sequence};
use crate::reduction::{
    build_h, canonical_sequence, classify, collapse_ab, collapse_gadgets, gap_ratio, is_target_restricted,
    lift_to_h, random_restricted_sequence, restricted_minmax, Class,
};
use crate::tss::{all_min_target_sets, min_target_set_exact, min_target_set_greedy};
use crate::vertex_set::VertexSet;
use crate::{SearchLimits, SCHEMA_VERSION};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub schema_version: u32,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

struct Check {
    res: CheckResult,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            res: CheckResult {
                name: name.to_string(),
                cases: 0,
                failures: Vec::new(),
            },
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.res.cases += 1;
        // keep reports short
        if !ok && self.res.failures.len() < 20 {
            self.res.failures.push(what());
        }
    }
}

/// Round-by-round cascade recomputed from scratch, no shared code with
/// [`crate::activation`].
fn naive_active(g: &ThresholdGraph, seed: &[bool]) -> Vec<bool> {
    let mut cur = seed.to_vec();
    loop {
        let next: Vec<bool> = (0..g.n())
            .map(|v| {
                cur[v] || {
                    let k = g.neighbors(v as u32).iter().filter(|&&w| cur[w as usize]).count();
                    k >= g.tau(v as u32) as usize
                }
            })
            .collect();
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn mask_bools(n: usize, mask: u64) -> Vec<bool> {
    (0..n).map(|v| mask >> v & 1 == 1).collect()
}

fn is_acyclic_without(g: &ThresholdGraph, removed: &[bool]) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in g.edges() {
        if removed[u as usize] || removed[v as usize] {
            continue;
        }
        let (a, b) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

fn activation_checks(graphs: &[(String, ThresholdGraph)], out: &mut Vec<CheckResult>) {
    let mut eq = Check::new("activation/naive-equivalence");
    let mut conv = Check::new("activation/convergence-bound");
    let mut mono = Check::new("activation/monotone-extensive-idempotent");
    for (name, g) in graphs.iter().filter(|(_, g)| g.n() <= 10) {
        let n = g.n();
        let mut prop = Propagator::new(g);
        let actives: Vec<VertexSet> = (0..1u64 << n)
            .map(|mask| {
                let s = VertexSet::from_mask(mask);
                let t = closure(g, &s).expect("in range");
                let naive: VertexSet = naive_active(g, &mask_bools(n, mask))
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(v, _)| v as u32)
                    .collect();
                eq.expect(t.final_set() == &naive, || format!("{name}: seed mask {mask:#x}"));
                conv.expect(t.converged_at <= n, || format!("{name}: mask {mask:#x} took {}", t.converged_at));
                let fast = prop.active_set(&s);
                eq.expect(fast == naive, || format!("{name}: queue cascade, mask {mask:#x}"));
                naive
            })
            .collect();
        for mask in 0..1u64 << n {
            let a = &actives[mask as usize];
            let s = VertexSet::from_mask(mask);
            mono.expect(s.is_subset(a), || format!("{name}: not extensive at {mask:#x}"));
            let am = a.to_mask().unwrap();
            mono.expect(&actives[am as usize] == a, || format!("{name}: not idempotent at {mask:#x}"));
            for v in 0..n {
                let sup = mask | 1 << v;
                mono.expect(a.is_subset(&actives[sup as usize]), || {
                    format!("{name}: not monotone {mask:#x} -> {sup:#x}")
                });
            }
        }
    }
    out.extend([eq.res, conv.res, mono.res]);
}

fn cover_checks(graphs: &[(String, ThresholdGraph)], out: &mut Vec<CheckResult>) {
    let mut vc = Check::new("activation/vertex-cover-equivalence");
    let mut fvs = Check::new("activation/feedback-vertex-set-equivalence");
    for (name, g) in graphs.iter().filter(|(_, g)| g.n() <= 10) {
        let gv = set_cover_thresholds(g, CoverMode::VertexCover);
        let gf = set_cover_thresholds(g, CoverMode::FeedbackVertexSet);
        let mut pv = Propagator::new(&gv);
        let mut pf = Propagator::new(&gf);
        for mask in 0..1u64 << g.n() {
            let s = VertexSet::from_mask(mask);
            let covers = g.edges().all(|(u, v)| s.contains(u) || s.contains(v));
            vc.expect(pv.is_target_set(&s) == covers, || format!("{name}: mask {mask:#x}"));
            let acyclic = is_acyclic_without(g, &mask_bools(g.n(), mask));
            fvs.expect(pf.is_target_set(&s) == acyclic, || format!("{name}: mask {mask:#x}"));
        }
    }
    out.extend([vc.res, fvs.res]);
}

fn tss_checks(graphs: &[(String, ThresholdGraph)], limits: &SearchLimits, out: &mut Vec<CheckResult>) {
    let mut c = Check::new("tss/exact-vs-greedy-and-minimality");
    for (name, g) in graphs.iter().filter(|(_, g)| g.n() <= 12) {
        let exact = min_target_set_exact(g, limits).expect("within limit");
        let greedy = min_target_set_greedy(g);
        let mut prop = Propagator::new(g);
        c.expect(prop.is_target_set(&exact.witness), || format!("{name}: witness not a target set"));
        c.expect(prop.is_target_set(&greedy), || format!("{name}: greedy not a target set"));
        c.expect(exact.size <= greedy.len(), || format!("{name}: exact > greedy"));
        c.expect(g.forced_vertices().is_subset(&exact.witness), || format!("{name}: forced vertex missing"));
        for v in &exact.witness {
            let smaller = exact.witness.toggled(v);
            c.expect(!prop.is_target_set(&smaller), || format!("{name}: witness minus {} still target", v + 1));
        }
        // brute-force cross-check of the optimum
        if g.n() <= 10 {
            let best = (0..1u64 << g.n())
                .filter(|&m| prop.is_target_set(&VertexSet::from_mask(m)))
                .map(|m| m.count_ones() as usize)
                .min()
                .unwrap();
            c.expect(best == exact.size, || format!("{name}: brute force {best} vs {}", exact.size));
        }
    }
    out.push(c.res);
}

fn reconfig_checks(graphs: &[(String, ThresholdGraph)], limits: &SearchLimits, out: &mut Vec<CheckResult>) {
    let mut c = Check::new("reconfig/sandwich-symmetry-approximation");
    for (name, g) in graphs.iter().filter(|(_, g)| g.n() <= 12) {
        let mins = all_min_target_sets(g, limits).expect("within limit");
        let (x, y) = (&mins[0], mins.last().unwrap());
        let fwd = minmax_exact(g, x, y, limits).expect("targets");
        let back = minmax_exact(g, y, x, limits).expect("targets");
        let approx = two_approx(g, x, y).expect("targets");
        c.expect(fwd.value == back.value, || format!("{name}: asymmetric"));
        c.expect(fwd.value >= x.len().max(y.len()), || format!("{name}: below lower bound"));
        c.expect(fwd.value <= approx.size(), || format!("{name}: exact above two_approx"));
        c.expect(approx.size() == x.union(y).len(), || format!("{name}: two_approx size"));
        c.expect(approx.size() <= 2 * fwd.value, || format!("{name}: ratio above 2"));
        c.expect(validate_sequence(g, &fwd.witness, x, y).valid, || format!("{name}: witness invalid"));
        c.expect(validate_sequence(g, &approx, x, y).valid, || format!("{name}: two_approx invalid"));
    }
    out.push(c.res);
}

fn reduction_checks(graphs: &[(String, ThresholdGraph)], limits: &SearchLimits, rng: &mut ChaCha8Rng, out: &mut Vec<CheckResult>) {
    let mut ends = Check::new("reduction/endpoints-are-target-sets");
    let mut restricted = Check::new("reduction/restricted-characterization");
    let mut comp = Check::new("reduction/completeness");
    let mut sound = Check::new("reduction/soundness");
    let mut proj = Check::new("reduction/projections");
    let mut shape = Check::new("reduction/witness-structure");
    for (name, g) in graphs.iter().filter(|(_, g)| g.n() <= 6 && g.isolated_vertices().is_empty()) {
        let mins = all_min_target_sets(g, limits).expect("within limit");
        let opt = mins[0].len();
        for ell in 1..=3usize {
            let r = build_h(g, ell).expect("no isolated vertices");
            let tag = format!("{name}, ell={ell}");
            let mut ph = Propagator::new(&r.h);
            ends.expect(ph.is_target_set(&r.x), || format!("{tag}: X"));
            ends.expect(ph.is_target_set(&r.y), || format!("{tag}: Y"));
            for s in &mins {
                ends.expect(ph.is_target_set(s), || format!("{tag}: min set {:?}", s.to_one_based()));
            }
            if r.restricted_count() <= 12 {
                for mask in 0..1u64 << r.restricted_count() {
                    let s = VertexSet::from_mask(mask);
                    let fast = is_target_restricted(&r, &s).expect("restricted");
                    restricted.expect(fast == ph.is_target_set(&s), || format!("{tag}: mask {mask:#x}"));
                }
            }
            let Ok(res) = restricted_minmax(&r, limits) else { continue };
            let canon = canonical_sequence(&r, &mins[0]).expect("target set");
            comp.expect(validate_sequence(&r.h, &canon, &r.x, &r.y).valid, || format!("{tag}: canonical invalid"));
            comp.expect(canon.size() == opt + ell, || format!("{tag}: canonical size"));
            comp.expect(res.value <= opt + ell, || format!("{tag}: opt_H {} > {}", res.value, opt + ell));
            for k_s in 0..opt {
                if ell > k_s {
                    sound.expect(res.value > k_s + ell, || format!("{tag}: k_s={k_s}, opt_H={}", res.value));
                }
            }
            if res.value < 2 * ell {
                let classes: Vec<Class> = res.witness.sets.iter().map(|s| classify(&r, s).unwrap()).collect();
                shape.expect(!classes.contains(&Class::XY), || format!("{tag}: X ⊎ Y in witness"));
                shape.expect(classes.contains(&Class::C3), || format!("{tag}: no C3 set"));
            }
            let walk = random_restricted_sequence(&r, rng, 12);
            let lifted = lift_to_h(&r, &walk, rng, 0.4);
            let lifted_ok = validate_sequence(&r.h, &lifted, &r.x, &r.y).valid;
            proj.expect(lifted_ok, || format!("{tag}: lifted sequence invalid"));
            if lifted_ok {
                let a = collapse_gadgets(&r, &lifted).expect("valid input");
                let b = collapse_ab(&r, &a).expect("internal-free input");
                let v = validate_sequence(&r.h, &b, &r.x, &r.y);
                proj.expect(v.valid, || format!("{tag}: collapsed sequence invalid"));
                proj.expect(b.size() <= a.size() && a.size() <= lifted.size(), || format!("{tag}: size grew"));
                proj.expect(
                    b.sets.iter().all(|s| s.max_vertex().is_none_or(|m| (m as usize) < r.restricted_count())),
                    || format!("{tag}: left V ⊎ X ⊎ Y"),
                );
            }
        }
    }
    out.extend([ends.res, restricted.res, comp.res, sound.res, proj.res, shape.res]);
}

fn gap_checks(out: &mut Vec<CheckResult>) {
    let mut c = Check::new("gap/ratio-arithmetic");
    let mut prev = None;
    for k in 1..=20u32 {
        let r = gap_ratio(1u64 << k).expect("N >= 2");
        let one = num_rational::BigRational::from_integer(1.into());
        let two = num_rational::BigRational::from_integer(2.into());
        c.expect(r.bound_holds(), || format!("N=2^{k}: below lower bound"));
        c.expect(r.ratio < two, || format!("N=2^{k}: ratio not below 2"));
        // the factor exceeds 1 exactly when the soundness parameter exceeds N
        c.expect((r.ratio > one) == (r.g_exponent > 1), || format!("N=2^{k}: ratio vs g"));
        if let Some(p) = &prev {
            c.expect(&r.ratio >= p, || format!("N=2^{k}: not monotone"));
        }
        prev = Some(r.ratio);
    }
    out.push(c.res);
}

/// Runs every check over `corpus` plus a batch of seeded random graphs.
pub fn run_selftest(corpus: &[(String, ThresholdGraph)], seed: u64, limits: &SearchLimits) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graphs = corpus.to_vec();
    for i in 0..12 {
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(0.2..0.8);
        let s = rng.gen();
        let rule = if i % 2 == 0 { TauRule::Uniform } else { TauRule::Constant { c: 1 } };
        let g = if i % 3 == 0 {
            random_graph(n, p, rule, s)
        } else {
            random_graph_without_isolated(n, p, rule, s)
        };
        graphs.push((format!("random#{i}"), g.expect("valid parameters")));
    }
    let mut checks = Vec::new();
    activation_checks(&graphs, &mut checks);
    cover_checks(&graphs, &mut checks);
    tss_checks(&graphs, limits, &mut checks);
    reconfig_checks(&graphs, limits, &mut checks);
    reduction_checks(&graphs, limits, &mut rng, &mut checks);
    gap_checks(&mut checks);
    SelftestReport {
        schema_version: SCHEMA_VERSION,
        seed,
        checks,
    }
}
