//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::ThresholdGraph;

/// Threshold assignment for generated graphs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum TauRule {
    /// Every vertex gets `c`.
    Constant { c: u32 },
    /// Uniform in `1..=deg(v)` (`1` for isolated vertices).
    Uniform,
    /// `ceil(rho * deg(v))`.
    Proportional { rho: f64 },
}

impl TauRule {
    pub fn label(&self) -> String {
        match self {
            TauRule::Constant { c } => format!("const:{c}"),
            TauRule::Uniform => "uniform".to_string(),
            TauRule::Proportional { rho } => format!("prop:{rho}"),
        }
    }
}

impl std::str::FromStr for TauRule {
    type Err = Error;

    /// Accepts `const:<c>`, `uniform`, `prop:<rho>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("unknown tau rule {s:?}"));
        match s.split_once(':') {
            None if s == "uniform" => Ok(TauRule::Uniform),
            Some(("const", c)) => Ok(TauRule::Constant {
                c: c.parse().map_err(|_| bad())?,
            }),
            Some(("prop", r)) => Ok(TauRule::Proportional {
                rho: r.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

fn check_params(n: usize, p: f64, rule: &TauRule) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("edge probability {p} outside [0,1]")));
    }
    if let TauRule::Proportional { rho } = rule {
        if !(0.0..=1.0).contains(rho) {
            return Err(Error::Parameter(format!("rho {rho} outside [0,1]")));
        }
    }
    Ok(())
}

fn assign_tau(adj_deg: &[usize], rule: &TauRule, rng: &mut ChaCha8Rng) -> Vec<u32> {
    adj_deg
        .iter()
        .map(|&d| match *rule {
            TauRule::Constant { c } => c,
            TauRule::Uniform => rng.gen_range(1..=d.max(1)) as u32,
            TauRule::Proportional { rho } => (rho * d as f64).ceil() as u32,
        })
        .collect()
}

fn sample_edges(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn finish(n: usize, edges: Vec<(u32, u32)>, rule: &TauRule, rng: &mut ChaCha8Rng) -> Result<ThresholdGraph> {
    let mut deg = vec![0usize; n];
    for &(u, v) in &edges {
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    let tau = assign_tau(&deg, rule, rng);
    ThresholdGraph::from_edges(n, &edges, tau)
}

/// Erdős–Rényi `G(n, p)` with thresholds from `rule`. Deterministic in `seed`.
pub fn random_graph(n: usize, p: f64, rule: TauRule, seed: u64) -> Result<ThresholdGraph> {
    check_params(n, p, &rule)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = sample_edges(n, p, &mut rng);
    finish(n, edges, &rule, &mut rng)
}

/// Like [`random_graph`], but every vertex left isolated is joined to a
/// uniformly random other vertex before thresholds are drawn. Needs `n >= 2`.
pub fn random_graph_without_isolated(n: usize, p: f64, rule: TauRule, seed: u64) -> Result<ThresholdGraph> {
    check_params(n, p, &rule)?;
    if n < 2 {
        return Err(Error::Parameter("need at least 2 vertices to avoid isolated ones".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = sample_edges(n, p, &mut rng);
    let mut touched = vec![false; n];
    for &(u, v) in &edges {
        touched[u as usize] = true;
        touched[v as usize] = true;
    }
    for v in 0..n {
        if !touched[v] {
            let mut w = rng.gen_range(0..n - 1);
            if w >= v {
                w += 1;
            }
            let e = (v.min(w) as u32, v.max(w) as u32);
            edges.push(e);
            touched[w] = true;
            touched[v] = true;
        }
    }
    finish(n, edges, &rule, &mut rng)
}
