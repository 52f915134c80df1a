//! Parameter sweeps over random instances.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::generate::{random_graph_without_isolated, TauRule};
use crate::reconfig::minmax_exact;
use crate::reduction::{build_h, restricted_minmax};
use crate::tss::all_min_target_sets;
use crate::{SearchLimits, SCHEMA_VERSION};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub ns: Vec<usize>,
    pub ps: Vec<f64>,
    pub rules: Vec<TauRule>,
    pub ells: Vec<usize>,
    /// Instances per grid cell.
    pub reps: usize,
    pub seed: u64,
    pub limits: SearchLimits,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            ns: vec![4, 6],
            ps: vec![0.3, 0.6],
            rules: vec![TauRule::Constant { c: 1 }, TauRule::Uniform],
            ells: vec![1, 2, 3],
            reps: 2,
            seed: 0,
            limits: SearchLimits::default(),
        }
    }
}

/// One CSV line. `*_h` columns refer to `(H; X, Y)`; `*_g` columns to a
/// reconfiguration on `G` itself between its lexicographically first and
/// last minimum target sets. Empty cells mean the instance exceeded the
/// search limit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub schema_version: u32,
    pub index: usize,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub tau_rule: String,
    pub ell: usize,
    pub m: usize,
    pub h_vertices: usize,
    pub opt_g: usize,
    pub opt_h: Option<usize>,
    pub two_approx_h: usize,
    pub ratio_h: Option<f64>,
    pub two_approx_g: usize,
    pub minmax_exact_g: usize,
    pub ratio_g: f64,
}

/// Per-instance seed: splitmix-style offset of the base seed.
pub fn instance_seed(base: u64, index: usize) -> u64 {
    base.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

struct Cell {
    index: usize,
    n: usize,
    p: f64,
    rule: TauRule,
    ell: usize,
}

fn run_one(cell: &Cell, cfg: &BenchConfig) -> Result<BenchRow> {
    let seed = instance_seed(cfg.seed, cell.index);
    let g = random_graph_without_isolated(cell.n, cell.p, cell.rule, seed)?;
    let mins = all_min_target_sets(&g, &cfg.limits)?;
    let (xg, yg) = (&mins[0], mins.last().unwrap());
    let exact_g = minmax_exact(&g, xg, yg, &cfg.limits)?;
    let two_g = xg.union(yg).len();

    let r = build_h(&g, cell.ell)?;
    let opt_h = match restricted_minmax(&r, &cfg.limits) {
        Ok(res) => Some(res.value),
        Err(crate::Error::TooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    let two_h = r.x.union(&r.y).len();
    Ok(BenchRow {
        schema_version: SCHEMA_VERSION,
        index: cell.index,
        seed,
        n: cell.n,
        p: cell.p,
        tau_rule: cell.rule.label(),
        ell: cell.ell,
        m: g.edge_count(),
        h_vertices: r.h.n(),
        opt_g: mins[0].len(),
        opt_h,
        two_approx_h: two_h,
        ratio_h: opt_h.map(|o| two_h as f64 / o as f64),
        two_approx_g: two_g,
        minmax_exact_g: exact_g.value,
        ratio_g: two_g as f64 / exact_g.value.max(1) as f64,
    })
}

/// Runs the grid on a worker pool; rows come back in grid order.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut cells = Vec::new();
    for &n in &cfg.ns {
        for &p in &cfg.ps {
            for &rule in &cfg.rules {
                for &ell in &cfg.ells {
                    for _ in 0..cfg.reps {
                        cells.push(Cell {
                            index: cells.len(),
                            n,
                            p,
                            rule,
                            ell,
                        });
                    }
                }
            }
        }
    }
    cells.par_iter().map(|c| run_one(c, cfg)).collect()
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}
