//! Threshold activation, Target Set Selection and Minmax Target Set
//! Reconfiguration on small graphs, together with the gadget reduction that
//! transfers hardness from the former to the latter.
//!
//! Vertex ids are 0-based in memory and 1-based in every file and report.

pub mod activation;
pub mod bench;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod reconfig;
pub mod reduction;
pub mod selftest;
pub mod tss;
pub mod vertex_set;

pub use activation::{closure, is_target_set, step, ActivationTrace};
pub use error::{Error, Result};
pub use graph::{set_cover_thresholds, CoverMode, ThresholdGraph};
pub use reconfig::{minmax_exact, reachable_under_cap, two_approx, validate_sequence, ReconfigSequence};
pub use tss::{min_target_set_exact, min_target_set_greedy};
pub use vertex_set::VertexSet;

/// Version stamped into every JSON report and CSV file.
pub const SCHEMA_VERSION: u32 = 1;

/// Default cap on the universe size of exhaustive searches.
pub const DEFAULT_MAX_N: usize = 24;

/// Size limits for the exhaustive solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest vertex count (or restricted universe) searched exhaustively.
    pub max_n: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_n: DEFAULT_MAX_N }
    }
}
