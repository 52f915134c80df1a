use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tsreconf::bench::{rows_to_csv, run_bench, BenchConfig};
use tsreconf::format::{parse_graph, parse_vertex_set, serialize_graph, serialize_vertex_set};
use tsreconf::generate::TauRule;
use tsreconf::reduction::{build_h, gap_ratio, verify_reduction};
use tsreconf::selftest::run_selftest;
use tsreconf::{
    closure, min_target_set_exact, min_target_set_greedy, minmax_exact, reachable_under_cap, two_approx,
    SearchLimits, ThresholdGraph, VertexSet, DEFAULT_MAX_N, SCHEMA_VERSION,
};

const CORPUS: &[(&str, &str)] = &[
    ("p2", include_str!("../../../corpus/p2.tss")),
    ("p3", include_str!("../../../corpus/p3.tss")),
    ("triangle", include_str!("../../../corpus/triangle.tss")),
    ("star", include_str!("../../../corpus/star.tss")),
    ("2k2", include_str!("../../../corpus/2k2.tss")),
    ("c4", include_str!("../../../corpus/c4.tss")),
    ("c5", include_str!("../../../corpus/c5.tss")),
    ("k4", include_str!("../../../corpus/k4.tss")),
    ("bull", include_str!("../../../corpus/bull.tss")),
    ("petersen", include_str!("../../../corpus/petersen.tss")),
];

/// Exit status for a failed invariant (selftest, verify-reduction).
const INVARIANT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "tsreconf", version, about = "Target set selection and target set reconfiguration")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest universe searched exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    limit_n: usize,
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory that relative output paths are resolved against.
    #[arg(long, global = true, env = "TSRECONF_OUT_DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Is SET a target set of GRAPH?
    CheckTarget { graph: PathBuf, set: PathBuf },
    /// Activation steps from SET as JSON.
    Trace { graph: PathBuf, set: PathBuf },
    /// Minimum target set.
    SolveTss {
        graph: PathBuf,
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        #[arg(long)]
        greedy: bool,
    },
    /// Reconfigure target set X into Y.
    Reconfig {
        graph: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[arg(long, conflicts_with_all = ["approx", "cap"])]
        exact: bool,
        #[arg(long, conflicts_with = "cap")]
        approx: bool,
        /// Only decide whether a sequence of size at most B exists.
        #[arg(long, value_name = "B")]
        cap: Option<usize>,
    },
    /// Build the reduction graph H.
    Reduce {
        graph: PathBuf,
        #[arg(long)]
        ell: usize,
        /// Role of every vertex of H as JSON.
        #[arg(long)]
        roles: Option<PathBuf>,
        /// Graphviz rendering of the named vertices.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check completeness and soundness on GRAPH.
    VerifyReduction {
        graph: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        kc: usize,
        #[arg(long)]
        ks: usize,
    },
    /// Exact gap ratio for Label Cover size N.
    GapRatio {
        #[arg(long)]
        n: u64,
    },
    /// Sweep random instances and emit CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![4usize, 6])]
        ns: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.3f64, 0.6])]
        ps: Vec<f64>,
        /// Threshold rules: const:<c>, uniform, prop:<rho>.
        #[arg(long, value_delimiter = ',', default_values_t = vec!["const:1".to_string(), "uniform".to_string()])]
        rules: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1usize, 2, 3])]
        ells: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        reps: usize,
    },
    /// Run the invariant suite on the bundled corpus.
    Selftest {
        /// Extra graph files to include.
        extra: Vec<PathBuf>,
    },
}

struct Ctx {
    global: Global,
    limits: SearchLimits,
}

impl Ctx {
    fn out_path(&self, p: &Path) -> PathBuf {
        match &self.global.out_dir {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p.to_path_buf(),
        }
    }

    fn write_file(&self, p: &Path, text: &str) -> Result<()> {
        let p = self.out_path(p);
        if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
        fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.global.out {
            Some(p) => self.write_file(p, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json(&self, v: &serde_json::Value) -> Result<()> {
        self.emit(&format!("{}\n", serde_json::to_string_pretty(v)?))
    }
}

fn read_graph(p: &Path) -> Result<ThresholdGraph> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", p.display()))
}

fn read_set(g: &ThresholdGraph, p: &Path) -> Result<VertexSet> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    let s = parse_vertex_set(&text).with_context(|| format!("parsing {}", p.display()))?;
    g.check_set(&s).with_context(|| format!("checking {}", p.display()))?;
    Ok(s)
}

fn ids(s: &VertexSet) -> String {
    serialize_vertex_set(s).trim_end().to_string()
}

fn run(cli: Cli) -> Result<u8> {
    let ctx = Ctx {
        limits: SearchLimits {
            max_n: cli.global.limit_n,
        },
        global: cli.global,
    };
    match cli.cmd {
        Command::CheckTarget { graph, set } => {
            let g = read_graph(&graph)?;
            let s = read_set(&g, &set)?;
            let t = closure(&g, &s)?;
            let target = t.final_set().len() == g.n();
            if ctx.global.json {
                ctx.emit_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "target": target,
                    "trace_length": t.converged_at,
                    "active": t.final_set().to_one_based(),
                }))?;
            } else {
                let verdict = if target { "TARGET" } else { "NOT-TARGET" };
                ctx.emit(&format!("{verdict}\ntrace length {}\n", t.converged_at))?;
            }
        }
        Command::Trace { graph, set } => {
            let g = read_graph(&graph)?;
            let s = read_set(&g, &set)?;
            ctx.emit_json(&closure(&g, &s)?.to_json())?;
        }
        Command::SolveTss { graph, greedy, .. } => {
            let g = read_graph(&graph)?;
            let (method, witness) = if greedy {
                ("greedy", min_target_set_greedy(&g))
            } else {
                ("exact", min_target_set_exact(&g, &ctx.limits)?.witness)
            };
            if ctx.global.json {
                ctx.emit_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "method": method,
                    "size": witness.len(),
                    "witness": witness.to_one_based(),
                }))?;
            } else {
                ctx.emit(&format!("size {}\nwitness {}\n", witness.len(), ids(&witness)))?;
            }
        }
        Command::Reconfig {
            graph,
            x,
            y,
            approx,
            cap,
            ..
        } => {
            let g = read_graph(&graph)?;
            let (x, y) = (read_set(&g, &x)?, read_set(&g, &y)?);
            if let Some(b) = cap {
                let ok = reachable_under_cap(&g, &x, &y, b, &ctx.limits)?;
                if ctx.global.json {
                    ctx.emit_json(&json!({"schema_version": SCHEMA_VERSION, "cap": b, "reachable": ok}))?;
                } else {
                    ctx.emit(&format!("{}\n", if ok { "REACHABLE" } else { "UNREACHABLE" }))?;
                }
                return Ok(0);
            }
            let (value, caps, explored, witness) = if approx {
                let seq = two_approx(&g, &x, &y)?;
                (seq.size(), Vec::new(), 0, seq)
            } else {
                let r = minmax_exact(&g, &x, &y, &ctx.limits)?;
                (r.value, r.caps_tried, r.states_explored, r.witness)
            };
            if ctx.global.json {
                ctx.emit_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "method": if approx { "approx" } else { "exact" },
                    "value": value,
                    "cap_tried": caps,
                    "states_explored": explored,
                    "witness": witness.to_json(),
                }))?;
            } else {
                let mut text = format!("size {value}\n");
                for s in &witness.sets {
                    text.push_str(&format!("  {{{}}}\n", ids(s).replace(' ', ",")));
                }
                ctx.emit(&text)?;
            }
        }
        Command::Reduce { graph, ell, roles, dot } => {
            let g = read_graph(&graph)?;
            let r = build_h(&g, ell)?;
            ctx.emit(&serialize_graph(&r.h))?;
            if let Some(p) = roles {
                ctx.write_file(&p, &format!("{}\n", serde_json::to_string_pretty(&r.roles_json())?))?;
            }
            if let Some(p) = dot {
                ctx.write_file(&p, &r.to_dot())?;
            }
            eprintln!(
                "H: {} vertices ({} named), {} edges, {} gadgets",
                r.h.n(),
                r.named_count(),
                r.h.edge_count(),
                r.gadgets.len()
            );
        }
        Command::VerifyReduction { graph, ell, kc, ks } => {
            let g = read_graph(&graph)?;
            let rep = verify_reduction(&g, ell, kc, ks, &ctx.limits)?;
            ctx.emit_json(&serde_json::to_value(&rep)?)?;
            if !rep.all_hold() {
                return Ok(INVARIANT_VIOLATION);
            }
        }
        Command::GapRatio { n } => {
            let r = gap_ratio(n)?;
            if ctx.global.json {
                let mut v = r.to_json();
                v.as_object_mut()
                    .unwrap()
                    .insert("schema_version".into(), SCHEMA_VERSION.into());
                ctx.emit_json(&v)?;
            } else {
                ctx.emit(&format!(
                    "g = 2^{}\nratio {} ~ {:.12}\nlower bound {}\nbound holds {}\n",
                    r.g_exponent,
                    r.ratio,
                    r.ratio_f64(),
                    r.lower_bound,
                    r.bound_holds()
                ))?;
            }
        }
        Command::Bench {
            ns,
            ps,
            rules,
            ells,
            reps,
        } => {
            let rules = rules
                .iter()
                .map(|s| s.parse::<TauRule>())
                .collect::<tsreconf::Result<Vec<_>>>()?;
            let cfg = BenchConfig {
                ns,
                ps,
                rules,
                ells,
                reps,
                seed: ctx.global.seed,
                limits: ctx.limits,
            };
            ctx.emit(&rows_to_csv(&run_bench(&cfg)?))?;
        }
        Command::Selftest { extra } => {
            let mut corpus = CORPUS
                .iter()
                .map(|(name, text)| Ok((name.to_string(), parse_graph(text)?)))
                .collect::<tsreconf::Result<Vec<_>>>()?;
            for p in &extra {
                corpus.push((p.display().to_string(), read_graph(p)?));
            }
            let rep = run_selftest(&corpus, ctx.global.seed, &ctx.limits);
            if ctx.global.json {
                ctx.emit_json(&serde_json::to_value(&rep)?)?;
            } else {
                let mut text = String::new();
                for c in &rep.checks {
                    let mark = if c.passed() { "ok  " } else { "FAIL" };
                    text.push_str(&format!("{mark} {} ({} cases)\n", c.name, c.cases));
                    for f in &c.failures {
                        text.push_str(&format!("     {f}\n"));
                    }
                }
                ctx.emit(&text)?;
            }
            if !rep.passed() {
                return Ok(INVARIANT_VIOLATION);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e
                .chain()
                .find_map(|c| c.downcast_ref::<tsreconf::Error>())
                .map_or(1, |e| e.exit_code());
            ExitCode::from(code as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_parses() {
        for (name, text) in CORPUS {
            assert!(parse_graph(text).is_ok(), "{name}");
        }
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn out_dir_only_applies_to_relative_paths() {
        let ctx = Ctx {
            global: Global {
                seed: 0,
                limit_n: 1,
                json: false,
                out: None,
                out_dir: Some(PathBuf::from("/tmp/o")),
            },
            limits: SearchLimits::default(),
        };
        assert_eq!(ctx.out_path(Path::new("h.tss")), PathBuf::from("/tmp/o/h.tss"));
        assert_eq!(ctx.out_path(Path::new("/abs/h.tss")), PathBuf::from("/abs/h.tss"));
    }

    #[test]
    fn graph_dot_mentions_every_vertex() {
        let g = parse_graph(CORPUS[0].1).unwrap();
        let dot = tsreconf::format::graph_to_dot(&g);
        assert!(dot.contains("1 -- 2"));
    }
}
