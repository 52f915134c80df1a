//! Line-oriented text formats.
//!
//! Graph files:
//!
//! ```text
//! c comment
//! p tss <n> <m>
//! t <v> <tau>      one per vertex, 1-based
//! e <u> <v>        m lines, u < v, 1-based
//! ```
//!
//! Vertex-set files hold one line of whitespace-separated 1-based ids.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::ThresholdGraph;
use crate::vertex_set::VertexSet;

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        msg: msg.into(),
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("cannot parse {what} from {tok:?}")))
}

pub fn parse_graph(text: &str) -> Result<ThresholdGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut tau: Vec<Option<u32>> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind == "c" {
            continue;
        }
        if kind != "p" && header.is_none() {
            return Err(syntax(line, "expected `p tss <n> <m>` header first"));
        }
        match kind {
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "duplicate header"));
                }
                if toks.next() != Some("tss") {
                    return Err(syntax(line, "header must read `p tss <n> <m>`"));
                }
                let n: usize = field(toks.next(), line, "vertex count")?;
                let m: usize = field(toks.next(), line, "edge count")?;
                header = Some((n, m));
                tau = vec![None; n];
            }
            "t" => {
                let n = tau.len();
                let v: u32 = field(toks.next(), line, "vertex id")?;
                let t: u32 = field(toks.next(), line, "threshold")?;
                if v == 0 || v as usize > n {
                    return Err(Error::Invalid(format!(
                        "line {line}: vertex {v} outside 1..={n}"
                    )));
                }
                let slot = &mut tau[v as usize - 1];
                if slot.is_some() {
                    return Err(Error::Invalid(format!(
                        "line {line}: second threshold for vertex {v}"
                    )));
                }
                *slot = Some(t);
            }
            "e" => {
                let n = tau.len();
                let u: u32 = field(toks.next(), line, "edge endpoint")?;
                let v: u32 = field(toks.next(), line, "edge endpoint")?;
                for w in [u, v] {
                    if w == 0 || w as usize > n {
                        return Err(Error::Invalid(format!(
                            "line {line}: vertex {w} outside 1..={n}"
                        )));
                    }
                }
                if u >= v {
                    return Err(Error::Invalid(format!(
                        "line {line}: edge endpoints must satisfy u < v, got {u} {v}"
                    )));
                }
                if !seen.insert((u, v)) {
                    return Err(Error::Invalid(format!(
                        "line {line}: duplicate edge {u} {v}"
                    )));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(syntax(line, format!("unknown line type {other:?}"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }

    let (n, m) = header.ok_or_else(|| syntax(0, "missing `p tss` header"))?;
    if edges.len() != m {
        return Err(Error::Invalid(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    let tau = tau
        .into_iter()
        .enumerate()
        .map(|(v, t)| t.ok_or_else(|| Error::Invalid(format!("missing threshold for vertex {}", v + 1))))
        .collect::<Result<Vec<_>>>()?;
    ThresholdGraph::from_edges(n, &edges, tau)
}

/// Deterministic text form: header, thresholds in vertex order, edges ascending.
pub fn serialize_graph(g: &ThresholdGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p tss {} {}", g.n(), g.edge_count()).unwrap();
    for v in g.vertices() {
        writeln!(out, "t {} {}", v + 1, g.tau(v)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Parses a vertex-set file. Comment lines starting with `c` are skipped;
/// the remaining tokens are 1-based ids. Range checks against a graph are
/// the caller's business ([`ThresholdGraph::check_set`]).
pub fn parse_vertex_set(text: &str) -> Result<VertexSet> {
    let mut s = VertexSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim_start().starts_with('c') {
            continue;
        }
        for tok in raw.split_whitespace() {
            let id: u32 = tok
                .parse()
                .map_err(|_| syntax(line, format!("cannot parse vertex id from {tok:?}")))?;
            if id == 0 {
                return Err(syntax(line, "vertex ids are 1-based"));
            }
            if !s.insert(id - 1) {
                return Err(Error::Invalid(format!("line {line}: vertex {id} listed twice")));
            }
        }
    }
    Ok(s)
}

pub fn serialize_vertex_set(s: &VertexSet) -> String {
    let ids: Vec<String> = s.iter().map(|v| (v + 1).to_string()).collect();
    format!("{}\n", ids.join(" "))
}

/// Graphviz rendering of a plain threshold graph; labels show `id/tau`.
pub fn graph_to_dot(g: &ThresholdGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {} [label=\"{}/{}\"];", v + 1, v + 1, g.tau(v)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", u + 1, v + 1).unwrap();
    }
    out.push_str("}\n");
    out
}
