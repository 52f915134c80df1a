//! The threshold graph `G = (V, E, tau)`.

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Simple undirected graph on vertices `0..n` with a threshold per vertex.
///
/// Immutable once built; every constructor goes through [`ThresholdGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdGraph {
    adjacency: Vec<Vec<u32>>,
    tau: Vec<u32>,
}

/// How [`set_cover_thresholds`] rewrites thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverMode {
    /// `tau(v) = deg(v)`: target sets are exactly the vertex covers.
    VertexCover,
    /// `tau(v) = max(deg(v) - 1, 0)`: target sets are exactly the feedback vertex sets.
    FeedbackVertexSet,
}

impl ThresholdGraph {
    /// Builds a graph from 0-based edges. Duplicate edges, self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)], tau: Vec<u32>) -> Result<Self> {
        if tau.len() != n {
            return Err(Error::Invalid(format!(
                "expected {n} thresholds, got {}",
                tau.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Invalid(format!("self-loop at vertex {u}")));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for (v, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!(
                    "duplicate edge between {v} and {}",
                    w[0]
                )));
            }
        }
        let g = ThresholdGraph { adjacency, tau };
        g.validate()?;
        Ok(g)
    }

    /// Same as [`from_edges`](Self::from_edges) with every threshold set to `tau`.
    pub fn uniform(n: usize, edges: &[(u32, u32)], tau: u32) -> Result<Self> {
        Self::from_edges(n, edges, vec![tau; n])
    }

    /// Checks symmetry, sortedness, absence of loops and duplicates.
    pub fn validate(&self) -> Result<()> {
        let n = self.adjacency.len();
        if self.tau.len() != n {
            return Err(Error::Invalid("threshold vector length differs from n".into()));
        }
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invalid(format!(
                    "neighbor list of {v} is not strictly ascending"
                )));
            }
            for &w in nbrs {
                if w as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
                if w as usize == v {
                    return Err(Error::Invalid(format!("self-loop at vertex {v}")));
                }
                if self.adjacency[w as usize].binary_search(&(v as u32)).is_err() {
                    return Err(Error::Invalid(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn tau(&self, v: u32) -> u32 {
        self.tau[v as usize]
    }

    pub fn thresholds(&self) -> &[u32] {
        &self.tau
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.n() as u32
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as u32;
            nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    pub fn isolated_vertices(&self) -> Vec<u32> {
        self.vertices().filter(|&v| self.degree(v) == 0).collect()
    }

    /// Vertices with `tau(v) > deg(v)`; they can only be active by being seeded.
    pub fn forced_vertices(&self) -> VertexSet {
        self.vertices()
            .filter(|&v| self.tau(v) as usize > self.degree(v))
            .collect()
    }

    /// Copy with the given thresholds.
    pub fn with_thresholds(&self, tau: Vec<u32>) -> Result<Self> {
        if tau.len() != self.n() {
            return Err(Error::Invalid(format!(
                "expected {} thresholds, got {}",
                self.n(),
                tau.len()
            )));
        }
        Ok(ThresholdGraph {
            adjacency: self.adjacency.clone(),
            tau,
        })
    }

    /// Fails with `VertexOutOfRange` if `s` mentions a vertex outside the graph.
    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.max_vertex() {
            Some(v) if v as usize >= self.n() => Err(Error::VertexOutOfRange { vertex: v, n: self.n() }),
            _ => Ok(()),
        }
    }
}

/// Rewrites thresholds so that target sets coincide with vertex covers or
/// feedback vertex sets.
pub fn set_cover_thresholds(g: &ThresholdGraph, mode: CoverMode) -> ThresholdGraph {
    let tau = g
        .vertices()
        .map(|v| {
            let d = g.degree(v) as u32;
            match mode {
                CoverMode::VertexCover => d,
                CoverMode::FeedbackVertexSet => d.saturating_sub(1),
            }
        })
        .collect();
    ThresholdGraph {
        adjacency: g.adjacency.clone(),
        tau,
    }
}
