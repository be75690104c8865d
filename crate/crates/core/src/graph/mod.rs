//! Directed graphs with per-edge influence probabilities.
//!
//! [`RawGraph`] is the unweighted structure produced by ingestion;
//! [`WeightedGraph`] is the compressed-sparse-row form every simulation runs
//! on. Both are immutable once built and share the same structural
//! invariants: ids in `[0, node_count)`, no self-loops, no duplicate directed
//! edges.

mod copy;
mod generate;
mod io;
mod weights;

pub use copy::{copy_expand, CopyGraph};
pub use generate::{gen_clique, gen_random, gen_star};
pub use io::{
    parse_edge_list, parse_edge_list_with, parse_weighted_edge_list, write_edge_list,
    write_id_map_csv, write_weighted_edge_list, IdMap, ParseOptions, Parsed,
};
pub use weights::{assign_tr, assign_wc, TR_VALUES};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Unweighted directed graph, edges sorted by `(source, target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGraph {
    node_count: usize,
    edges: Vec<(NodeId, NodeId)>,
}

impl RawGraph {
    /// Builds a graph, dropping self-loops and duplicate edges.
    pub fn new(node_count: usize, mut edges: Vec<(NodeId, NodeId)>) -> Result<Self> {
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u >= node_count || v >= node_count)
        {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) out of range for {node_count} nodes"
            )));
        }
        edges.retain(|&(u, v)| u != v);
        edges.sort_unstable();
        edges.dedup();
        Ok(RawGraph { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count];
        for &(_, v) in &self.edges {
            deg[v] += 1;
        }
        deg
    }

    /// Adds the reverse of every edge. Idempotent.
    pub fn symmetrize(&self) -> RawGraph {
        let mut edges = Vec::with_capacity(self.edges.len() * 2);
        for &(u, v) in &self.edges {
            edges.push((u, v));
            edges.push((v, u));
        }
        edges.sort_unstable();
        edges.dedup();
        RawGraph {
            node_count: self.node_count,
            edges,
        }
    }

    /// Attaches probabilities computed per edge.
    pub fn with_weights(
        &self,
        mut weight: impl FnMut(NodeId, NodeId) -> f64,
    ) -> Result<WeightedGraph> {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (u, v, weight(u, v)))
            .collect();
        WeightedGraph::from_edges(self.node_count, edges)
    }
}

/// Free-function form of [`RawGraph::symmetrize`].
pub fn symmetrize(g: &RawGraph) -> RawGraph {
    g.symmetrize()
}

/// Directed graph in CSR layout with an influence probability per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    probs: Vec<f64>,
}

impl WeightedGraph {
    /// Builds a graph from `(source, target, probability)` triples.
    ///
    /// Self-loops are dropped; for duplicate directed edges the first
    /// occurrence wins.
    pub fn from_edges(node_count: usize, mut edges: Vec<(NodeId, NodeId, f64)>) -> Result<Self> {
        for &(u, v, p) in &edges {
            if u >= node_count || v >= node_count {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {node_count} nodes"
                )));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) has probability {p} outside [0, 1]"
                )));
            }
        }
        edges.retain(|&(u, v, _)| u != v);
        edges.sort_by_key(|&(u, v, _)| (u, v));
        edges.dedup_by_key(|e| (e.0, e.1));

        let mut offsets = vec![0usize; node_count + 1];
        for &(u, _, _) in &edges {
            offsets[u + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let (targets, probs) = edges.into_iter().map(|(_, v, p)| (v, p)).unzip();
        Ok(WeightedGraph {
            offsets,
            targets,
            probs,
        })
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v < self.node_count()
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Global index of `v`'s first out-edge; its edges are numbered
    /// consecutively in target order.
    #[inline]
    pub fn edge_offset(&self, v: NodeId) -> usize {
        self.offsets[v]
    }

    /// Targets and probabilities of `v`'s out-edges, sorted by target.
    #[inline]
    pub fn out_edges(&self, v: NodeId) -> (&[NodeId], &[f64]) {
        let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
        (&self.targets[lo..hi], &self.probs[lo..hi])
    }

    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        let (t, p) = self.out_edges(v);
        t.iter().copied().zip(p.iter().copied())
    }

    /// All edges as `(source, target, probability)` in `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        (0..self.node_count()).flat_map(move |u| self.neighbors(u).map(move |(v, p)| (u, v, p)))
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count()];
        for &v in &self.targets {
            deg[v] += 1;
        }
        deg
    }

    /// The unweighted structure.
    pub fn structure(&self) -> RawGraph {
        RawGraph {
            node_count: self.node_count(),
            edges: self.edges().map(|(u, v, _)| (u, v)).collect(),
        }
    }
}
