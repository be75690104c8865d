//! Copy-graph expansion.
//!
//! Reselecting `v` for the `i`-th extra time is equivalent to seeding a
//! fresh node `v_i` that has no in-edges and carries `v`'s out-edges with
//! probabilities scaled by `alpha^i`. Expanding a graph this way turns a
//! multiset spread into an ordinary set spread on the host graph.

use std::collections::BTreeMap;

use super::{NodeId, WeightedGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CopyGraph {
    base_node_count: usize,
    host: WeightedGraph,
    copies: BTreeMap<NodeId, Vec<NodeId>>,
}

impl CopyGraph {
    /// Host graph: the base graph (ids unchanged) followed by the copies.
    pub fn host(&self) -> &WeightedGraph {
        &self.host
    }

    pub fn base_node_count(&self) -> usize {
        self.base_node_count
    }

    /// Host ids of `v_1..v_m` for an expanded node.
    pub fn copies_of(&self, v: NodeId) -> &[NodeId] {
        self.copies.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn copy_map(&self) -> &BTreeMap<NodeId, Vec<NodeId>> {
        &self.copies
    }
}

/// Expands `g` with `needed[v]` zero-in-degree copies of each listed node.
///
/// Copies are numbered after the base nodes, in ascending order of the
/// original id and then of the copy index.
pub fn copy_expand(
    g: &WeightedGraph,
    alpha: f64,
    needed: &BTreeMap<NodeId, usize>,
) -> Result<CopyGraph> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!(
            "alpha must be in [0, 1], got {alpha}"
        )));
    }
    let n = g.node_count();
    let mut edges: Vec<_> = g.edges().collect();
    let mut copies = BTreeMap::new();
    let mut next = n;
    for (&v, &count) in needed {
        if v >= n {
            return Err(Error::invalid(format!("node {v} not in graph")));
        }
        if count == 0 {
            return Err(Error::invalid(format!(
                "copy count for node {v} must be >= 1"
            )));
        }
        let ids: Vec<NodeId> = (next..next + count).collect();
        for (i, &copy) in ids.iter().enumerate() {
            let scale = alpha.powi(i as i32 + 1);
            edges.extend(g.neighbors(v).map(|(u, p)| (copy, u, p * scale)));
        }
        next += count;
        copies.insert(v, ids);
    }
    Ok(CopyGraph {
        base_node_count: n,
        host: WeightedGraph::from_edges(next, edges)?,
        copies,
    })
}
