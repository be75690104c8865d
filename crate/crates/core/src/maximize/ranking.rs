use std::fmt::Write as _;

use rayon::prelude::*;

use crate::cascade::{estimate_spread, CascadeConfig, SeedMultiset, SpreadEstimate};
use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};

/// Graphs up to this many nodes rank every node by default.
pub const POOL_NODE_THRESHOLD: usize = 50_000;
/// Above the threshold, this many highest out-degree nodes are ranked.
pub const POOL_TOP_BY_DEGREE: usize = 5_000;

/// Single-node spreads, highest first (ties by smaller id).
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSpreadRanking {
    pub entries: Vec<(NodeId, SpreadEstimate)>,
}

impl NodeSpreadRanking {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Spread of the node at 1-based `rank`.
    pub fn spread_at(&self, rank: usize) -> Option<f64> {
        rank.checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(|(_, e)| e.mean)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("rank,node,spread_mean,spread_se\n");
        for (i, (v, e)) in self.entries.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},{}", i + 1, v, e.mean, e.std_error);
        }
        out
    }
}

/// All nodes for small graphs; otherwise the top nodes by out-degree plus
/// `extra` (typically the greedy picks), deduplicated and sorted.
pub fn default_pool(g: &WeightedGraph, extra: &[NodeId]) -> Vec<NodeId> {
    let n = g.node_count();
    if n <= POOL_NODE_THRESHOLD {
        return (0..n).collect();
    }
    let mut by_degree: Vec<NodeId> = (0..n).collect();
    by_degree.sort_by(|&a, &b| g.out_degree(b).cmp(&g.out_degree(a)).then(a.cmp(&b)));
    by_degree.truncate(POOL_TOP_BY_DEGREE);
    by_degree.extend(extra.iter().copied().filter(|&v| v < n));
    by_degree.sort_unstable();
    by_degree.dedup();
    by_degree
}

pub fn single_node_spreads(
    g: &WeightedGraph,
    cfg: &CascadeConfig,
    pool: Option<&[NodeId]>,
) -> Result<NodeSpreadRanking> {
    cfg.validate()?;
    let pool: Vec<NodeId> = match pool {
        Some(p) => p.to_vec(),
        None => default_pool(g, &[]),
    };
    if pool.is_empty() {
        return Err(Error::invalid("node pool is empty"));
    }
    if let Some(&v) = pool.iter().find(|&&v| !g.contains(v)) {
        return Err(Error::invalid(format!("pool node {v} not in graph")));
    }
    let mut entries: Vec<(NodeId, SpreadEstimate)> = pool
        .par_iter()
        .map(|&v| Ok((v, estimate_spread(g, &SeedMultiset::from_set([v]), cfg)?)))
        .collect::<Result<_>>()?;
    entries.sort_by(|a, b| b.1.mean.total_cmp(&a.1.mean).then(a.0.cmp(&b.0)));
    Ok(NodeSpreadRanking { entries })
}
