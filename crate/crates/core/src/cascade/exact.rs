//! Exact expected spread by live-edge enumeration on the copy graph.
//!
//! The multiset `M` is replaced by its underlying set `M_set` on the copy
//! graph `H`, where every extra instance of `v` becomes one of `v`'s copies.
//! Then `sigma_G^m(M) = sigma_H(M_set) - |M_set| + u(M)`: the copies are
//! counted as active in `H` but are not nodes of `G`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_alpha, SeedMultiset};
use crate::error::{Error, Result};
use crate::graph::{copy_expand, NodeId, WeightedGraph};

/// Largest number of reachable edges the oracle will enumerate.
pub const EXACT_EDGE_LIMIT: usize = 25;

/// Exact spread together with its copy-graph decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactSpread {
    pub spread: f64,
    pub host_spread: f64,
    pub set_size: usize,
    pub unique: usize,
}

pub fn exact_spread(g: &WeightedGraph, seeds: &SeedMultiset, alpha: f64) -> Result<ExactSpread> {
    exact_spread_with_limit(g, seeds, alpha, EXACT_EDGE_LIMIT)
}

pub fn exact_spread_with_limit(
    g: &WeightedGraph,
    seeds: &SeedMultiset,
    alpha: f64,
    limit: usize,
) -> Result<ExactSpread> {
    check_alpha(alpha)?;
    seeds.validate_for(g)?;
    if limit > 63 {
        return Err(Error::invalid("exact oracle limit cannot exceed 63 edges"));
    }
    let needed: BTreeMap<NodeId, usize> = seeds
        .iter()
        .filter(|&(_, m)| m > 1)
        .map(|(v, m)| (v, m as usize - 1))
        .collect();
    let cg = copy_expand(g, alpha, &needed)?;
    let mut set: Vec<NodeId> = seeds.support().collect();
    for ids in cg.copy_map().values() {
        set.extend_from_slice(ids);
    }
    // Every host seed is active, so only the expected number of reached
    // non-seeds is uncertain; adding the integer parts last keeps equal
    // multisets (e.g. extra copies at alpha = 0) bit-identical.
    let reached = reached_non_seeds(cg.host(), &set, limit)?;
    Ok(ExactSpread {
        spread: seeds.unique_count() as f64 + reached,
        host_spread: set.len() as f64 + reached,
        set_size: set.len(),
        unique: seeds.unique_count(),
    })
}

/// Expected number of non-seed nodes reachable from `seeds` when every edge
/// is independently live with its probability.
///
/// Edges are decided lazily: only an edge whose source is active and whose
/// target is not yet active is branched on, every other edge sums out.
fn reached_non_seeds(g: &WeightedGraph, seeds: &[NodeId], limit: usize) -> Result<f64> {
    let n = g.node_count();
    let mut is_seed = vec![false; n];
    for &s in seeds {
        is_seed[s] = true;
    }

    // Closure over edges that can ever be live.
    let mut in_closure = is_seed.clone();
    let mut stack: Vec<NodeId> = seeds.to_vec();
    let mut edge_count = 0;
    while let Some(u) = stack.pop() {
        for (v, p) in g.neighbors(u) {
            if p > 0.0 {
                edge_count += 1;
                if !in_closure[v] {
                    in_closure[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    if edge_count > limit {
        return Err(Error::TooLarge {
            edges: edge_count,
            limit,
        });
    }

    // Non-seed closure nodes get bit positions; seeds are always active and
    // edges into them never matter.
    let mut local = vec![usize::MAX; n];
    let mut members = Vec::new();
    for v in (0..n).filter(|&v| in_closure[v] && !is_seed[v]) {
        local[v] = members.len();
        members.push(v);
    }
    let mut out: Vec<Vec<(u32, f64)>> = vec![Vec::new(); members.len()];
    let mut from_seeds = Vec::new();
    for u in (0..n).filter(|&u| in_closure[u]) {
        for (v, p) in g.neighbors(u) {
            if p > 0.0 && !is_seed[v] {
                let edge = (local[v] as u32, p);
                if is_seed[u] {
                    from_seeds.push(edge);
                } else {
                    out[local[u]].push(edge);
                }
            }
        }
    }

    let mut enumerator = Enumerator {
        out: &out,
        pending: from_seeds,
        total: 0.0,
    };
    enumerator.descend(0, 0, 1.0);
    Ok(enumerator.total)
}

struct Enumerator<'a> {
    out: &'a [Vec<(u32, f64)>],
    pending: Vec<(u32, f64)>,
    total: f64,
}

impl Enumerator<'_> {
    fn descend(&mut self, mut cursor: usize, active: u64, weight: f64) {
        while cursor < self.pending.len() && active & (1 << self.pending[cursor].0) != 0 {
            cursor += 1;
        }
        let Some(&(v, p)) = self.pending.get(cursor) else {
            self.total += weight * f64::from(active.count_ones());
            return;
        };
        let mark = self.pending.len();
        self.pending.extend_from_slice(&self.out[v as usize]);
        self.descend(cursor + 1, active | (1 << v), weight * p);
        self.pending.truncate(mark);
        if p < 1.0 {
            self.descend(cursor + 1, active, weight * (1.0 - p));
        }
    }
}
