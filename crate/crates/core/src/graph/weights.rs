//! Edge weight models: weighted cascade (WC) and trivalency (TR).

use rand::Rng as _;

use super::{RawGraph, WeightedGraph};
use crate::seeding::rng_from_seed;

pub const TR_VALUES: [f64; 3] = [0.1, 0.01, 0.001];

/// Weighted cascade: every edge into `v` gets `1 / in_degree(v)`.
pub fn assign_wc(g: &RawGraph) -> WeightedGraph {
    let indeg = g.in_degrees();
    g.with_weights(|_, v| 1.0 / indeg[v] as f64)
        .expect("raw graph invariants hold")
}

/// Trivalency: each edge draws uniformly from [`TR_VALUES`], in
/// `(source, target)` order from a generator seeded with `seed`.
pub fn assign_tr(g: &RawGraph, seed: u64) -> WeightedGraph {
    let mut rng = rng_from_seed(seed);
    g.with_weights(|_, _| TR_VALUES[rng.gen_range(0..TR_VALUES.len())])
        .expect("raw graph invariants hold")
}
