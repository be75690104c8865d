//! Brute-force spread oracle and random instance generation for the
//! integration tests. Shares no code with the library's own evaluators.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Edge = (usize, usize, f64);

/// Most independent coins the oracle will enumerate.
pub const MAX_COINS: usize = 20;

/// One Bernoulli trial: edge index and success probability.
struct Coin {
    edge: usize,
    p: f64,
}

fn coins(edges: &[Edge], seeds: &[(usize, u32)], alpha: f64) -> Vec<Coin> {
    let mut out = Vec::new();
    for (i, &(u, _, p)) in edges.iter().enumerate() {
        let m = seeds.iter().find(|s| s.0 == u).map_or(1, |s| s.1);
        for w in 0..m {
            let chance = alpha.powi(w as i32) * p;
            // alpha^0 is 1 even at alpha = 0
            let chance = if w == 0 { p } else { chance };
            if chance > 0.0 {
                out.push(Coin { edge: i, p: chance });
            }
        }
    }
    out
}

pub fn coin_count(edges: &[Edge], seeds: &[(usize, u32)], alpha: f64) -> usize {
    coins(edges, seeds, alpha).len()
}

fn reached(n: usize, edges: &[Edge], live: &[bool], seeds: &[(usize, u32)]) -> usize {
    let mut on = vec![false; n];
    let mut stack: Vec<usize> = seeds.iter().map(|s| s.0).collect();
    for &s in &stack {
        on[s] = true;
    }
    while let Some(u) = stack.pop() {
        for (i, &(a, b, _)) in edges.iter().enumerate() {
            if a == u && live[i] && !on[b] {
                on[b] = true;
                stack.push(b);
            }
        }
    }
    on.iter().filter(|&&x| x).count()
}

/// Expected number of active nodes, by enumerating every outcome of every
/// influence chance. A seed of multiplicity `m` flips `m` coins per out-edge,
/// the `w`-th with probability `alpha^(w-1) p`; an edge is live when any of
/// its coins lands.
pub fn multiset_spread(n: usize, edges: &[Edge], seeds: &[(usize, u32)], alpha: f64) -> f64 {
    let cs = coins(edges, seeds, alpha);
    assert!(cs.len() <= MAX_COINS, "oracle asked for {} coins", cs.len());
    let mut total = 0.0;
    let mut live = vec![false; edges.len()];
    for mask in 0u32..(1 << cs.len()) {
        let mut weight = 1.0;
        live.iter_mut().for_each(|l| *l = false);
        for (j, c) in cs.iter().enumerate() {
            if mask >> j & 1 == 1 {
                weight *= c.p;
                live[c.edge] = true;
            } else {
                weight *= 1.0 - c.p;
            }
        }
        if weight > 0.0 {
            total += weight * reached(n, edges, &live, seeds) as f64;
        }
    }
    total
}

pub fn set_spread(n: usize, edges: &[Edge], seeds: &[usize]) -> f64 {
    let seeds: Vec<(usize, u32)> = seeds.iter().map(|&s| (s, 1)).collect();
    multiset_spread(n, edges, &seeds, 1.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random directed graph with no self-loops or parallel edges.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, edge_count: usize) -> Vec<Edge> {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let mut edges = Vec::new();
    while edges.len() < edge_count && !pairs.is_empty() {
        let (u, v) = pairs.swap_remove(rng.gen_range(0..pairs.len()));
        let p = match rng.gen_range(0..6) {
            0 => 1.0,
            1 => 0.5,
            _ => rng.gen_range(0.05..0.95),
        };
        edges.push((u, v, p));
    }
    edges
}

/// Random multiset over `0..n` as sorted `(node, multiplicity)` pairs.
pub fn random_multiset(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_unique: usize,
    max_mult: u32,
) -> Vec<(usize, u32)> {
    let unique = rng.gen_range(1..=max_unique.min(n));
    let mut nodes: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for _ in 0..unique {
        let v = nodes.swap_remove(rng.gen_range(0..nodes.len()));
        out.push((v, rng.gen_range(1..=max_mult)));
    }
    out.sort_unstable();
    out
}

pub fn random_alpha(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..5) {
        0 => 0.0,
        1 => 1.0,
        _ => rng.gen_range(0.0..1.0),
    }
}
