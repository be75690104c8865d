use rayon::prelude::*;

use super::{check_alpha, combined_probability, CascadeConfig, SeedMultiset, SpreadEstimate};
use crate::error::Result;
use crate::graph::{NodeId, WeightedGraph};
use crate::seeding::{edge_coin, run_seed};

/// Seeds with their out-edge probabilities already combined over all chances.
struct PreparedSeeds {
    nodes: Vec<NodeId>,
    combined: Vec<Vec<f64>>,
}

impl PreparedSeeds {
    fn new(g: &WeightedGraph, seeds: &SeedMultiset, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        seeds.validate_for(g)?;
        let mut nodes = Vec::with_capacity(seeds.unique_count());
        let mut combined = Vec::with_capacity(seeds.unique_count());
        for (v, m) in seeds.iter() {
            nodes.push(v);
            let (_, probs) = g.out_edges(v);
            combined.push(
                probs
                    .iter()
                    .map(|&p| combined_probability(p, alpha, m))
                    .collect(),
            );
        }
        Ok(PreparedSeeds { nodes, combined })
    }
}

/// Reusable scratch space for repeated cascades on one graph.
pub struct Simulator {
    stamp: Vec<u32>,
    epoch: u32,
    frontier: Vec<NodeId>,
    next: Vec<NodeId>,
}

impl Simulator {
    pub fn new(node_count: usize) -> Self {
        Simulator {
            stamp: vec![0; node_count],
            epoch: 0,
            frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    fn begin(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.frontier.clear();
        self.next.clear();
    }

    #[inline]
    fn activate(&mut self, v: NodeId) -> bool {
        if self.stamp[v] == self.epoch {
            false
        } else {
            self.stamp[v] = self.epoch;
            true
        }
    }

    fn run(&mut self, g: &WeightedGraph, seeds: &PreparedSeeds, seed: u64) -> usize {
        self.begin();
        let mut active = 0;
        for &v in &seeds.nodes {
            if self.activate(v) {
                active += 1;
            }
        }
        for (&v, probs) in seeds.nodes.iter().zip(&seeds.combined) {
            let (targets, _) = g.out_edges(v);
            let base = g.edge_offset(v);
            for (j, (&u, &q)) in targets.iter().zip(probs).enumerate() {
                if self.stamp[u] != self.epoch && edge_coin(seed, base + j) < q {
                    self.activate(u);
                    self.next.push(u);
                    active += 1;
                }
            }
        }
        loop {
            std::mem::swap(&mut self.frontier, &mut self.next);
            if self.frontier.is_empty() {
                break;
            }
            self.next.clear();
            for i in 0..self.frontier.len() {
                let v = self.frontier[i];
                let (targets, probs) = g.out_edges(v);
                let base = g.edge_offset(v);
                for (j, (&u, &p)) in targets.iter().zip(probs).enumerate() {
                    if self.stamp[u] != self.epoch && edge_coin(seed, base + j) < p {
                        self.activate(u);
                        self.next.push(u);
                        active += 1;
                    }
                }
            }
        }
        active
    }
}

/// One randomized cascade; returns the number of active nodes at quiescence.
///
/// Edge `e` is live when `edge_coin(seed, e)` falls below its probability
/// (the combined one for a seed's out-edges).
pub fn simulate_once(
    g: &WeightedGraph,
    seeds: &SeedMultiset,
    alpha: f64,
    seed: u64,
) -> Result<usize> {
    let prepared = PreparedSeeds::new(g, seeds, alpha)?;
    Ok(Simulator::new(g.node_count()).run(g, &prepared, seed))
}

/// Activation counts of every run, in run order.
pub fn simulate_runs(
    g: &WeightedGraph,
    seeds: &SeedMultiset,
    cfg: &CascadeConfig,
) -> Result<Vec<usize>> {
    cfg.validate()?;
    let prepared = PreparedSeeds::new(g, seeds, cfg.alpha)?;
    Ok((0..cfg.runs)
        .into_par_iter()
        .map_init(
            || Simulator::new(g.node_count()),
            |sim, i| sim.run(g, &prepared, run_seed(cfg.master_seed, i)),
        )
        .collect())
}

/// Monte Carlo estimate of the expected spread.
///
/// Run `i` uses the coins of `run_seed(master_seed, i)` and the reduction
/// sums integers, so the result is bit-identical for any thread count or
/// scheduling. Estimates for different seed multisets share their runs: a
/// larger multiset never activates fewer nodes in the same run.
pub fn estimate_spread(
    g: &WeightedGraph,
    seeds: &SeedMultiset,
    cfg: &CascadeConfig,
) -> Result<SpreadEstimate> {
    cfg.validate()?;
    let prepared = PreparedSeeds::new(g, seeds, cfg.alpha)?;
    let (sum, sum_sq) = (0..cfg.runs)
        .into_par_iter()
        .map_init(
            || Simulator::new(g.node_count()),
            |sim, i| sim.run(g, &prepared, run_seed(cfg.master_seed, i)) as u64,
        )
        .fold(
            || (0u64, 0u128),
            |(s, q), x| (s + x, q + u128::from(x) * u128::from(x)),
        )
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(summarize(sum, sum_sq, cfg.runs))
}

fn summarize(sum: u64, sum_sq: u128, runs: u64) -> SpreadEstimate {
    let r = runs as f64;
    let mean = sum as f64 / r;
    let std_error = if runs > 1 {
        // R * sum_sq - sum^2 is exact in integers and never negative.
        let centered = u128::from(runs) * sum_sq - u128::from(sum) * u128::from(sum);
        let var = centered as f64 / (r * (r - 1.0));
        (var / r).sqrt()
    } else {
        0.0
    };
    SpreadEstimate {
        mean,
        std_error,
        runs,
    }
}
