//! Lazy (CELF) greedy.
//!
//! Each candidate's marginal gain is cached together with the round it was
//! computed in. Because the spread has diminishing returns over multisets
//! and the seed multiset only grows, a cached gain is an upper bound on the
//! current one, so only the heap top ever needs re-evaluation. In multiset
//! mode the chosen node goes back into the heap with its old gain as the
//! bound for its next, more faded, chance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use log::info;
use rayon::prelude::*;

use super::{GreedyCurve, GreedyStep, Mode};
use crate::cascade::{
    check_alpha, estimate_spread, exact_spread, CascadeConfig, SeedMultiset, SpreadEstimate,
};
use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};

/// A spread function greedy can maximize.
pub trait SpreadObjective: Sync {
    fn node_count(&self) -> usize;
    fn evaluate(&self, seeds: &SeedMultiset) -> Result<SpreadEstimate>;
}

/// Monte Carlo spread. Every evaluation uses the same master seed, so
/// gains are differences under common random numbers.
pub struct MonteCarlo<'a> {
    pub graph: &'a WeightedGraph,
    pub cfg: CascadeConfig,
}

impl SpreadObjective for MonteCarlo<'_> {
    fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    fn evaluate(&self, seeds: &SeedMultiset) -> Result<SpreadEstimate> {
        estimate_spread(self.graph, seeds, &self.cfg)
    }
}

/// Exact spread via the enumeration oracle; for small graphs only.
pub struct ExactObjective<'a> {
    pub graph: &'a WeightedGraph,
    pub alpha: f64,
}

impl SpreadObjective for ExactObjective<'_> {
    fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    fn evaluate(&self, seeds: &SeedMultiset) -> Result<SpreadEstimate> {
        exact_spread(self.graph, seeds, self.alpha).map(|e| SpreadEstimate::exact(e.spread))
    }
}

struct Candidate {
    gain: f64,
    /// Multiplicity of `node` in the multiset the gain was computed against.
    multiplicity: u32,
    node: NodeId,
    round: usize,
    /// Spread of the multiset with `node` added.
    with_node: SpreadEstimate,
}

// Larger gain first; on exact ties prefer a node not chosen yet, then the
// smaller id.
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.multiplicity.cmp(&self.multiplicity))
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

/// Monte Carlo greedy selection of `budget` seeds.
pub fn greedy_select(
    g: &WeightedGraph,
    budget: usize,
    mode: Mode,
    cfg: &CascadeConfig,
) -> Result<GreedyCurve> {
    cfg.validate()?;
    let objective = MonteCarlo {
        graph: g,
        cfg: *cfg,
    };
    lazy_greedy(&objective, budget, mode, cfg.alpha)
}

/// CELF greedy over any spread objective. `alpha` is only recorded in the
/// returned curve; the objective carries its own fading.
pub fn lazy_greedy<O: SpreadObjective>(
    objective: &O,
    budget: usize,
    mode: Mode,
    alpha: f64,
) -> Result<GreedyCurve> {
    check_alpha(alpha)?;
    let n = objective.node_count();
    if budget == 0 {
        return Err(Error::invalid("budget must be >= 1"));
    }
    if mode == Mode::Set && budget > n {
        return Err(Error::invalid(format!(
            "budget {budget} exceeds node count {n} in set mode"
        )));
    }
    if n == 0 {
        return Err(Error::invalid("graph has no nodes"));
    }

    let empty = SeedMultiset::new();
    let initial: Vec<Candidate> = (0..n)
        .into_par_iter()
        .map(|v| {
            let with_node = objective.evaluate(&empty.with(v))?;
            Ok(Candidate {
                gain: with_node.mean,
                multiplicity: 0,
                node: v,
                round: 1,
                with_node,
            })
        })
        .collect::<Result<_>>()?;
    let mut heap = BinaryHeap::from(initial);

    let mut seeds = SeedMultiset::new();
    let mut base = 0.0;
    let mut recorded = 0.0;
    let mut steps = Vec::with_capacity(budget);
    let mut evaluations = n;

    for round in 1..=budget {
        let chosen = loop {
            let mut top = heap.pop().expect("candidate pool is never empty");
            if top.round == round {
                break top;
            }
            top.with_node = objective.evaluate(&seeds.with(top.node))?;
            top.gain = top.with_node.mean - base;
            top.round = round;
            evaluations += 1;
            heap.push(top);
        };

        seeds.add(chosen.node);
        let raw = chosen.with_node.mean;
        recorded = if raw < recorded { recorded } else { raw };
        base = raw;
        let multiplicity_after = seeds.multiplicity(chosen.node);
        info!(
            "{mode} greedy k={round} node={} multiplicity={multiplicity_after} gain={} spread={raw} evaluations={evaluations}",
            chosen.node, chosen.gain
        );
        steps.push(GreedyStep {
            k: round,
            node: chosen.node,
            multiplicity_after,
            spread: SpreadEstimate {
                mean: recorded,
                ..chosen.with_node
            },
            raw_mean: raw,
        });

        if mode == Mode::Multiset {
            // A further copy of the chosen node can gain more than the node
            // itself did (e.g. when other seeds already reached it), so its old
            // gain is no bound; force a fresh evaluation.
            heap.push(Candidate {
                multiplicity: multiplicity_after,
                gain: f64::INFINITY,
                round: 0,
                ..chosen
            });
        }
    }

    Ok(GreedyCurve {
        mode,
        alpha,
        node_count: n,
        steps,
    })
}
