//! Independent Cascade diffusion with seed reselection.
//!
//! A seed of multiplicity `m` gets `m` chances at each out-neighbour, the
//! `w`-th chance faded by `alpha^(w-1)` (with `alpha^0 = 1` even at
//! `alpha = 0`). All chances are collapsed into one combined probability per
//! out-edge at step 0; every other activated node makes a single attempt per
//! out-edge, as in the plain model.

mod exact;
mod simulate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use exact::{exact_spread, exact_spread_with_limit, ExactSpread, EXACT_EDGE_LIMIT};
pub use simulate::{estimate_spread, simulate_once, simulate_runs, Simulator};

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};

/// Seed multiset: node id to multiplicity (always >= 1).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedMultiset {
    entries: BTreeMap<NodeId, u32>,
}

impl SeedMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every node once.
    pub fn from_set(nodes: impl IntoIterator<Item = NodeId>) -> Self {
        let mut m = Self::new();
        for v in nodes {
            m.entries.insert(v, 1);
        }
        m
    }

    /// Pairs `(node, multiplicity)`; repeated nodes accumulate.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (NodeId, u32)>) -> Result<Self> {
        let mut m = Self::new();
        for (v, count) in pairs {
            if count == 0 {
                return Err(Error::invalid(format!(
                    "multiplicity of node {v} must be >= 1"
                )));
            }
            *m.entries.entry(v).or_insert(0) += count;
        }
        Ok(m)
    }

    pub fn add(&mut self, v: NodeId) {
        *self.entries.entry(v).or_insert(0) += 1;
    }

    pub fn with(&self, v: NodeId) -> Self {
        let mut m = self.clone();
        m.add(v);
        m
    }

    pub fn multiplicity(&self, v: NodeId) -> u32 {
        self.entries.get(&v).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn size(&self) -> usize {
        self.entries.values().map(|&m| m as usize).sum()
    }

    /// Number of distinct nodes, `u(M)`.
    pub fn unique_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, u32)> + '_ {
        self.entries.iter().map(|(&v, &m)| (v, m))
    }

    pub fn support(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.entries.keys().copied()
    }

    /// Componentwise `self <= other`.
    pub fn is_subset_of(&self, other: &SeedMultiset) -> bool {
        self.iter().all(|(v, m)| other.multiplicity(v) >= m)
    }

    pub(crate) fn validate_for(&self, g: &WeightedGraph) -> Result<()> {
        match self.support().find(|&v| !g.contains(v)) {
            Some(v) => Err(Error::invalid(format!(
                "seed node {v} not in graph of {} nodes",
                g.node_count()
            ))),
            None => Ok(()),
        }
    }
}

/// `0:2,5,7:3` style; a bare id means multiplicity 1.
impl FromStr for SeedMultiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (node, count) = match item.split_once(':') {
                Some((n, c)) => (n.trim(), c.trim()),
                None => (item, "1"),
            };
            let node = node
                .parse()
                .map_err(|_| Error::invalid(format!("invalid seed node {node:?}")))?;
            let count = count
                .parse()
                .map_err(|_| Error::invalid(format!("invalid multiplicity {count:?}")))?;
            pairs.push((node, count));
        }
        Self::from_pairs(pairs)
    }
}

impl fmt::Display for SeedMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, m)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}:{m}")?;
        }
        Ok(())
    }
}

/// Fading factor, Monte Carlo run count and master seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CascadeConfig {
    pub alpha: f64,
    pub runs: u64,
    pub master_seed: u64,
}

impl CascadeConfig {
    pub const DEFAULT_RUNS: u64 = 10_000;

    pub fn new(alpha: f64, runs: u64, master_seed: u64) -> Result<Self> {
        let cfg = CascadeConfig {
            alpha,
            runs,
            master_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.runs == 0 {
            return Err(Error::invalid("runs must be >= 1"));
        }
        Ok(())
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        CascadeConfig { alpha, ..self }
    }
}

pub fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "alpha must be in [0, 1], got {alpha}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpreadEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub runs: u64,
}

impl SpreadEstimate {
    pub fn exact(value: f64) -> Self {
        SpreadEstimate {
            mean: value,
            std_error: 0.0,
            runs: 0,
        }
    }
}

/// Probability that at least one of a seed's `m` faded chances succeeds
/// across an edge of probability `p`: `1 - prod_w (1 - alpha^(w-1) p)`.
///
/// Accumulated as `q += (1 - q) * alpha^(w-1) * p` so a zero-weight chance
/// leaves `q` bit-identical.
pub fn combined_probability(p: f64, alpha: f64, multiplicity: u32) -> f64 {
    let mut q = 0.0;
    let mut fade = 1.0;
    for _ in 0..multiplicity {
        let chance = fade * p;
        if chance > 0.0 {
            q += (1.0 - q) * chance;
        }
        fade *= alpha;
    }
    q
}
