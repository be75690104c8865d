//! Greedy seed selection in set and multiset mode.

mod celf;
mod ranking;

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use celf::{greedy_select, lazy_greedy, ExactObjective, MonteCarlo, SpreadObjective};
pub use ranking::{
    default_pool, single_node_spreads, NodeSpreadRanking, POOL_NODE_THRESHOLD, POOL_TOP_BY_DEGREE,
};

use crate::cascade::{SeedMultiset, SpreadEstimate};
use crate::error::Error;
use crate::graph::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Classic influence maximization: every seed at most once.
    Set,
    /// Reselection allowed: a chosen node stays a candidate.
    Multiset,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Set => "set",
            Mode::Multiset => "multiset",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "set" => Ok(Mode::Set),
            "multiset" => Ok(Mode::Multiset),
            other => Err(Error::invalid(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyStep {
    pub k: usize,
    pub node: NodeId,
    pub multiplicity_after: u32,
    /// Prefix spread after smoothing (never below the previous step).
    pub spread: SpreadEstimate,
    /// Prefix spread as estimated, before smoothing.
    pub raw_mean: f64,
}

/// Greedy trace: step `k` records the `k`-th chosen node and the spread of
/// the first `k` choices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyCurve {
    pub mode: Mode,
    pub alpha: f64,
    pub node_count: usize,
    pub steps: Vec<GreedyStep>,
}

impl GreedyCurve {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Recorded spread of the `k`-prefix (1-based).
    pub fn spread_at(&self, k: usize) -> Option<&SpreadEstimate> {
        k.checked_sub(1)
            .and_then(|i| self.steps.get(i))
            .map(|s| &s.spread)
    }

    /// `tau(k)` for `k = 1..=len`, as a 0-based vector.
    pub fn spread_values(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.spread.mean).collect()
    }

    pub fn sequence(&self) -> Vec<NodeId> {
        self.steps.iter().map(|s| s.node).collect()
    }

    pub fn seeds(&self) -> SeedMultiset {
        let mut m = SeedMultiset::new();
        for s in &self.steps {
            m.add(s.node);
        }
        m
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "k,node,multiplicity_after,spread_mean,spread_se,spread_mean_normalized,spread_mean_raw\n",
        );
        let n = self.node_count.max(1) as f64;
        for s in &self.steps {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                s.k,
                s.node,
                s.multiplicity_after,
                s.spread.mean,
                s.spread.std_error,
                s.spread.mean / n,
                s.raw_mean
            );
        }
        out
    }
}
