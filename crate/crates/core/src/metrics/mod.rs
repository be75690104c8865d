//! Network diagnostics computed from greedy curves and node rankings:
//! reselection gain, influence saturation, hub ratio, categorization.

mod report;
mod saturation;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use report::{MetricsReport, RG_BASIS};
pub use saturation::{
    fit_saturation, fit_saturation_values, influence_saturation, SaturationFit, DEFAULT_K_MAX,
    DEFAULT_K_MIN, FLAT_SLOPE,
};

use crate::cascade::CascadeConfig;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::maximize::{greedy_select, GreedyCurve, Mode, NodeSpreadRanking};

/// Ratio of the multiset greedy spread to the set greedy spread at budget `k`.
///
/// Greedy values stand in for the true optima on both sides.
pub fn reselection_gain(simple: &GreedyCurve, resel: &GreedyCurve, k: usize) -> Result<f64> {
    if simple.mode != Mode::Set {
        return Err(Error::invalid("simple curve must come from set mode"));
    }
    if resel.mode != Mode::Multiset {
        return Err(Error::invalid(
            "reselection curve must come from multiset mode",
        ));
    }
    let (Some(num), Some(den)) = (resel.spread_at(k), simple.spread_at(k)) else {
        return Err(Error::invalid(format!(
            "k = {k} beyond curves of length {} and {}",
            resel.len(),
            simple.len()
        )));
    };
    Ok(num.mean / den.mean)
}

/// `HR_k`: spread of the top node over the spread of the `k`-th node.
pub fn hub_ratio(ranking: &NodeSpreadRanking, k: usize) -> Result<f64> {
    if k < 2 || k > ranking.len() {
        return Err(Error::invalid(format!(
            "hub ratio distance must be in [2, {}], got {k}",
            ranking.len()
        )));
    }
    let top = ranking.spread_at(1).expect("ranking is non-empty");
    let kth = ranking.spread_at(k).expect("k checked above");
    Ok(top / kth)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Friendly,
    Aware,
    Free,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Friendly => "friendly",
            Category::Aware => "aware",
            Category::Free => "free",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub const FRIENDLY_ABOVE: f64 = 1.5;
pub const AWARE_FROM: f64 = 1.05;

/// `rg > 1.5` friendly, `1.05 <= rg <= 1.5` aware, below that free.
pub fn categorize(rg: f64) -> Category {
    if rg > FRIENDLY_ABOVE {
        Category::Friendly
    } else if rg >= AWARE_FROM {
        Category::Aware
    } else {
        Category::Free
    }
}

/// Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::invalid(format!(
            "length mismatch: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::invalid("correlation needs at least two pairs"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("constant input".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// `0.0, 0.1, ..., 1.0`.
pub fn default_alpha_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub alpha: f64,
    pub rg: f64,
    pub multiset_spread: f64,
    pub set_spread: f64,
}

/// Reselection gain at budget `k` for each fading value.
pub fn alpha_sweep(
    g: &WeightedGraph,
    k: usize,
    alphas: &[f64],
    cfg: &CascadeConfig,
) -> Result<Vec<SweepPoint>> {
    let simple = greedy_select(g, k, Mode::Set, cfg)?;
    alpha_sweep_with(&simple, k, alphas, |alpha| {
        greedy_select(g, k, Mode::Multiset, &cfg.with_alpha(alpha))
    })
}

/// Sweep against a precomputed set-mode curve; `multiset_curve` produces
/// the multiset curve for one fading value.
pub fn alpha_sweep_with(
    simple: &GreedyCurve,
    k: usize,
    alphas: &[f64],
    mut multiset_curve: impl FnMut(f64) -> Result<GreedyCurve>,
) -> Result<Vec<SweepPoint>> {
    if let Some(&a) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(Error::invalid(format!("alpha must be in [0, 1], got {a}")));
    }
    alphas
        .iter()
        .map(|&alpha| {
            let resel = multiset_curve(alpha)?;
            Ok(SweepPoint {
                alpha,
                rg: reselection_gain(simple, &resel, k)?,
                multiset_spread: resel.spread_at(k).map_or(f64::NAN, |s| s.mean),
                set_spread: simple.spread_at(k).map_or(f64::NAN, |s| s.mean),
            })
        })
        .collect()
}
