//! Experiment configuration, graph loading and the greedy curve cache.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cascade::CascadeConfig;
use crate::error::{Error, Result};
use crate::graph::{
    assign_tr, assign_wc, parse_edge_list_with, parse_weighted_edge_list, write_weighted_edge_list,
    IdMap, ParseOptions, WeightedGraph,
};
use crate::maximize::{greedy_select, GreedyCurve, Mode};
use crate::seeding::derive_seed;

pub const DEFAULT_K: usize = 50;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightModel {
    /// Decide from the file: three fields per line means explicit weights,
    /// two means weighted cascade.
    Auto,
    Wc,
    Tr,
    Explicit,
}

impl WeightModel {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightModel::Auto => "auto",
            WeightModel::Wc => "wc",
            WeightModel::Tr => "tr",
            WeightModel::Explicit => "explicit",
        }
    }
}

impl FromStr for WeightModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(WeightModel::Auto),
            "wc" => Ok(WeightModel::Wc),
            "tr" => Ok(WeightModel::Tr),
            "explicit" => Ok(WeightModel::Explicit),
            other => Err(Error::invalid(format!("unknown weight model {other:?}"))),
        }
    }
}

/// Everything that determines an experiment's outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub input: PathBuf,
    pub weights: WeightModel,
    pub undirected: bool,
    pub nodes: Option<usize>,
    pub mode: Option<Mode>,
    pub alpha: f64,
    pub k: usize,
    pub runs: u64,
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("k must be >= 1"));
        }
        self.cascade()?;
        Ok(())
    }

    /// Monte Carlo configuration; the run seeds come from the `mc` stream.
    pub fn cascade(&self) -> Result<CascadeConfig> {
        CascadeConfig::new(self.alpha, self.runs, derive_seed(self.seed, "mc"))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.to_owned(),
            source,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub struct LoadedGraph {
    pub graph: WeightedGraph,
    pub ids: IdMap,
    pub model: WeightModel,
}

fn looks_weighted(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.split_whitespace().count() == 3)
}

/// Reads and weights the input graph. TR draws come from the `tr` stream.
pub fn load_graph(
    input: &Path,
    model: WeightModel,
    undirected: bool,
    nodes: Option<usize>,
    seed: u64,
) -> Result<LoadedGraph> {
    let text = read_text(input)?;
    let opts = ParseOptions { node_count: nodes };
    let model = match model {
        WeightModel::Auto if looks_weighted(&text) => WeightModel::Explicit,
        WeightModel::Auto => WeightModel::Wc,
        m => m,
    };
    if model == WeightModel::Explicit {
        let parsed = parse_weighted_edge_list(&text, opts)?;
        let graph = if undirected {
            let mut edges: Vec<_> = parsed.graph.edges().collect();
            edges.extend(parsed.graph.edges().map(|(u, v, p)| (v, u, p)));
            WeightedGraph::from_edges(parsed.graph.node_count(), edges)?
        } else {
            parsed.graph
        };
        return Ok(LoadedGraph {
            graph,
            ids: parsed.ids,
            model,
        });
    }
    let parsed = parse_edge_list_with(&text, opts)?;
    let raw = if undirected {
        parsed.graph.symmetrize()
    } else {
        parsed.graph
    };
    let graph = match model {
        WeightModel::Wc => assign_wc(&raw),
        WeightModel::Tr => assign_tr(&raw, derive_seed(seed, "tr")),
        _ => unreachable!("explicit and auto handled above"),
    };
    Ok(LoadedGraph {
        graph,
        ids: parsed.ids,
        model,
    })
}

impl ExperimentConfig {
    pub fn load_graph(&self) -> Result<LoadedGraph> {
        load_graph(
            &self.input,
            self.weights,
            self.undirected,
            self.nodes,
            self.seed,
        )
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Content hash of a weighted graph.
pub fn graph_digest(g: &WeightedGraph) -> String {
    let mut h = Sha256::new();
    h.update(format!("nodes {}\n", g.node_count()));
    h.update(write_weighted_edge_list(g));
    hex(&h.finalize())
}

/// Cache key for one greedy run.
pub fn curve_digest(
    graph_digest: &str,
    model: WeightModel,
    mode: Mode,
    budget: usize,
    cfg: &CascadeConfig,
) -> String {
    let key = format!(
        "graph={graph_digest};model={};seed={};mode={mode};alpha={:?};k={budget};runs={}",
        model.as_str(),
        cfg.master_seed,
        cfg.alpha,
        cfg.runs
    );
    hex(&Sha256::digest(key.as_bytes()))
}

/// Greedy curves memoized on disk under `<out_dir>/cache`.
pub struct CurveCache<'a> {
    pub graph: &'a WeightedGraph,
    pub graph_digest: String,
    pub model: WeightModel,
    pub dir: PathBuf,
}

impl<'a> CurveCache<'a> {
    pub fn new(graph: &'a WeightedGraph, model: WeightModel, out_dir: &Path) -> Self {
        CurveCache {
            graph,
            graph_digest: graph_digest(graph),
            model,
            dir: out_dir.join("cache"),
        }
    }

    pub fn curve(&self, budget: usize, mode: Mode, cfg: &CascadeConfig) -> Result<GreedyCurve> {
        // alpha does not affect set-mode greedy
        let cfg = match mode {
            Mode::Set => cfg.with_alpha(1.0),
            Mode::Multiset => *cfg,
        };
        let digest = curve_digest(&self.graph_digest, self.model, mode, budget, &cfg);
        let path = self.dir.join(format!("curve-{digest}.json"));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(curve) = serde_json::from_str::<GreedyCurve>(&text) {
                log::info!("cache hit {}", path.display());
                return Ok(curve);
            }
        }
        let curve = greedy_select(self.graph, budget, mode, &cfg)?;
        let text = serde_json::to_string(&curve).expect("curve serializes");
        write_text(&path, &text)?;
        Ok(curve)
    }
}
