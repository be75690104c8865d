//! C ABI for the reselect toolkit.
//!
//! Graphs and greedy curves cross the boundary as opaque handles created and
//! destroyed by this library. Every fallible call returns an [`RslStatus`];
//! on failure, [`rsl_last_error`] holds a message for the calling thread.
//!
//! The header `include/reselect.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use reselect::cascade::{estimate_spread, exact_spread, CascadeConfig, SeedMultiset};
use reselect::graph::{
    assign_tr, assign_wc, gen_random, gen_star, parse_edge_list, parse_weighted_edge_list,
    ParseOptions, WeightedGraph,
};
use reselect::maximize::{
    greedy_select, single_node_spreads, GreedyCurve, Mode, NodeSpreadRanking,
};
use reselect::metrics::{
    categorize, fit_saturation_values, hub_ratio, influence_saturation, pearson, reselection_gain,
    Category, SaturationFit,
};
use reselect::seeding::derive_seed;
use reselect::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RslStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    TooLarge = 5,
    Undefined = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RslWeightModel {
    /// 1 / in-degree of the target.
    Wc = 0,
    /// Uniform draw from {0.1, 0.01, 0.001}.
    Tr = 1,
    /// Text already holds `u v p` lines.
    Explicit = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RslMode {
    Set = 0,
    Multiset = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RslCategory {
    Friendly = 0,
    Aware = 1,
    Free = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RslSpreadEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub runs: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RslExactSpread {
    pub spread: f64,
    pub host_spread: f64,
    pub set_size: usize,
    pub unique: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RslGreedyStep {
    pub k: usize,
    pub node: usize,
    pub multiplicity_after: u32,
    pub spread_mean: f64,
    pub spread_se: f64,
    pub raw_mean: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RslSaturationFit {
    pub sigma1: f64,
    pub sigma0: f64,
    pub k_min: usize,
    pub k_max: usize,
}

/// Opaque weighted graph.
pub struct RslGraph(WeightedGraph);

/// Opaque greedy curve.
pub struct RslCurve(GreedyCurve);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> RslStatus {
    match err {
        Error::Parse { .. } | Error::Json { .. } => RslStatus::Parse,
        Error::InvalidArgument(_) => RslStatus::InvalidArgument,
        Error::TooLarge { .. } => RslStatus::TooLarge,
        Error::UndefinedCorrelation(_) => RslStatus::Undefined,
        Error::Io { .. } => RslStatus::Io,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> RslStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => RslStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            RslStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            RslStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn as_slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Failure::Null(what))
    } else {
        Ok(slice::from_raw_parts(p, len))
    }
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn seeds_from(
    nodes: *const usize,
    mults: *const u32,
    len: usize,
) -> Result<SeedMultiset, Failure> {
    let nodes = as_slice(nodes, len, "nodes")?;
    let mults = as_slice(mults, len, "multiplicities")?;
    Ok(SeedMultiset::from_pairs(
        nodes.iter().copied().zip(mults.iter().copied()),
    )?)
}

fn into_handle<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rsl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a SNAP edge list and weights it.
///
/// With `RSL_WEIGHT_MODEL_TR` the draws use the same seed derivation as the
/// command-line tool for the given master `seed`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_graph_from_edge_list(
    text: *const c_char,
    model: RslWeightModel,
    undirected: bool,
    seed: u64,
    out: *mut *mut RslGraph,
) -> RslStatus {
    guard(|| {
        if text.is_null() {
            return Err(Failure::Null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Error::InvalidArgument("text is not UTF-8".into()))?;
        let graph = match model {
            RslWeightModel::Explicit => {
                let g = parse_weighted_edge_list(text, ParseOptions::default())?.graph;
                if undirected {
                    let mut edges: Vec<_> = g.edges().collect();
                    edges.extend(g.edges().map(|(u, v, p)| (v, u, p)));
                    WeightedGraph::from_edges(g.node_count(), edges)?
                } else {
                    g
                }
            }
            RslWeightModel::Wc | RslWeightModel::Tr => {
                let mut raw = parse_edge_list(text)?.graph;
                if undirected {
                    raw = raw.symmetrize();
                }
                if model == RslWeightModel::Wc {
                    assign_wc(&raw)
                } else {
                    assign_tr(&raw, derive_seed(seed, "tr"))
                }
            }
        };
        write_out(out, into_handle(RslGraph(graph)), "out")
    })
}

/// Star with core 0 and `n_leaves` leaves.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_graph_star(
    n_leaves: usize,
    p: f64,
    out: *mut *mut RslGraph,
) -> RslStatus {
    guard(|| write_out(out, into_handle(RslGraph(gen_star(n_leaves, p)?)), "out"))
}

/// Random directed graph; `edge_prob = 1` gives a clique.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_graph_random(
    n: usize,
    edge_prob: f64,
    p: f64,
    seed: u64,
    out: *mut *mut RslGraph,
) -> RslStatus {
    guard(|| {
        write_out(
            out,
            into_handle(RslGraph(gen_random(n, edge_prob, p, seed)?)),
            "out",
        )
    })
}

/// # Safety
/// `graph` must come from this library and not be freed already. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn rsl_graph_free(graph: *mut RslGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Node count, or 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsl_graph_node_count(graph: *const RslGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.node_count())
}

/// Edge count, or 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsl_graph_edge_count(graph: *const RslGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Monte Carlo spread of the multiset `{nodes[i]: multiplicities[i]}`.
/// `seed` is the Monte Carlo master seed.
///
/// # Safety
/// `nodes` and `multiplicities` must hold `len` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_estimate_spread(
    graph: *const RslGraph,
    nodes: *const usize,
    multiplicities: *const u32,
    len: usize,
    alpha: f64,
    runs: u64,
    seed: u64,
    out: *mut RslSpreadEstimate,
) -> RslStatus {
    guard(|| {
        let g = as_ref(graph, "graph")?;
        let seeds = seeds_from(nodes, multiplicities, len)?;
        let cfg = CascadeConfig::new(alpha, runs, seed)?;
        let e = estimate_spread(&g.0, &seeds, &cfg)?;
        write_out(
            out,
            RslSpreadEstimate {
                mean: e.mean,
                std_error: e.std_error,
                runs: e.runs,
            },
            "out",
        )
    })
}

/// Exact spread by enumeration; `RSL_STATUS_TOO_LARGE` past the edge guard.
///
/// # Safety
/// As for [`rsl_estimate_spread`].
#[no_mangle]
pub unsafe extern "C" fn rsl_exact_spread(
    graph: *const RslGraph,
    nodes: *const usize,
    multiplicities: *const u32,
    len: usize,
    alpha: f64,
    out: *mut RslExactSpread,
) -> RslStatus {
    guard(|| {
        let g = as_ref(graph, "graph")?;
        let seeds = seeds_from(nodes, multiplicities, len)?;
        let e = exact_spread(&g.0, &seeds, alpha)?;
        write_out(
            out,
            RslExactSpread {
                spread: e.spread,
                host_spread: e.host_spread,
                set_size: e.set_size,
                unique: e.unique,
            },
            "out",
        )
    })
}

/// Lazy greedy selection of `budget` seeds.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_greedy_select(
    graph: *const RslGraph,
    budget: usize,
    mode: RslMode,
    alpha: f64,
    runs: u64,
    seed: u64,
    out: *mut *mut RslCurve,
) -> RslStatus {
    guard(|| {
        let g = as_ref(graph, "graph")?;
        let mode = match mode {
            RslMode::Set => Mode::Set,
            RslMode::Multiset => Mode::Multiset,
        };
        let cfg = CascadeConfig::new(alpha, runs, seed)?;
        let curve = greedy_select(&g.0, budget, mode, &cfg)?;
        write_out(out, into_handle(RslCurve(curve)), "out")
    })
}

/// Number of steps, or 0 for NULL.
///
/// # Safety
/// `curve` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsl_curve_len(curve: *const RslCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.0.len())
}

/// Step at 0-based `index`.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_curve_step(
    curve: *const RslCurve,
    index: usize,
    out: *mut RslGreedyStep,
) -> RslStatus {
    guard(|| {
        let c = as_ref(curve, "curve")?;
        let s = c.0.steps.get(index).ok_or_else(|| {
            Error::InvalidArgument(format!("step {index} out of range for {} steps", c.0.len()))
        })?;
        write_out(
            out,
            RslGreedyStep {
                k: s.k,
                node: s.node,
                multiplicity_after: s.multiplicity_after,
                spread_mean: s.spread.mean,
                spread_se: s.spread.std_error,
                raw_mean: s.raw_mean,
            },
            "out",
        )
    })
}

/// # Safety
/// `curve` must come from this library and not be freed already. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn rsl_curve_free(curve: *mut RslCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Multiset over set greedy spread at budget `k`.
///
/// # Safety
/// Both curves must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_reselection_gain(
    simple: *const RslCurve,
    resel: *const RslCurve,
    k: usize,
    out: *mut f64,
) -> RslStatus {
    guard(|| {
        let rg = reselection_gain(&as_ref(simple, "simple")?.0, &as_ref(resel, "resel")?.0, k)?;
        write_out(out, rg, "out")
    })
}

/// Least-squares line through `(k, values[k - 1])` for `k` in `[k_min, k_max]`.
///
/// # Safety
/// `values` must hold `len` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_fit_saturation(
    values: *const f64,
    len: usize,
    k_min: usize,
    k_max: usize,
    out: *mut RslSaturationFit,
) -> RslStatus {
    guard(|| {
        let fit = fit_saturation_values(as_slice(values, len, "values")?, k_min, k_max)?;
        write_out(
            out,
            RslSaturationFit {
                sigma1: fit.sigma1,
                sigma0: fit.sigma0,
                k_min: fit.k_min,
                k_max: fit.k_max,
            },
            "out",
        )
    })
}

/// `(sigma1 + sigma0) / sigma1`; `RSL_STATUS_UNDEFINED` for a flat fit.
///
/// # Safety
/// `fit` must be readable; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_influence_saturation(
    fit: *const RslSaturationFit,
    out: *mut f64,
) -> RslStatus {
    guard(|| {
        let f = as_ref(fit, "fit")?;
        let fit = SaturationFit {
            sigma1: f.sigma1,
            sigma0: f.sigma0,
            k_min: f.k_min,
            k_max: f.k_max,
        };
        match influence_saturation(&fit) {
            Some(v) => write_out(out, v, "out"),
            None => {
                Err(Error::UndefinedCorrelation("flat curve has no saturation ratio".into()).into())
            }
        }
    })
}

#[no_mangle]
pub extern "C" fn rsl_categorize(rg: f64) -> RslCategory {
    match categorize(rg) {
        Category::Friendly => RslCategory::Friendly,
        Category::Aware => RslCategory::Aware,
        Category::Free => RslCategory::Free,
    }
}

/// Pearson correlation of two equal-length sequences.
///
/// # Safety
/// `xs` and `ys` must hold `len` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_pearson(
    xs: *const f64,
    ys: *const f64,
    len: usize,
    out: *mut f64,
) -> RslStatus {
    guard(|| {
        let r = pearson(as_slice(xs, len, "xs")?, as_slice(ys, len, "ys")?)?;
        write_out(out, r, "out")
    })
}

/// Single-node spreads of every node, highest first. Writes `node_count`
/// entries into each output buffer.
///
/// # Safety
/// `nodes_out` and `spreads_out` must have room for `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn rsl_rank_nodes(
    graph: *const RslGraph,
    runs: u64,
    seed: u64,
    nodes_out: *mut usize,
    spreads_out: *mut f64,
    capacity: usize,
) -> RslStatus {
    guard(|| {
        let g = as_ref(graph, "graph")?;
        if nodes_out.is_null() || spreads_out.is_null() {
            return Err(Failure::Null("output buffers"));
        }
        if capacity < g.0.node_count() {
            return Err(Error::InvalidArgument(format!(
                "capacity {capacity} below node count {}",
                g.0.node_count()
            ))
            .into());
        }
        let cfg = CascadeConfig::new(1.0, runs, seed)?;
        let ranking = single_node_spreads(&g.0, &cfg, None)?;
        for (i, (v, e)) in ranking.entries.iter().enumerate() {
            nodes_out.add(i).write(*v);
            spreads_out.add(i).write(e.mean);
        }
        Ok(())
    })
}

/// `HR_k` of a ranking given as spreads sorted highest first.
///
/// # Safety
/// `spreads` must hold `len` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rsl_hub_ratio(
    spreads: *const f64,
    len: usize,
    k: usize,
    out: *mut f64,
) -> RslStatus {
    guard(|| {
        let spreads = as_slice(spreads, len, "spreads")?;
        let ranking = NodeSpreadRanking {
            entries: spreads
                .iter()
                .enumerate()
                .map(|(i, &s)| (i, reselect::cascade::SpreadEstimate::exact(s)))
                .collect(),
        };
        write_out(out, hub_ratio(&ranking, k)?, "out")
    })
}
