//! SNAP-style edge lists.
//!
//! Unweighted files hold one `u v` pair per line, weighted files `u v p`.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use super::{NodeId, RawGraph, WeightedGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Fixes the node count and keeps ids verbatim, allowing isolated
    /// trailing nodes. Without it, ids are compacted to `[0, distinct)`.
    pub node_count: Option<usize>,
}

/// Translation between file ids and dense internal ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    original: Vec<u64>,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        IdMap {
            original: (0..n as u64).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.original
            .iter()
            .enumerate()
            .all(|(i, &o)| o == i as u64)
    }

    pub fn original(&self, internal: NodeId) -> u64 {
        self.original[internal]
    }

    pub fn internal(&self, original: u64) -> Option<NodeId> {
        self.original.binary_search(&original).ok()
    }

    pub fn len(&self) -> usize {
        self.original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Parsed<G> {
    pub graph: G,
    pub ids: IdMap,
}

pub fn parse_edge_list(text: &str) -> Result<Parsed<RawGraph>> {
    parse_edge_list_with(text, ParseOptions::default())
}

pub fn parse_edge_list_with(text: &str, opts: ParseOptions) -> Result<Parsed<RawGraph>> {
    let mut pairs = Vec::new();
    for (line_no, fields) in records(text) {
        let [u, v] = fields_exact::<2>(line_no, &fields)?;
        pairs.push((parse_id(line_no, u)?, parse_id(line_no, v)?, line_no));
    }
    let (node_count, ids, translate) =
        id_space(pairs.iter().flat_map(|&(u, v, l)| [(u, l), (v, l)]), opts)?;
    let edges = pairs
        .into_iter()
        .map(|(u, v, _)| (translate(u), translate(v)))
        .collect();
    Ok(Parsed {
        graph: RawGraph::new(node_count, edges)?,
        ids,
    })
}

pub fn parse_weighted_edge_list(text: &str, opts: ParseOptions) -> Result<Parsed<WeightedGraph>> {
    let mut triples = Vec::new();
    for (line_no, fields) in records(text) {
        let [u, v, p] = fields_exact::<3>(line_no, &fields)?;
        let p: f64 = p
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid probability {p:?}")))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::parse(
                line_no,
                format!("probability {p} outside [0, 1]"),
            ));
        }
        triples.push((parse_id(line_no, u)?, parse_id(line_no, v)?, p, line_no));
    }
    let (node_count, ids, translate) = id_space(
        triples.iter().flat_map(|&(u, v, _, l)| [(u, l), (v, l)]),
        opts,
    )?;
    let edges = triples
        .into_iter()
        .map(|(u, v, p, _)| (translate(u), translate(v), p))
        .collect();
    Ok(Parsed {
        graph: WeightedGraph::from_edges(node_count, edges)?,
        ids,
    })
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn fields_exact<'a, const N: usize>(line: usize, fields: &[&'a str]) -> Result<[&'a str; N]> {
    <[&str; N]>::try_from(fields)
        .map_err(|_| Error::parse(line, format!("expected {N} fields, found {}", fields.len())))
}

fn parse_id(line: usize, s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("invalid node id {s:?}")))
}

type Translate = Box<dyn Fn(u64) -> NodeId>;

fn id_space(
    ids: impl Iterator<Item = (u64, usize)>,
    opts: ParseOptions,
) -> Result<(usize, IdMap, Translate)> {
    match opts.node_count {
        Some(n) => {
            for (id, line) in ids {
                if id >= n as u64 {
                    return Err(Error::parse(
                        line,
                        format!("node id {id} >= node count {n}"),
                    ));
                }
            }
            Ok((n, IdMap::identity(n), Box::new(|id| id as NodeId)))
        }
        None => {
            let mut seen: Vec<u64> = ids.map(|(id, _)| id).collect();
            seen.sort_unstable();
            seen.dedup();
            let map = IdMap { original: seen };
            let n = map.len();
            if map.is_identity() {
                Ok((n, map, Box::new(|id| id as NodeId)))
            } else {
                let lookup = map.clone();
                Ok((
                    n,
                    map,
                    Box::new(move |id| lookup.internal(id).expect("id collected above")),
                ))
            }
        }
    }
}

pub fn write_edge_list(g: &RawGraph) -> String {
    let mut out = String::with_capacity(g.edge_count() * 8);
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// `u v p` lines; probabilities use the shortest representation that parses
/// back to the same `f64`.
pub fn write_weighted_edge_list(g: &WeightedGraph) -> String {
    let mut out = String::with_capacity(g.edge_count() * 12);
    for (u, v, p) in g.edges() {
        let _ = writeln!(out, "{u} {v} {p}");
    }
    out
}

pub fn write_id_map_csv(ids: &IdMap) -> String {
    let mut out = String::from("original_id,internal_id\n");
    for (i, o) in ids.original.iter().enumerate() {
        let _ = writeln!(out, "{o},{i}");
    }
    out
}
