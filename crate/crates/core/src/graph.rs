//! Immutable undirected graph in compressed adjacency form, plus edge-list
//! ingestion and serialization.
//!
//! Adjacency lists are sorted by neighbor id. Unweighted graphs store no
//! weight array at all, so memory is one `u32` per adjacency entry plus
//! per-vertex offsets and degrees.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Largest integer that an `f64` represents exactly.
const EXACT_F64_INT: f64 = 9_007_199_254_740_992.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    /// `None` means every edge has weight 1.
    weights: Option<Vec<f64>>,
    degrees: Vec<f64>,
    total_volume: f64,
    integral: bool,
}

/// Options for [`load_edge_list`] and [`parse_edge_list`].
#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Read a third column as the edge weight. When false a third column is
    /// ignored and duplicate edges collapse to weight 1.
    pub weighted: bool,
    pub comment_prefix: String,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            weighted: false,
            comment_prefix: "#".to_string(),
        }
    }
}

impl Graph {
    /// Builds an unweighted graph on `n` vertices. Self-loops are dropped and
    /// repeated edges collapse to a single unit-weight edge.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        build(n, edges, None)
    }

    /// Builds a weighted graph on `n` vertices. Self-loops are dropped and
    /// repeated edges have their weights summed.
    pub fn from_weighted_edges(n: usize, edges: &[(u32, u32, f64)]) -> Result<Graph> {
        for (i, &(_, _, w)) in edges.iter().enumerate() {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidWeight {
                    line: i + 1,
                    weight: w,
                });
            }
        }
        let pairs: Vec<(u32, u32)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let weights: Vec<f64> = edges.iter().map(|&(_, _, w)| w).collect();
        build(n, &pairs, Some(&weights))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: u32) -> f64 {
        self.degrees[v as usize]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Weights aligned with [`Graph::neighbors`], or `None` for a unit-weight graph.
    #[inline]
    pub fn neighbor_weights(&self, v: u32) -> Option<&[f64]> {
        let v = v as usize;
        self.weights
            .as_ref()
            .map(|w| &w[self.offsets[v]..self.offsets[v + 1]])
    }

    /// Iterates `(neighbor, weight)` pairs of `v`.
    #[inline]
    pub fn adjacent(&self, v: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        let nbrs = self.neighbors(v);
        let wts = self.neighbor_weights(v);
        nbrs.iter()
            .enumerate()
            .map(move |(i, &u)| (u, wts.map_or(1.0, |w| w[i])))
    }

    /// Weight of edge `{u, v}`, zero when absent.
    pub fn edge_weight(&self, u: u32, v: u32) -> f64 {
        match self.neighbors(u).binary_search(&v) {
            Ok(i) => self.neighbor_weights(u).map_or(1.0, |w| w[i]),
            Err(_) => 0.0,
        }
    }

    /// Sum of all degrees, twice the total edge weight.
    #[inline]
    pub fn total_volume(&self) -> f64 {
        self.total_volume
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// True when every weight is an integer, so cuts and volumes are exact.
    pub fn has_integer_weights(&self) -> bool {
        self.integral
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Undirected edges `(u, v, w)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.adjacent(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// Bytes held by the adjacency structure.
    pub fn memory_bytes(&self) -> usize {
        self.offsets.capacity() * std::mem::size_of::<usize>()
            + self.neighbors.capacity() * std::mem::size_of::<u32>()
            + self.weights.as_ref().map_or(0, |w| w.capacity() * 8)
            + self.degrees.capacity() * 8
    }

    pub fn check_vertex(&self, v: u64) -> Result<u32> {
        if (v as usize) < self.n() && v <= u32::MAX as u64 {
            Ok(v as u32)
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Vertex ids of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n() as u32;
        let n = self.n() + other.n();
        if self.is_weighted() || other.is_weighted() {
            let edges: Vec<(u32, u32, f64)> = self
                .edges()
                .chain(other.edges().map(|(u, v, w)| (u + shift, v + shift, w)))
                .collect();
            Graph::from_weighted_edges(n, &edges)
        } else {
            let edges: Vec<(u32, u32)> = self
                .edges()
                .map(|(u, v, _)| (u, v))
                .chain(other.edges().map(|(u, v, _)| (u + shift, v + shift)))
                .collect();
            Graph::from_edges(n, &edges)
        }
    }

    /// Writes one `u v` (or `u v w`) line per undirected edge with `u < v`.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, v, w) in self.edges() {
            if self.is_weighted() {
                writeln!(out, "{u} {v} {w}")?;
            } else {
                writeln!(out, "{u} {v}")?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

fn build(n: usize, edges: &[(u32, u32)], weights: Option<&[f64]>) -> Result<Graph> {
    if n > u32::MAX as usize {
        return Err(Error::InvalidParameter(format!(
            "{n} vertices exceeds the u32 id space"
        )));
    }
    let mut counts = vec![0usize; n + 1];
    for &(u, v) in edges {
        for x in [u, v] {
            if x as usize >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: x as u64,
                    n,
                });
            }
        }
        if u != v {
            counts[u as usize + 1] += 1;
            counts[v as usize + 1] += 1;
        }
    }
    for i in 0..n {
        counts[i + 1] += counts[i];
    }
    let mut offsets = counts;
    let total = offsets[n];
    let mut nbrs = vec![0u32; total];
    let mut wts = weights.map(|_| vec![0.0f64; total]);
    {
        let mut cursor = offsets.clone();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                continue;
            }
            for (a, b) in [(u, v), (v, u)] {
                let slot = cursor[a as usize];
                nbrs[slot] = b;
                if let (Some(w), Some(src)) = (wts.as_mut(), weights) {
                    w[slot] = src[i];
                }
                cursor[a as usize] += 1;
            }
        }
    }

    // Sort each list and merge repeats, compacting in place.
    let mut write = 0usize;
    let mut scratch: Vec<(u32, f64)> = Vec::new();
    for v in 0..n {
        let (lo, hi) = (offsets[v], offsets[v + 1]);
        offsets[v] = write;
        match wts.as_mut() {
            None => {
                nbrs[lo..hi].sort_unstable();
                let mut prev = None;
                for i in lo..hi {
                    let x = nbrs[i];
                    if prev != Some(x) {
                        nbrs[write] = x;
                        write += 1;
                        prev = Some(x);
                    }
                }
            }
            Some(w) => {
                scratch.clear();
                scratch.extend((lo..hi).map(|i| (nbrs[i], w[i])));
                // Stable so that summation order of repeated edges follows input order.
                scratch.sort_by_key(|&(x, _)| x);
                let mut prev = None;
                for &(x, wt) in &scratch {
                    if prev == Some(x) {
                        w[write - 1] += wt;
                    } else {
                        nbrs[write] = x;
                        w[write] = wt;
                        write += 1;
                        prev = Some(x);
                    }
                }
            }
        }
    }
    offsets[n] = write;
    nbrs.truncate(write);
    nbrs.shrink_to_fit();
    if let Some(w) = wts.as_mut() {
        w.truncate(write);
        w.shrink_to_fit();
    }
    if write == 0 {
        return Err(Error::EmptyGraph);
    }

    let mut degrees = vec![0.0f64; n];
    let mut integral = true;
    for v in 0..n {
        let (lo, hi) = (offsets[v], offsets[v + 1]);
        degrees[v] = match wts.as_ref() {
            None => (hi - lo) as f64,
            Some(w) => w[lo..hi].iter().sum(),
        };
    }
    if let Some(w) = wts.as_ref() {
        integral = w.iter().all(|&x| x.fract() == 0.0 && x < EXACT_F64_INT);
    }
    let total_volume = degrees.iter().sum::<f64>();
    if total_volume >= EXACT_F64_INT {
        integral = false;
    }
    Ok(Graph {
        offsets,
        neighbors: nbrs,
        weights: wts,
        degrees,
        total_volume,
        integral,
    })
}

/// Reads an edge list from disk. See [`parse_edge_list`].
pub fn load_edge_list<P: AsRef<Path>>(path: P, options: &LoadOptions) -> Result<Graph> {
    let file = File::open(path)?;
    parse_edge_list(BufReader::new(file), options)
}

/// Parses whitespace-separated `u v [w]` lines. Vertex count is one more than
/// the largest id seen; gap ids become isolated vertices.
pub fn parse_edge_list<R: BufRead>(reader: R, options: &LoadOptions) -> Result<Graph> {
    let raw = read_raw(reader, options)?;
    let n = raw.max_id.map_or(0, |m| m as usize + 1);
    finish(n, raw)
}

/// Like [`load_edge_list`] but remaps ids to `0..k` in ascending order of the
/// original id. Returns the graph and `mapping[new] = original`.
pub fn load_edge_list_compact<P: AsRef<Path>>(
    path: P,
    options: &LoadOptions,
) -> Result<(Graph, Vec<u64>)> {
    let file = File::open(path)?;
    parse_edge_list_compact(BufReader::new(file), options)
}

pub fn parse_edge_list_compact<R: BufRead>(
    reader: R,
    options: &LoadOptions,
) -> Result<(Graph, Vec<u64>)> {
    let mut raw = read_raw(reader, options)?;
    let mut ids: Vec<u32> = raw.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    for e in raw.edges.iter_mut() {
        // ids contains every endpoint.
        e.0 = ids.binary_search(&e.0).unwrap() as u32;
        e.1 = ids.binary_search(&e.1).unwrap() as u32;
    }
    let n = ids.len();
    let graph = finish(n, raw)?;
    Ok((graph, ids.into_iter().map(u64::from).collect()))
}

struct RawEdges {
    edges: Vec<(u32, u32)>,
    weights: Option<Vec<f64>>,
    max_id: Option<u32>,
}

fn finish(n: usize, raw: RawEdges) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    build(n, &raw.edges, raw.weights.as_deref())
}

fn read_raw<R: BufRead>(mut reader: R, options: &LoadOptions) -> Result<RawEdges> {
    let mut edges = Vec::new();
    let mut weights = options.weighted.then(Vec::new);
    let mut max_id: Option<u32> = None;
    let mut line = String::new();
    let mut lineno = 0usize;
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            break;
        }
        lineno += 1;
        let text = line.trim();
        if text.is_empty()
            || (!options.comment_prefix.is_empty() && text.starts_with(&options.comment_prefix))
        {
            continue;
        }
        let mut fields = text.split_whitespace();
        let u = parse_id(fields.next(), lineno)?;
        let v = parse_id(fields.next(), lineno)?;
        let w = fields.next();
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "expected `u v` or `u v w`".into(),
            });
        }
        if let Some(ws) = weights.as_mut() {
            let w = match w {
                Some(tok) => tok.parse::<f64>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("bad weight `{tok}`"),
                })?,
                None => 1.0,
            };
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidWeight {
                    line: lineno,
                    weight: w,
                });
            }
            ws.push(w);
        }
        max_id = max_id.max(Some(u.max(v)));
        edges.push((u, v));
    }
    Ok(RawEdges {
        edges,
        weights,
        max_id,
    })
}

fn parse_id(tok: Option<&str>, line: usize) -> Result<u32> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        message: "expected two vertex ids".into(),
    })?;
    match tok.parse::<u32>() {
        Ok(id) if id < u32::MAX => Ok(id),
        _ => Err(Error::Parse {
            line,
            message: format!("bad vertex id `{tok}`"),
        }),
    }
}
