//! Clusters, seed sets, conductance, and the sweep cut.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::embedding::SparseEmbedding;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Tolerance for comparing conductances on graphs with non-integer weights.
pub const WEIGHTED_TOLERANCE: f64 = 1e-12;

/// A vertex set with cached cut, volume, and conductance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cluster {
    members: Vec<u32>,
    cut: f64,
    volume: f64,
    conductance: f64,
}

impl Cluster {
    /// Builds a cluster by direct edge scan. Rejects duplicates, out-of-range
    /// ids, the empty set, the full vertex set, and sets whose conductance is
    /// undefined.
    pub fn from_set(g: &Graph, set: &[u32]) -> Result<Cluster> {
        let mut members = set.to_vec();
        members.sort_unstable();
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        validate_members(g, &members)?;
        Self::from_sorted_unchecked(g, members)
    }

    /// `members` must be sorted, duplicate free, and in range.
    pub(crate) fn from_sorted_unchecked(g: &Graph, members: Vec<u32>) -> Result<Cluster> {
        let (cut, volume) = cut_and_volume(g, &members);
        let conductance = ratio(g, cut, volume)?;
        Ok(Cluster {
            members,
            cut,
            volume,
            conductance,
        })
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn into_members(self) -> Vec<u32> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn cut(&self) -> f64 {
        self.cut
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn conductance(&self) -> f64 {
        self.conductance
    }

    /// The smaller side's volume, the denominator of the conductance.
    pub fn denominator(&self, g: &Graph) -> f64 {
        self.volume.min(g.total_volume() - self.volume)
    }

    /// Compares conductances, exactly on integer-weighted graphs.
    pub fn cmp_conductance(&self, other: &Cluster, g: &Graph) -> Ordering {
        cmp_ratio(
            g,
            (self.cut, self.denominator(g)),
            (other.cut, other.denominator(g)),
        )
    }

    /// True when the cached values match a fresh recomputation.
    pub fn verify(&self, g: &Graph) -> bool {
        match Cluster::from_set(g, &self.members) {
            Ok(c) => c == *self,
            Err(_) => false,
        }
    }

    /// The other side of the cut.
    pub fn complement(&self, g: &Graph) -> Result<Cluster> {
        let rest: Vec<u32> = (0..g.n() as u32).filter(|&v| !self.contains(v)).collect();
        validate_members(g, &rest)?;
        Cluster::from_sorted_unchecked(g, rest)
    }

    /// One id per line.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        for v in &self.members {
            writeln!(out, "{v}")?;
        }
        Ok(())
    }
}

/// Reads whitespace-separated vertex ids; `#` starts a comment line.
pub fn read_vertex_list<R: BufRead>(reader: R) -> Result<Vec<u64>> {
    let mut ids = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            ids.push(tok.parse::<u64>().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("bad vertex id `{tok}`"),
            })?);
        }
    }
    Ok(ids)
}

fn validate_members(g: &Graph, members: &[u32]) -> Result<()> {
    if members.is_empty() {
        return Err(Error::Domain("empty set"));
    }
    if let Some(&v) = members.iter().find(|&&v| v as usize >= g.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: v as u64,
            n: g.n(),
        });
    }
    if members.len() == g.n() {
        return Err(Error::Domain("set contains every vertex"));
    }
    Ok(())
}

/// Cut and volume of a sorted member list by direct scan.
fn cut_and_volume(g: &Graph, members: &[u32]) -> (f64, f64) {
    let mut cut = 0.0;
    let mut volume = 0.0;
    for &v in members {
        volume += g.degree(v);
        for (u, w) in g.adjacent(v) {
            if members.binary_search(&u).is_err() {
                cut += w;
            }
        }
    }
    (cut, volume)
}

fn ratio(g: &Graph, cut: f64, volume: f64) -> Result<f64> {
    let denom = volume.min(g.total_volume() - volume);
    if denom <= 0.0 {
        return Err(Error::Domain("zero volume on one side"));
    }
    Ok(cut / denom)
}

/// Conductance `cut(S) / min(vol(S), vol(V) - vol(S))`. Duplicates in `set`
/// are ignored.
pub fn conductance(g: &Graph, set: &[u32]) -> Result<f64> {
    let mut members = set.to_vec();
    members.sort_unstable();
    members.dedup();
    validate_members(g, &members)?;
    let (cut, volume) = cut_and_volume(g, &members);
    ratio(g, cut, volume)
}

/// Compares `a.0 / a.1` with `b.0 / b.1`. Exact cross-multiplication on
/// integer-weighted graphs, otherwise floats equal within [`WEIGHTED_TOLERANCE`].
pub(crate) fn cmp_ratio(g: &Graph, a: (f64, f64), b: (f64, f64)) -> Ordering {
    if g.has_integer_weights() {
        let lhs = a.0 as u128 * b.1 as u128;
        let rhs = b.0 as u128 * a.1 as u128;
        lhs.cmp(&rhs)
    } else {
        let (x, y) = (a.0 / a.1, b.0 / b.1);
        if (x - y).abs() <= WEIGHTED_TOLERANCE {
            Ordering::Equal
        } else {
            x.partial_cmp(&y).unwrap_or(Ordering::Equal)
        }
    }
}

/// Nonempty, duplicate-free, in-range seeds of positive degree, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeedSet {
    seeds: Vec<u32>,
}

impl SeedSet {
    pub fn new(g: &Graph, seeds: &[u64]) -> Result<SeedSet> {
        if seeds.is_empty() {
            return Err(Error::InvalidParameter("seed set is empty".into()));
        }
        let mut out = Vec::with_capacity(seeds.len());
        for &s in seeds {
            let v = g.check_vertex(s)?;
            if g.degree(v) <= 0.0 {
                return Err(Error::ZeroDegreeSeed(v));
            }
            out.push(v);
        }
        out.sort_unstable();
        for w in out.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        Ok(SeedSet { seeds: out })
    }

    pub fn single(g: &Graph, seed: u32) -> Result<SeedSet> {
        SeedSet::new(g, &[seed as u64])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.seeds
    }

    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.seeds.binary_search(&v).is_ok()
    }
}

/// One prefix of a sweep ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub size: usize,
    pub volume: f64,
    pub cut: f64,
}

impl SweepPoint {
    pub fn conductance(&self, g: &Graph) -> f64 {
        self.cut / self.volume.min(g.total_volume() - self.volume)
    }
}

/// The full sweep: vertex order and the statistics of every valid prefix.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub order: Vec<u32>,
    /// `points[i]` describes the prefix `order[..=i]`; `None` when that prefix
    /// is not a strict subset with positive volume on both sides.
    pub points: Vec<Option<SweepPoint>>,
}

impl Sweep {
    /// Builds the cluster for prefix `order[..size]`.
    pub fn cluster(&self, g: &Graph, size: usize) -> Result<Cluster> {
        let mut members = self.order[..size].to_vec();
        members.sort_unstable();
        Cluster::from_sorted_unchecked(g, members)
    }

    /// Index of the minimum-conductance prefix; ties go to the shorter one.
    pub fn best(&self, g: &Graph) -> Option<usize> {
        let mut best: Option<(usize, SweepPoint)> = None;
        for (i, p) in self.points.iter().enumerate() {
            let Some(p) = p else { continue };
            let better = match &best {
                None => true,
                Some((_, b)) => sweep_cmp(g, p, b) == Ordering::Less,
            };
            if better {
                best = Some((i, *p));
            }
        }
        best.map(|(i, _)| i)
    }
}

pub(crate) fn sweep_cmp(g: &Graph, a: &SweepPoint, b: &SweepPoint) -> Ordering {
    let total = g.total_volume();
    cmp_ratio(
        g,
        (a.cut, a.volume.min(total - a.volume)),
        (b.cut, b.volume.min(total - b.volume)),
    )
}

/// Orders the support of `x` by `x(v) / deg(v)` descending, ties by ascending
/// id, and records cut and volume of every prefix. Degree-zero vertices are
/// skipped.
pub fn sweep_profile(g: &Graph, x: &SparseEmbedding) -> Result<Sweep> {
    let mut order: Vec<(u32, f64)> = x
        .iter()
        .filter(|&(v, val)| val > 0.0 && (v as usize) < g.n() && g.degree(v) > 0.0)
        .map(|(v, val)| (v, val / g.degree(v)))
        .collect();
    if order.is_empty() {
        return Err(Error::EmptyEmbedding);
    }
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let order: Vec<u32> = order.into_iter().map(|(v, _)| v).collect();

    let rank: HashMap<u32, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let total = g.total_volume();
    let mut volume = 0.0;
    let mut cut = 0.0;
    let mut points = Vec::with_capacity(order.len());
    for (i, &v) in order.iter().enumerate() {
        let mut inside = 0.0;
        for (u, w) in g.adjacent(v) {
            if rank.get(&u).is_some_and(|&r| r < i) {
                inside += w;
            }
        }
        let d = g.degree(v);
        volume += d;
        cut += d - 2.0 * inside;
        let size = i + 1;
        let valid = size < g.n() && volume > 0.0 && total - volume > 0.0;
        points.push(valid.then_some(SweepPoint {
            size,
            volume,
            cut: cut.max(0.0),
        }));
    }
    Ok(Sweep { order, points })
}

/// Minimum-conductance prefix of the degree-normalized ordering of `x`.
pub fn sweep_cut(g: &Graph, x: &SparseEmbedding) -> Result<Cluster> {
    let sweep = sweep_profile(g, x)?;
    let best = sweep
        .best(g)
        .ok_or(Error::Domain("no sweep prefix is a strict subset"))?;
    sweep.cluster(g, best + 1)
}
