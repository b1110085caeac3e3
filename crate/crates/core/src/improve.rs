//! Flow-based cluster improvement: MQI, FlowImprove, and SimpleLocal.
//!
//! Every method repeatedly solves a min-cut problem whose capacities are the
//! rational objective cleared to integers, so every comparison is exact.
//! Graphs must have integer edge weights.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::flow::{max_flow, FlowNetwork};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImproveResult {
    #[serde(flatten)]
    pub cluster: Cluster,
    /// Max-flow rounds, including the final one that certified no improvement.
    pub iterations: usize,
    /// Conductance of the input followed by every strict improvement.
    #[serde(rename = "trace")]
    pub conductance_trace: Vec<f64>,
    /// The input held more than half the volume and was replaced by its complement.
    pub complemented: bool,
    /// Distinct vertices placed in a flow network.
    pub touched: usize,
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::CapacityOverflow)
}

fn int(x: f64) -> i64 {
    x as i64
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

fn reduce(num: i64, den: i64) -> (i64, i64) {
    let d = gcd(num, den).max(1);
    (num / d, den / d)
}

/// Best rational approximation of `x >= 0` with denominator at most 10^6.
pub(crate) fn to_rational(x: f64) -> Result<(i64, i64)> {
    if !(0.0..1e15).contains(&x) {
        return Err(Error::InvalidParameter(format!(
            "{x} is not a usable nonnegative rational"
        )));
    }
    const MAX_DEN: i64 = 1_000_000;
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rest = x;
    loop {
        let a = rest.floor();
        let ai = a as i64;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > MAX_DEN {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a;
        if frac < 1e-12 || (h1 as f64 / k1 as f64 - x).abs() <= 1e-15 * x.max(1.0) {
            break;
        }
        rest = 1.0 / frac;
    }
    Ok(reduce(h1, k1))
}

/// Validates weights and brings the input to the smaller-volume side.
fn prepare(g: &Graph, a: &Cluster) -> Result<(Cluster, bool)> {
    if !g.has_integer_weights() {
        return Err(Error::NonIntegerWeights);
    }
    if !a.verify(g) {
        return Err(Error::InvalidParameter(
            "cluster statistics do not match the graph".into(),
        ));
    }
    if 2.0 * a.volume() > g.total_volume() {
        log::warn!(
            "cluster holds {} of {} volume; improving its complement",
            a.volume(),
            g.total_volume()
        );
        Ok((a.complement(g)?, true))
    } else {
        Ok((a.clone(), false))
    }
}

/// Max-flow Quotient-cut Improvement: the minimum-conductance nonempty subset
/// of `a`. Each round builds a network over the current set `S` with cut `c`
/// and volume `vol`: source to `v` with capacity `c * deg(v)`, `v` to sink
/// with `vol * (weight from v to outside S)`, and internal edges at
/// `vol * w`. A flow below `c * vol` certifies that the source side has
/// strictly smaller conductance.
pub fn mqi(g: &Graph, a: &Cluster) -> Result<ImproveResult> {
    let (start, complemented) = prepare(g, a)?;
    let mut current = start;
    let mut trace = vec![current.conductance()];
    let mut iterations = 0;
    let touched = current.len();
    loop {
        iterations += 1;
        let members = current.members();
        let k = members.len();
        let (source, sink) = (k, k + 1);
        let c = int(current.cut());
        let vol = int(current.volume());
        let mut net = FlowNetwork::new(k + 2, source, sink);
        for (i, &v) in members.iter().enumerate() {
            net.add_arc(source, i, checked_mul(c, int(g.degree(v)))?)?;
            let mut boundary = 0i64;
            for (u, w) in g.adjacent(v) {
                match members.binary_search(&u) {
                    Ok(j) if j > i => {
                        net.add_edge(i, j, checked_mul(vol, int(w))?)?;
                    }
                    Ok(_) => {}
                    Err(_) => boundary += int(w),
                }
            }
            if boundary > 0 {
                net.add_arc(i, sink, checked_mul(vol, boundary)?)?;
            }
        }
        let flow = max_flow(&mut net);
        if flow.value >= checked_mul(c, vol)? {
            break;
        }
        let subset: Vec<u32> = flow
            .source_side
            .iter()
            .filter(|&&i| i < k)
            .map(|&i| members[i])
            .collect();
        let next = Cluster::from_sorted_unchecked(g, subset)?;
        debug_assert!(next.cmp_conductance(&current, g).is_lt());
        trace.push(next.conductance());
        current = next;
    }
    Ok(ImproveResult {
        cluster: current,
        iterations,
        conductance_trace: trace,
        complemented,
        touched,
    })
}

/// The relative-quotient objective `cut(S) / (vol(S ∩ A) - e * vol(S \ A))`
/// with `e = penalty.0 / penalty.1`.
struct Quotient<'a> {
    reference: &'a Cluster,
    penalty: (i64, i64),
}

impl Quotient<'_> {
    /// Denominator scaled by `penalty.1`.
    fn scaled_denominator(&self, g: &Graph, s: &Cluster) -> Result<i64> {
        let mut inside = 0i64;
        let mut outside = 0i64;
        for &v in s.members() {
            if self.reference.contains(v) {
                inside += int(g.degree(v));
            } else {
                outside += int(g.degree(v));
            }
        }
        let (en, ed) = self.penalty;
        checked_mul(inside, ed)?
            .checked_sub(checked_mul(en, outside)?)
            .ok_or(Error::CapacityOverflow)
    }
}

/// Capacities for one round at current set `s`: (edge scale, source scale for
/// members of A, sink scale for non-members, threshold).
struct RoundCaps {
    edge: i64,
    source: i64,
    sink: i64,
    threshold: i64,
}

fn round_caps(g: &Graph, q: &Quotient, s: &Cluster) -> Result<RoundCaps> {
    let (en, ed) = q.penalty;
    let c = int(s.cut());
    let d = q.scaled_denominator(g, s)?;
    debug_assert!(d > 0);
    Ok(RoundCaps {
        edge: d,
        source: checked_mul(c, ed)?,
        sink: checked_mul(c, en)?,
        threshold: checked_mul(checked_mul(c, ed)?, int(q.reference.volume()))?,
    })
}

struct Tracker {
    best: Cluster,
    trace: Vec<f64>,
}

impl Tracker {
    fn offer(&mut self, g: &Graph, s: &Cluster) {
        if s.cmp_conductance(&self.best, g).is_lt() {
            self.best = s.clone();
            self.trace.push(s.conductance());
        }
    }
}

/// FlowImprove over the whole graph: minimizes
/// `cut(S) / (vol(S ∩ A) - θ vol(S \ A))` with `θ = vol(A) / (vol(V) - vol(A))`
/// and returns the lowest-conductance set met along the way.
pub fn flow_improve(g: &Graph, a: &Cluster) -> Result<ImproveResult> {
    let (reference, complemented) = prepare(g, a)?;
    let va = int(reference.volume());
    let vb = int(g.total_volume()) - va;
    let quotient = Quotient {
        reference: &reference,
        penalty: reduce(va, vb),
    };
    let n = g.n();
    let (source, sink) = (n, n + 1);
    let mut current = reference.clone();
    let mut tracker = Tracker {
        best: reference.clone(),
        trace: vec![reference.conductance()],
    };
    let mut iterations = 0;
    loop {
        iterations += 1;
        let caps = round_caps(g, &quotient, &current)?;
        let mut net = FlowNetwork::new(n + 2, source, sink);
        for v in 0..n as u32 {
            let deg = int(g.degree(v));
            if reference.contains(v) {
                net.add_arc(source, v as usize, checked_mul(caps.source, deg)?)?;
            } else {
                net.add_arc(v as usize, sink, checked_mul(caps.sink, deg)?)?;
            }
            for (u, w) in g.adjacent(v) {
                if u > v {
                    net.add_edge(v as usize, u as usize, checked_mul(caps.edge, int(w))?)?;
                }
            }
        }
        let flow = max_flow(&mut net);
        if flow.value >= caps.threshold {
            break;
        }
        let set: Vec<u32> = flow
            .source_side
            .iter()
            .filter(|&&i| i < n)
            .map(|&i| i as u32)
            .collect();
        current = Cluster::from_sorted_unchecked(g, set)?;
        tracker.offer(g, &current);
    }
    Ok(ImproveResult {
        cluster: tracker.best,
        iterations,
        conductance_trace: tracker.trace,
        complemented,
        touched: n,
    })
}

/// SimpleLocal: the FlowImprove objective with penalty `θ + delta` on volume
/// outside `A`, solved on a neighborhood of `A` that grows only when the local
/// flow would overfill a vertex outside it. `delta = 0` gives FlowImprove's
/// answer; large `delta` keeps the result inside `A`.
pub fn simple_local(g: &Graph, a: &Cluster, delta: f64) -> Result<ImproveResult> {
    let (reference, complemented) = prepare(g, a)?;
    let (dn, dd) = to_rational(delta)?;
    let va = int(reference.volume());
    let vb = int(g.total_volume()) - va;
    // θ + δ = (va * dd + dn * vb) / (vb * dd)
    let en = checked_mul(va, dd)?
        .checked_add(checked_mul(dn, vb)?)
        .ok_or(Error::CapacityOverflow)?;
    let ed = checked_mul(vb, dd)?;
    let quotient = Quotient {
        reference: &reference,
        penalty: reduce(en, ed),
    };

    let mut local: BTreeSet<u32> = reference.members().iter().copied().collect();
    let mut touched: BTreeSet<u32> = local.clone();
    let mut current = reference.clone();
    let mut tracker = Tracker {
        best: reference.clone(),
        trace: vec![reference.conductance()],
    };
    let mut iterations = 0;
    loop {
        let caps = round_caps(g, &quotient, &current)?;
        let (set, value) = loop {
            iterations += 1;
            let solved = solve_local(g, &reference, &local, &caps)?;
            touched.extend(solved.boundary.iter().copied());
            if solved.overfull.is_empty() {
                break (solved.source_side, solved.value);
            }
            local.extend(solved.overfull);
        };
        if value >= caps.threshold {
            break;
        }
        current = Cluster::from_sorted_unchecked(g, set)?;
        tracker.offer(g, &current);
    }
    Ok(ImproveResult {
        cluster: tracker.best,
        iterations,
        conductance_trace: tracker.trace,
        complemented,
        touched: touched.len(),
    })
}

struct LocalSolve {
    value: i64,
    source_side: Vec<u32>,
    boundary: Vec<u32>,
    /// Boundary vertices whose inflow exceeds their true sink capacity.
    overfull: Vec<u32>,
}

/// One min-cut on `local` plus its outer boundary. Boundary vertices drain to
/// the sink without limit; the solution is exact for the whole graph when no
/// boundary vertex receives more than its true sink capacity.
fn solve_local(
    g: &Graph,
    reference: &Cluster,
    local: &BTreeSet<u32>,
    caps: &RoundCaps,
) -> Result<LocalSolve> {
    let mut index: HashMap<u32, usize> = HashMap::with_capacity(local.len() * 2);
    let mut vertices: Vec<u32> = Vec::with_capacity(local.len());
    for &v in local {
        index.insert(v, vertices.len());
        vertices.push(v);
    }
    let mut boundary: BTreeSet<u32> = BTreeSet::new();
    for &v in local {
        for &u in g.neighbors(v) {
            if !local.contains(&u) {
                boundary.insert(u);
            }
        }
    }
    for &b in &boundary {
        index.insert(b, vertices.len());
        vertices.push(b);
    }
    let k = vertices.len();
    let (source, sink) = (k, k + 1);
    let mut net = FlowNetwork::new(k + 2, source, sink);
    let mut source_total = 0i64;
    for &v in local {
        let i = index[&v];
        let deg = int(g.degree(v));
        if reference.contains(v) {
            let cap = checked_mul(caps.source, deg)?;
            source_total = source_total.checked_add(cap).ok_or(Error::CapacityOverflow)?;
            net.add_arc(source, i, cap)?;
        } else {
            net.add_arc(i, sink, checked_mul(caps.sink, deg)?)?;
        }
        for (u, w) in g.adjacent(v) {
            let j = index[&u];
            if j > i {
                net.add_edge(i, j, checked_mul(caps.edge, int(w))?)?;
            }
        }
    }
    let unlimited = source_total.saturating_add(1);
    let drains: Vec<(u32, usize)> = boundary
        .iter()
        .map(|&b| Ok((b, net.add_arc(index[&b], sink, unlimited)?)))
        .collect::<Result<_>>()?;
    let flow = max_flow(&mut net);
    let mut overfull = Vec::new();
    for (b, arc) in drains {
        if net.flow_on(arc) > checked_mul(caps.sink, int(g.degree(b)))? {
            overfull.push(b);
        }
    }
    let mut source_side: Vec<u32> = flow
        .source_side
        .iter()
        .filter(|&&i| i < k)
        .map(|&i| vertices[i])
        .collect();
    source_side.sort_unstable();
    Ok(LocalSolve {
        value: flow.value,
        source_side,
        boundary: boundary.into_iter().collect(),
        overfull,
    })
}
