//! Capacity Releasing Diffusion.
//!
//! Mass starts on the seeds and spreads by a unit-flow push-relabel process:
//! every vertex absorbs up to its degree, each edge carries at most
//! `capacity * weight` per round, and labels stop at `height`. Between rounds
//! all mass is multiplied by `growth`. The diffusion stops once a round leaves
//! too much mass stuck as excess, which happens when the mass has filled a
//! region whose boundary cannot carry it out.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::cluster::{sweep_cut, Cluster, SeedSet};
use crate::embedding::SparseEmbedding;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrdParams {
    /// Per-round capacity of a unit-weight edge (`U`).
    pub capacity: u64,
    /// Label limit (`h`).
    pub height: u32,
    /// Mass multiplier applied between rounds (`w`). With `w = 1` a single
    /// round runs.
    pub growth: u64,
    /// Initial mass on each seed, as a multiple of its degree.
    pub initial_mass_multiplier: u64,
    pub max_rounds: usize,
    /// Stop once leftover excess exceeds this fraction of the total mass.
    pub stuck_fraction: f64,
}

impl Default for CrdParams {
    fn default() -> Self {
        Self {
            capacity: 3,
            height: 10,
            growth: 2,
            initial_mass_multiplier: 2,
            max_rounds: 20,
            stuck_fraction: 0.1,
        }
    }
}

impl CrdParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.to_string()));
        if self.capacity == 0 {
            return bad("U must be at least 1");
        }
        if self.height == 0 {
            return bad("h must be at least 1");
        }
        if self.growth == 0 {
            return bad("w must be at least 1");
        }
        if self.initial_mass_multiplier == 0 {
            return bad("initial mass multiplier must be positive");
        }
        if self.max_rounds == 0 {
            return bad("max_rounds must be at least 1");
        }
        if !(self.stuck_fraction > 0.0 && self.stuck_fraction < 1.0) {
            return bad("stuck fraction must lie in (0, 1)");
        }
        Ok(())
    }
}

/// Bookkeeping for one inner push-relabel round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrdRound {
    pub mass_before: i64,
    pub mass_after: i64,
    /// Mass above vertex degrees once the round ends.
    pub excess_after: i64,
    pub pushes: usize,
    pub relabels: usize,
    pub touched: usize,
}

#[derive(Debug, Clone)]
pub struct CrdResult {
    pub cluster: Cluster,
    pub rounds: Vec<CrdRound>,
    /// Absorbed mass `min(m(v), deg(v))` at the end.
    pub absorbed: SparseEmbedding,
    /// Largest absorbed-to-degree ratio seen at the end of any round.
    pub max_fill: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Node {
    mass: i64,
    label: u32,
    next_arc: usize,
    queued: bool,
}

struct Diffusion<'g> {
    g: &'g Graph,
    capacity: i64,
    height: u32,
    nodes: HashMap<u32, Node>,
    /// Net flow on `{a, b}` from `min(a, b)` towards `max(a, b)` this round.
    flow: HashMap<(u32, u32), i64>,
}

impl Diffusion<'_> {
    fn degree(&self, v: u32) -> i64 {
        self.g.degree(v) as i64
    }

    fn excess(&self, v: u32) -> i64 {
        self.nodes
            .get(&v)
            .map_or(0, |n| (n.mass - self.degree(v)).max(0))
    }

    fn total_mass(&self) -> i64 {
        self.nodes.values().map(|n| n.mass).sum()
    }

    fn total_excess(&self) -> i64 {
        self.nodes.keys().map(|&v| self.excess(v)).sum()
    }

    fn flow_from(&self, v: u32, u: u32) -> i64 {
        let key = (v.min(u), v.max(u));
        let f = self.flow.get(&key).copied().unwrap_or(0);
        if v < u {
            f
        } else {
            -f
        }
    }

    fn add_flow(&mut self, v: u32, u: u32, amount: i64) {
        let key = (v.min(u), v.max(u));
        let signed = if v < u { amount } else { -amount };
        *self.flow.entry(key).or_insert(0) += signed;
    }

    fn is_active(&self, v: u32) -> bool {
        let n = &self.nodes[&v];
        n.label < self.height && n.mass > self.degree(v)
    }

    /// Unit-flow push-relabel, lowest label first, FIFO within a label.
    fn inner_round(&mut self) -> CrdRound {
        self.flow.clear();
        let mass_before = self.total_mass();
        let mut buckets: Vec<VecDeque<u32>> = vec![VecDeque::new(); self.height as usize];
        let mut order: Vec<u32> = self.nodes.keys().copied().collect();
        order.sort_unstable();
        for v in order {
            let node = self.nodes.get_mut(&v).unwrap();
            node.label = 0;
            node.next_arc = 0;
            node.queued = false;
            if node.mass > self.g.degree(v) as i64 {
                node.queued = true;
                buckets[0].push_back(v);
            }
        }
        let (mut pushes, mut relabels) = (0, 0);
        let mut lowest = 0usize;
        loop {
            while lowest < buckets.len() && buckets[lowest].is_empty() {
                lowest += 1;
            }
            if lowest == buckets.len() {
                break;
            }
            let v = buckets[lowest].pop_front().unwrap();
            self.nodes.get_mut(&v).unwrap().queued = false;
            if !self.is_active(v) {
                continue;
            }
            let label = self.nodes[&v].label;
            let arc = self.nodes[&v].next_arc;
            let nbrs = self.g.neighbors(v);
            if arc < nbrs.len() {
                let u = nbrs[arc];
                let w = self.g.neighbor_weights(v).map_or(1, |ws| ws[arc] as i64);
                let residual = self.capacity * w - self.flow_from(v, u);
                let (u_label, u_mass) = self.nodes.get(&u).map_or((0, 0), |n| (n.label, n.mass));
                let room = self.degree(u) - (u_mass - self.degree(u)).max(0);
                let amount = self.excess(v).min(residual).min(room);
                if label == u_label + 1 && amount > 0 {
                    self.add_flow(v, u, amount);
                    self.nodes.get_mut(&v).unwrap().mass -= amount;
                    let target = self.nodes.entry(u).or_default();
                    target.mass += amount;
                    pushes += 1;
                    if self.is_active(u) && !self.nodes[&u].queued {
                        self.nodes.get_mut(&u).unwrap().queued = true;
                        buckets[u_label as usize].push_back(u);
                        lowest = lowest.min(u_label as usize);
                    }
                } else {
                    self.nodes.get_mut(&v).unwrap().next_arc += 1;
                }
                if self.is_active(v) {
                    self.nodes.get_mut(&v).unwrap().queued = true;
                    buckets[label as usize].push_front(v);
                }
            } else {
                let node = self.nodes.get_mut(&v).unwrap();
                node.label += 1;
                node.next_arc = 0;
                relabels += 1;
                if self.is_active(v) {
                    let node = self.nodes.get_mut(&v).unwrap();
                    node.queued = true;
                    buckets[node.label as usize].push_back(v);
                }
            }
        }
        let mass_after = self.total_mass();
        assert_eq!(mass_before, mass_after, "mass changed inside a round");
        CrdRound {
            mass_before,
            mass_after,
            excess_after: self.total_excess(),
            pushes,
            relabels,
            touched: self.nodes.len(),
        }
    }

    fn absorbed(&self) -> SparseEmbedding {
        SparseEmbedding::from_pairs(
            self.nodes
                .iter()
                .map(|(&v, n)| (v, n.mass.min(self.degree(v)) as f64)),
        )
    }
}

/// Runs the diffusion and returns its rounds and the sweep cluster over the
/// absorbed mass.
pub fn crd_diffuse(g: &Graph, seeds: &SeedSet, params: &CrdParams) -> Result<CrdResult> {
    params.validate()?;
    if !g.has_integer_weights() {
        return Err(Error::NonIntegerWeights);
    }
    let capacity = i64::try_from(params.capacity).map_err(|_| Error::CapacityOverflow)?;
    let growth = i64::try_from(params.growth).map_err(|_| Error::CapacityOverflow)?;
    let multiplier =
        i64::try_from(params.initial_mass_multiplier).map_err(|_| Error::CapacityOverflow)?;
    let max_weight = (0..g.n() as u32)
        .filter_map(|v| g.neighbor_weights(v))
        .flat_map(|w| w.iter().copied())
        .fold(1.0f64, f64::max) as i64;
    capacity
        .checked_mul(max_weight)
        .ok_or(Error::CapacityOverflow)?;
    let mut diffusion = Diffusion {
        g,
        capacity,
        height: params.height,
        nodes: HashMap::new(),
        flow: HashMap::new(),
    };
    for &s in seeds.as_slice() {
        let mass = (g.degree(s) as i64)
            .checked_mul(multiplier)
            .ok_or(Error::CapacityOverflow)?;
        diffusion.nodes.insert(
            s,
            Node {
                mass,
                ..Default::default()
            },
        );
    }
    let total_volume = g.total_volume() as i64;
    let mut rounds = Vec::new();
    let mut max_fill = 0.0f64;
    for round in 0..params.max_rounds {
        if round > 0 {
            if growth == 1 {
                break;
            }
            let grown = diffusion
                .total_mass()
                .checked_mul(growth)
                .ok_or(Error::CapacityOverflow)?;
            if grown > total_volume {
                break;
            }
            for node in diffusion.nodes.values_mut() {
                node.mass *= growth;
            }
        }
        let stats = diffusion.inner_round();
        for (&v, n) in &diffusion.nodes {
            let fill = n.mass.min(diffusion.degree(v)) as f64 / g.degree(v);
            max_fill = max_fill.max(fill);
        }
        rounds.push(stats);
        if stats.excess_after as f64 > params.stuck_fraction * stats.mass_after as f64 {
            break;
        }
    }
    let absorbed = diffusion.absorbed();
    let cluster = sweep_cut(g, &absorbed)?;
    Ok(CrdResult {
        cluster,
        rounds,
        absorbed,
        max_fill,
    })
}

/// Capacity Releasing Diffusion from `seeds`, rounded by a sweep.
pub fn crd_cluster(g: &Graph, seeds: &SeedSet, params: &CrdParams) -> Result<Cluster> {
    crd_diffuse(g, seeds, params).map(|r| r.cluster)
}
