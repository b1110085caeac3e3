//! Seeded spectral diffusions: approximate personalized PageRank by push,
//! PageRank Nibble, and ℓ1-regularized PageRank by proximal gradient.
//!
//! All three touch only vertices reached by the diffusion. State lives in
//! hash maps keyed by vertex, so nothing proportional to `n` is allocated.

use std::collections::{HashMap, VecDeque};
use std::str::FromStr;

use serde::Serialize;

use crate::cluster::{sweep_cut, Cluster, SeedSet};
use crate::embedding::SparseEmbedding;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// How the unit of seed mass is split across a seed set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SeedMass {
    #[default]
    Uniform,
    /// Proportional to seed degree.
    Degree,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiffusionParams {
    /// Teleport probability.
    pub alpha: f64,
    /// Push tolerance: a vertex is pushed while `r(v) >= eps * deg(v)`.
    pub eps: f64,
    /// ℓ1 penalty scale.
    pub rho: f64,
    pub max_iters: usize,
    pub kkt_tol: f64,
    pub seed_mass: SeedMass,
}

impl Default for DiffusionParams {
    fn default() -> Self {
        Self {
            alpha: 0.15,
            eps: 1e-6,
            rho: 1e-4,
            max_iters: 100_000,
            kkt_tol: 1e-6,
            seed_mass: SeedMass::Uniform,
        }
    }
}

impl DiffusionParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.to_string()));
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad("alpha must lie in (0, 1)");
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return bad("eps must be positive and finite");
        }
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return bad("rho must be positive and finite");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be at least 1");
        }
        if !(self.kkt_tol > 0.0 && self.kkt_tol.is_finite()) {
            return bad("kkt_tol must be positive and finite");
        }
        Ok(())
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_rho(mut self, rho: f64) -> Self {
        self.rho = rho;
        self
    }
}

fn seed_vector(g: &Graph, seeds: &SeedSet, mode: SeedMass) -> Vec<(u32, f64)> {
    match mode {
        SeedMass::Uniform => {
            let share = 1.0 / seeds.len() as f64;
            seeds.as_slice().iter().map(|&s| (s, share)).collect()
        }
        SeedMass::Degree => {
            let vol: f64 = seeds.as_slice().iter().map(|&s| g.degree(s)).sum();
            seeds
                .as_slice()
                .iter()
                .map(|&s| (s, g.degree(s) / vol))
                .collect()
        }
    }
}

#[derive(Debug, Clone)]
pub struct PushResult {
    /// Approximate personalized PageRank.
    pub p: SparseEmbedding,
    pub r: SparseEmbedding,
    pub pushes: usize,
    /// Sum of degrees of pushed vertices.
    pub work: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct PushEntry {
    p: f64,
    r: f64,
    queued: bool,
}

/// Resumable push process. Each [`PushState::step`] performs one lazy-walk
/// push on the vertex at the head of a FIFO queue.
#[derive(Debug)]
pub struct PushState<'g> {
    graph: &'g Graph,
    alpha: f64,
    eps: f64,
    entries: HashMap<u32, PushEntry>,
    queue: VecDeque<u32>,
    pushes: usize,
    work: f64,
}

impl<'g> PushState<'g> {
    pub fn new(g: &'g Graph, seeds: &SeedSet, params: &DiffusionParams) -> Result<Self> {
        params.validate()?;
        let mut state = PushState {
            graph: g,
            alpha: params.alpha,
            eps: params.eps,
            entries: HashMap::new(),
            queue: VecDeque::new(),
            pushes: 0,
            work: 0.0,
        };
        for (s, mass) in seed_vector(g, seeds, params.seed_mass) {
            let e = state.entries.entry(s).or_default();
            e.r = mass;
            if mass >= state.eps * g.degree(s) {
                e.queued = true;
                state.queue.push_back(s);
            }
        }
        Ok(state)
    }

    /// Pushes the next queued vertex and returns it, or `None` once every
    /// residual is below threshold.
    pub fn step(&mut self) -> Option<u32> {
        let g = self.graph;
        let v = self.queue.pop_front()?;
        let d = g.degree(v);
        let entry = self.entries.get_mut(&v).expect("queued vertex has state");
        entry.queued = false;
        let r = entry.r;
        entry.p += self.alpha * r;
        entry.r = 0.5 * (1.0 - self.alpha) * r;
        let requeue = entry.r >= self.eps * d;
        let share = 0.5 * (1.0 - self.alpha) * r / d;
        for (u, w) in g.adjacent(v) {
            let e = self.entries.entry(u).or_default();
            e.r += share * w;
            if !e.queued && e.r >= self.eps * g.degree(u) {
                e.queued = true;
                self.queue.push_back(u);
            }
        }
        if requeue {
            let e = self.entries.get_mut(&v).unwrap();
            e.queued = true;
            self.queue.push_back(v);
        }
        self.pushes += 1;
        self.work += d;
        Some(v)
    }

    /// Lowers the push threshold to `eps` and queues, in vertex order, every
    /// vertex whose residual is now above it. Continuing from here only adds
    /// to `p`, so the refined result dominates the current one.
    pub fn refine(&mut self, eps: f64) -> Result<()> {
        if !(eps > 0.0 && eps <= self.eps) {
            return Err(Error::InvalidParameter(format!(
                "refined eps must lie in (0, {}]",
                self.eps
            )));
        }
        self.eps = eps;
        let mut due: Vec<u32> = self
            .entries
            .iter()
            .filter(|(&v, e)| !e.queued && e.r >= eps * self.graph.degree(v))
            .map(|(&v, _)| v)
            .collect();
        due.sort_unstable();
        for v in due {
            self.entries.get_mut(&v).unwrap().queued = true;
            self.queue.push_back(v);
        }
        Ok(())
    }

    pub fn p_mass(&self) -> f64 {
        self.entries.values().map(|e| e.p).sum()
    }

    pub fn r_mass(&self) -> f64 {
        self.entries.values().map(|e| e.r).sum()
    }

    /// Vertices holding any state.
    pub fn touched(&self) -> usize {
        self.entries.len()
    }

    pub fn pushes(&self) -> usize {
        self.pushes
    }

    pub fn p(&self) -> SparseEmbedding {
        SparseEmbedding::from_pairs(self.entries.iter().map(|(&v, e)| (v, e.p)))
    }

    /// Pushes until every residual is below threshold.
    pub fn drain(&mut self) {
        while self.step().is_some() {}
    }

    pub fn run(mut self) -> PushResult {
        self.drain();
        PushResult {
            p: self.p(),
            r: SparseEmbedding::from_pairs(self.entries.iter().map(|(&v, e)| (v, e.r))),
            pushes: self.pushes,
            work: self.work,
        }
    }
}

/// Approximate personalized PageRank with the lazy-walk push. On return
/// `r(v) < eps * deg(v)` everywhere, `|p - ppr| <= eps * deg` per vertex, and
/// the pushed degree total is at most `1 / (eps * alpha)`.
pub fn approximate_pagerank(
    g: &Graph,
    seeds: &SeedSet,
    params: &DiffusionParams,
) -> Result<PushResult> {
    Ok(PushState::new(g, seeds, params)?.run())
}

/// Teleport probability used by [`pagerank_nibble`].
pub const NIBBLE_ALPHA: f64 = 0.15;

/// Runs push for `eps = 2^-k / target_volume`, `k = 0..=log2(target_volume)`,
/// sweeps each result and keeps the lowest-conductance cluster.
pub fn pagerank_nibble(g: &Graph, seed: u32, target_volume: u64) -> Result<Cluster> {
    pagerank_nibble_with_alpha(g, seed, target_volume, NIBBLE_ALPHA)
}

pub fn pagerank_nibble_with_alpha(
    g: &Graph,
    seed: u32,
    target_volume: u64,
    alpha: f64,
) -> Result<Cluster> {
    if target_volume == 0 || target_volume as f64 > g.total_volume() / 2.0 {
        return Err(Error::InvalidParameter(format!(
            "target volume must lie in [1, {}]",
            g.total_volume() / 2.0
        )));
    }
    let seeds = SeedSet::single(g, seed)?;
    let rounds = 63 - target_volume.leading_zeros();
    let mut best: Option<Cluster> = None;
    for k in 0..=rounds {
        let eps = (-(k as f64)).exp2() / target_volume as f64;
        let params = DiffusionParams::default().with_alpha(alpha).with_eps(eps);
        let result = approximate_pagerank(g, &seeds, &params)?;
        if result.p.is_empty() {
            continue;
        }
        let cluster = sweep_cut(g, &result.p)?;
        if best
            .as_ref()
            .is_none_or(|b| cluster.cmp_conductance(b, g).is_lt())
        {
            best = Some(cluster);
        }
    }
    match best {
        Some(c) => Ok(c),
        None => Cluster::from_set(g, &[seed]),
    }
}

/// Output of the ℓ1-regularized solver with convergence details.
#[derive(Debug, Clone)]
pub struct L1Solution {
    pub q: SparseEmbedding,
    pub iterations: usize,
    pub kkt_residual: f64,
    /// Objective after each proximal step, when requested.
    pub objective_trace: Vec<f64>,
}

/// The smooth part of the ℓ1-regularized objective and its gradient, for one
/// (graph, seeds, alpha, rho) instance.
struct L1Problem<'g> {
    g: &'g Graph,
    alpha: f64,
    rho: f64,
    /// Degree-normalized seed vector `D^{-1/2} s`, sorted by vertex.
    seed: Vec<(u32, f64)>,
}

impl<'g> L1Problem<'g> {
    fn new(g: &'g Graph, seeds: &SeedSet, params: &DiffusionParams) -> Self {
        let seed = seed_vector(g, seeds, params.seed_mass)
            .into_iter()
            .map(|(v, s)| (v, s / g.degree(v).sqrt()))
            .collect();
        L1Problem {
            g,
            alpha: params.alpha,
            rho: params.rho,
            seed,
        }
    }

    fn penalty(&self, v: u32) -> f64 {
        self.rho * self.alpha * self.g.degree(v).sqrt()
    }

    /// `N q` for `N = D^{-1/2} A D^{-1/2}`, over `q`'s neighbors. `q` sorted.
    fn normalized_adjacency(&self, q: &[(u32, f64)]) -> HashMap<u32, f64> {
        let mut acc: HashMap<u32, f64> = HashMap::with_capacity(q.len() * 4);
        for &(u, x) in q {
            let scaled = x / self.g.degree(u).sqrt();
            for (v, w) in self.g.adjacent(u) {
                *acc.entry(v).or_insert(0.0) += w * scaled;
            }
        }
        for (v, y) in acc.iter_mut() {
            *y /= self.g.degree(*v).sqrt();
        }
        acc
    }

    /// Gradient of the smooth part on every vertex where it can be nonzero,
    /// sorted by vertex, paired with the current value of `q` there.
    fn gradient(&self, q: &[(u32, f64)]) -> Vec<(u32, f64, f64)> {
        let nq = self.normalized_adjacency(q);
        let mut verts: Vec<u32> = nq.keys().copied().collect();
        verts.extend(q.iter().map(|&(v, _)| v));
        verts.extend(self.seed.iter().map(|&(v, _)| v));
        verts.sort_unstable();
        verts.dedup();
        let a = self.alpha;
        verts
            .into_iter()
            .map(|v| {
                let qv = lookup(q, v);
                let grad = 0.5 * (1.0 + a) * qv
                    - 0.5 * (1.0 - a) * nq.get(&v).copied().unwrap_or(0.0)
                    - a * lookup(&self.seed, v);
                (v, qv, grad)
            })
            .collect()
    }

    fn objective(&self, q: &[(u32, f64)]) -> f64 {
        let nq = self.normalized_adjacency(q);
        let a = self.alpha;
        let mut f = 0.0;
        for &(v, x) in q {
            let qq = 0.5 * (1.0 + a) * x - 0.5 * (1.0 - a) * nq.get(&v).copied().unwrap_or(0.0);
            f += 0.5 * x * qq - a * lookup(&self.seed, v) * x + self.penalty(v) * x;
        }
        f
    }

    fn kkt_residual(&self, grad: &[(u32, f64, f64)]) -> f64 {
        grad.iter()
            .map(|&(v, qv, gv)| {
                let pen = self.penalty(v);
                if qv > 0.0 {
                    (gv + pen).abs()
                } else {
                    (-pen - gv).max(0.0)
                }
            })
            .fold(0.0, f64::max)
    }
}

fn lookup(sorted: &[(u32, f64)], v: u32) -> f64 {
    sorted
        .binary_search_by_key(&v, |&(u, _)| u)
        .map_or(0.0, |i| sorted[i].1)
}

/// ℓ1-regularized personalized PageRank. Minimizes
/// `½<q, Qq> - α<D^{-1/2}s, q> + ρα Σ sqrt(deg(v)) q(v)` over `q >= 0` with
/// `Q = (1+α)/2 I - (1-α)/2 D^{-1/2} A D^{-1/2}`, by proximal gradient with
/// unit step.
pub fn l1reg_pagerank(
    g: &Graph,
    seeds: &SeedSet,
    params: &DiffusionParams,
) -> Result<SparseEmbedding> {
    l1reg_pagerank_detailed(g, seeds, params, false).map(|s| s.q)
}

pub fn l1reg_pagerank_detailed(
    g: &Graph,
    seeds: &SeedSet,
    params: &DiffusionParams,
    record_objective: bool,
) -> Result<L1Solution> {
    params.validate()?;
    let problem = L1Problem::new(g, seeds, params);
    let mut q: Vec<(u32, f64)> = Vec::new();
    let mut trace = Vec::new();
    let mut residual = f64::INFINITY;
    for iteration in 0..params.max_iters {
        let grad = problem.gradient(&q);
        residual = problem.kkt_residual(&grad);
        if residual <= params.kkt_tol {
            return Ok(L1Solution {
                q: SparseEmbedding::from_pairs(q),
                iterations: iteration,
                kkt_residual: residual,
                objective_trace: trace,
            });
        }
        q = grad
            .into_iter()
            .filter_map(|(v, qv, gv)| {
                let next = qv - gv - problem.penalty(v);
                (next > 0.0).then_some((v, next))
            })
            .collect();
        if record_objective {
            trace.push(problem.objective(&q));
        }
    }
    let grad = problem.gradient(&q);
    let final_residual = problem.kkt_residual(&grad);
    if final_residual <= params.kkt_tol {
        return Ok(L1Solution {
            q: SparseEmbedding::from_pairs(q),
            iterations: params.max_iters,
            kkt_residual: final_residual,
            objective_trace: trace,
        });
    }
    residual = residual.min(final_residual);
    Err(Error::NotConverged {
        iterations: params.max_iters,
        residual,
        best: Box::new(SparseEmbedding::from_pairs(q)),
    })
}

/// Objective value at `q`.
pub fn l1reg_objective(
    g: &Graph,
    seeds: &SeedSet,
    params: &DiffusionParams,
    q: &SparseEmbedding,
) -> f64 {
    let q: Vec<(u32, f64)> = q.iter().collect();
    L1Problem::new(g, seeds, params).objective(&q)
}

/// Gradient of the smooth part (everything except the ℓ1 term) at `q`, on
/// every vertex where it can be nonzero.
pub fn l1reg_smooth_gradient(
    g: &Graph,
    seeds: &SeedSet,
    params: &DiffusionParams,
    q: &SparseEmbedding,
) -> Vec<(u32, f64)> {
    let q: Vec<(u32, f64)> = q.iter().collect();
    L1Problem::new(g, seeds, params)
        .gradient(&q)
        .into_iter()
        .map(|(v, _, gv)| (v, gv))
        .collect()
}

/// Largest violation of the first-order optimality conditions at `q`.
pub fn l1reg_kkt_residual(
    g: &Graph,
    seeds: &SeedSet,
    params: &DiffusionParams,
    q: &SparseEmbedding,
) -> f64 {
    let q: Vec<(u32, f64)> = q.iter().collect();
    let problem = L1Problem::new(g, seeds, params);
    problem.kkt_residual(&problem.gradient(&q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralMethod {
    Acl,
    L1Reg,
}

impl SpectralMethod {
    pub fn name(self) -> &'static str {
        match self {
            SpectralMethod::Acl => "acl",
            SpectralMethod::L1Reg => "l1reg",
        }
    }
}

impl FromStr for SpectralMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "acl" => Ok(SpectralMethod::Acl),
            "l1reg" => Ok(SpectralMethod::L1Reg),
            other => Err(Error::InvalidParameter(format!(
                "unknown spectral method `{other}`"
            ))),
        }
    }
}

/// The embedding a spectral method produces: `p` for push, `q` for ℓ1-reg.
pub fn diffuse(
    g: &Graph,
    seeds: &SeedSet,
    params: &DiffusionParams,
    method: SpectralMethod,
) -> Result<SparseEmbedding> {
    match method {
        SpectralMethod::Acl => Ok(approximate_pagerank(g, seeds, params)?.p),
        SpectralMethod::L1Reg => l1reg_pagerank(g, seeds, params),
    }
}

/// Diffusion followed by a sweep cut.
pub fn spectral_cluster(
    g: &Graph,
    seeds: &SeedSet,
    params: &DiffusionParams,
    method: SpectralMethod,
) -> Result<Cluster> {
    let x = diffuse(g, seeds, params, method)?;
    if x.is_empty() {
        return Err(Error::EmptyEmbedding);
    }
    sweep_cut(g, &x)
}
