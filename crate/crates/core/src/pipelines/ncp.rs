//! Approximate network community profile: the best conductance found by
//! seeded local runs, per log-spaced cluster-size bin.

use std::cmp::Ordering;
use std::io::Write;

use rand::Rng;
use serde::Serialize;

use crate::cluster::{sweep_cmp, sweep_profile, SeedSet, SweepPoint};
use crate::diffusion::{diffuse, DiffusionParams, SpectralMethod};
use crate::error::{Error, Result};
use crate::generate::rng;
use crate::graph::Graph;

/// Inclusive vertex-count ranges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeBins {
    bounds: Vec<(usize, usize)>,
}

impl SizeBins {
    /// Up to `count` bins covering `1..=max_size` with geometrically growing
    /// widths. Fewer bins come back when `max_size` is too small to give each
    /// a distinct integer range.
    pub fn log_spaced(max_size: usize, count: usize) -> Result<SizeBins> {
        if max_size == 0 || count == 0 {
            return Err(Error::InvalidParameter(
                "bins need a positive count and maximum size".into(),
            ));
        }
        let mut starts = vec![1usize];
        for i in 1..count {
            let edge = (max_size as f64).powf(i as f64 / count as f64).round() as usize;
            let next = edge.max(starts.last().unwrap() + 1);
            if next > max_size {
                break;
            }
            starts.push(next);
        }
        let bounds = starts
            .iter()
            .enumerate()
            .map(|(i, &lo)| (lo, starts.get(i + 1).map_or(max_size, |&s| s - 1)))
            .collect();
        Ok(SizeBins { bounds })
    }

    pub fn from_bounds(bounds: Vec<(usize, usize)>) -> Result<SizeBins> {
        if bounds.is_empty() || bounds.iter().any(|&(lo, hi)| lo == 0 || lo > hi) {
            return Err(Error::InvalidParameter("invalid size bins".into()));
        }
        Ok(SizeBins { bounds })
    }

    pub fn bounds(&self) -> &[(usize, usize)] {
        &self.bounds
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    fn find(&self, size: usize) -> Option<usize> {
        self.bounds
            .iter()
            .position(|&(lo, hi)| lo <= size && size <= hi)
    }
}

/// A method and the parameter grid it is run over.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NcpSpec {
    pub method: SpectralMethod,
    pub alphas: Vec<f64>,
    /// Push tolerances, used by `acl`.
    pub epss: Vec<f64>,
    /// Penalties, used by `l1reg`.
    pub rhos: Vec<f64>,
    /// Everything not on the grid.
    pub base: DiffusionParams,
}

impl NcpSpec {
    pub fn acl() -> Self {
        NcpSpec {
            method: SpectralMethod::Acl,
            alphas: vec![0.01, 0.1],
            epss: vec![1e-3, 1e-5, 1e-7],
            rhos: Vec::new(),
            base: DiffusionParams::default(),
        }
    }

    pub fn l1reg() -> Self {
        NcpSpec {
            method: SpectralMethod::L1Reg,
            alphas: vec![0.01, 0.1],
            epss: Vec::new(),
            rhos: vec![1e-3, 1e-4, 1e-5],
            base: DiffusionParams::default(),
        }
    }

    fn grid(&self) -> Vec<DiffusionParams> {
        let second = match self.method {
            SpectralMethod::Acl => &self.epss,
            SpectralMethod::L1Reg => &self.rhos,
        };
        let mut out = Vec::new();
        for &alpha in &self.alphas {
            for &x in second {
                let p = self.base.with_alpha(alpha);
                out.push(match self.method {
                    SpectralMethod::Acl => p.with_eps(x),
                    SpectralMethod::L1Reg => p.with_rho(x),
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct NcpConfig {
    pub spec: NcpSpec,
    pub bins: SizeBins,
    pub seeds_per_bin: usize,
    pub rng_seed: u64,
    /// Worker threads for the seed runs; output does not depend on it.
    pub threads: usize,
    /// Sample seeds proportionally to degree instead of uniformly.
    pub degree_biased: bool,
    /// Keep the best cluster of every run in every bin, not only the minimum.
    pub all: bool,
}

/// The best cluster of a bin and where it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NcpBest {
    pub seed: u32,
    pub alpha: f64,
    pub eps: Option<f64>,
    pub rho: Option<f64>,
    pub size: usize,
    pub volume: f64,
    pub cut: f64,
    pub conductance: f64,
    pub members: Vec<u32>,
}

impl NcpBest {
    fn point(&self) -> SweepPoint {
        SweepPoint {
            size: self.size,
            volume: self.volume,
            cut: self.cut,
        }
    }
}

/// One bin of the profile. `best` is `None` when no run produced a cluster
/// whose size falls in the bin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NcpRecord {
    pub bin_lo: usize,
    pub bin_hi: usize,
    pub method: &'static str,
    pub best: Option<NcpBest>,
}

struct Job {
    seed: u32,
    params: DiffusionParams,
}

/// Best prefix per bin of one run's sweep.
type JobOutput = Vec<Option<NcpBest>>;

fn sample_seeds(g: &Graph, config: &NcpConfig) -> Result<Vec<u32>> {
    let candidates: Vec<u32> = (0..g.n() as u32).filter(|&v| g.degree(v) > 0.0).collect();
    if candidates.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut rng = rng(config.rng_seed);
    let total = config.bins.len() * config.seeds_per_bin;
    let mut seeds = Vec::with_capacity(total);
    if config.degree_biased {
        let mut cumulative = Vec::with_capacity(candidates.len());
        let mut acc = 0.0;
        for &v in &candidates {
            acc += g.degree(v);
            cumulative.push(acc);
        }
        for _ in 0..total {
            let x = rng.gen::<f64>() * acc;
            let i = cumulative.partition_point(|&c| c <= x).min(candidates.len() - 1);
            seeds.push(candidates[i]);
        }
    } else {
        for _ in 0..total {
            let i = rng.gen_range(0..candidates.len() as u64) as usize;
            seeds.push(candidates[i]);
        }
    }
    Ok(seeds)
}

fn run_job(g: &Graph, config: &NcpConfig, job: &Job) -> Result<JobOutput> {
    let bins = &config.bins;
    let mut out: JobOutput = vec![None; bins.len()];
    let seeds = SeedSet::single(g, job.seed)?;
    let x = match diffuse(g, &seeds, &job.params, config.spec.method) {
        Ok(x) if !x.is_empty() => x,
        Ok(_) => return Ok(out),
        Err(Error::NotConverged { .. }) => {
            log::warn!("l1reg did not converge from seed {}; run skipped", job.seed);
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    let sweep = sweep_profile(g, &x)?;
    let mut best: Vec<Option<SweepPoint>> = vec![None; bins.len()];
    for point in sweep.points.iter().flatten() {
        let Some(b) = bins.find(point.size) else {
            continue;
        };
        if best[b].is_none_or(|cur| sweep_cmp(g, point, &cur) == Ordering::Less) {
            best[b] = Some(*point);
        }
    }
    let (eps, rho) = match config.spec.method {
        SpectralMethod::Acl => (Some(job.params.eps), None),
        SpectralMethod::L1Reg => (None, Some(job.params.rho)),
    };
    for (b, point) in best.into_iter().enumerate() {
        let Some(point) = point else { continue };
        let cluster = sweep.cluster(g, point.size)?;
        out[b] = Some(NcpBest {
            seed: job.seed,
            alpha: job.params.alpha,
            eps,
            rho,
            size: cluster.len(),
            volume: cluster.volume(),
            cut: cluster.cut(),
            conductance: cluster.conductance(),
            members: cluster.into_members(),
        });
    }
    Ok(out)
}

fn run_jobs(g: &Graph, config: &NcpConfig, jobs: &[Job]) -> Result<Vec<JobOutput>> {
    let threads = config.threads.max(1).min(jobs.len().max(1));
    if threads == 1 {
        return jobs.iter().map(|j| run_job(g, config, j)).collect();
    }
    let mut results: Vec<Option<Result<JobOutput>>> = (0..jobs.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    (t..jobs.len())
                        .step_by(threads)
                        .map(|i| (i, run_job(g, config, &jobs[i])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("ncp worker panicked") {
                results[i] = Some(r);
            }
        }
    });
    results.into_iter().map(|r| r.unwrap()).collect()
}

/// Samples `seeds_per_bin` seeds per bin, runs the method over its grid from
/// each, and keeps per bin the lowest-conductance sweep prefix whose size
/// lands in that bin. Ties keep the earliest run in sampling order.
pub fn compute_ncp(g: &Graph, config: &NcpConfig) -> Result<Vec<NcpRecord>> {
    if config.seeds_per_bin == 0 {
        return Err(Error::InvalidParameter("seeds per bin must be >= 1".into()));
    }
    let grid = config.spec.grid();
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty parameter grid".into()));
    }
    for p in &grid {
        p.validate()?;
    }
    let seeds = sample_seeds(g, config)?;
    let jobs: Vec<Job> = seeds
        .iter()
        .flat_map(|&seed| grid.iter().map(move |&params| Job { seed, params }))
        .collect();
    let outputs = run_jobs(g, config, &jobs)?;

    let method = config.spec.method.name();
    let mut records = Vec::new();
    for (b, &(lo, hi)) in config.bins.bounds().iter().enumerate() {
        let empty = NcpRecord {
            bin_lo: lo,
            bin_hi: hi,
            method,
            best: None,
        };
        if config.all {
            let mut found: Vec<&NcpBest> = outputs.iter().filter_map(|o| o[b].as_ref()).collect();
            found.sort_by_key(|c| c.seed);
            if found.is_empty() {
                records.push(empty);
                continue;
            }
            records.extend(found.into_iter().map(|c| NcpRecord {
                best: Some(c.clone()),
                ..empty.clone()
            }));
        } else {
            let mut best: Option<&NcpBest> = None;
            for cand in outputs.iter().filter_map(|o| o[b].as_ref()) {
                let better = best.is_none_or(|cur| {
                    sweep_cmp(g, &cand.point(), &cur.point()) == Ordering::Less
                });
                if better {
                    best = Some(cand);
                }
            }
            records.push(NcpRecord {
                best: best.cloned(),
                ..empty
            });
        }
    }
    Ok(records)
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

/// CSV with header `bin_lo,bin_hi,method,seed,alpha,eps,rho,size,volume,cut,conductance`.
/// Empty bins keep their bounds and method with every other field blank.
pub fn write_ncp_csv<W: Write>(records: &[NcpRecord], mut out: W) -> Result<()> {
    writeln!(out, "bin_lo,bin_hi,method,seed,alpha,eps,rho,size,volume,cut,conductance")?;
    for r in records {
        match &r.best {
            None => writeln!(out, "{},{},{},,,,,,,,", r.bin_lo, r.bin_hi, r.method)?,
            Some(b) => writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.bin_lo,
                r.bin_hi,
                r.method,
                b.seed,
                b.alpha,
                opt(b.eps),
                opt(b.rho),
                b.size,
                b.volume,
                b.cut,
                b.conductance
            )?,
        }
    }
    Ok(())
}
