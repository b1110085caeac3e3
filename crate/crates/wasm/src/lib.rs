//! Browser bindings: a random geometric graph the page can cluster, improve
//! and profile. The methods return plain vectors so the page only needs
//! typed arrays.

use localclust::generate::{random_geometric, GeometricGraph};
use localclust::pipelines::{compute_ncp, NcpConfig, NcpSpec, SizeBins};
use localclust::{
    approximate_pagerank, flow_improve, mqi, simple_local, sweep_cut, Cluster, DiffusionParams,
    Graph, SeedSet,
};
use wasm_bindgen::prelude::*;

fn msg(e: localclust::Error) -> String {
    e.to_string()
}

#[wasm_bindgen]
pub struct Demo {
    geo: GeometricGraph,
    current: Option<Cluster>,
    trace: Vec<f64>,
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn new(n: usize, radius: f64, rng_seed: u64) -> Result<Demo, String> {
        let geo = random_geometric(n, radius, rng_seed).map_err(msg)?;
        Ok(Demo { geo, current: None, trace: Vec::new() })
    }

    fn graph(&self) -> &Graph {
        &self.geo.graph
    }

    pub fn n(&self) -> usize {
        self.graph().n()
    }

    pub fn m(&self) -> usize {
        self.graph().m()
    }

    /// Interleaved `x, y` coordinates.
    pub fn points(&self) -> Vec<f64> {
        self.geo.points.iter().flat_map(|&(x, y)| [x, y]).collect()
    }

    /// Interleaved endpoints, each edge once.
    pub fn edges(&self) -> Vec<u32> {
        self.graph().edges().flat_map(|(u, v, _)| [u, v]).collect()
    }

    /// Non-isolated vertex closest to `(x, y)`.
    pub fn nearest(&self, x: f64, y: f64) -> u32 {
        let d = |&(px, py): &(f64, f64)| (px - x).powi(2) + (py - y).powi(2);
        (0..self.geo.points.len())
            .filter(|&v| self.graph().degree(v as u32) > 0.0)
            .min_by(|&a, &b| d(&self.geo.points[a]).total_cmp(&d(&self.geo.points[b])))
            .unwrap_or(0) as u32
    }

    /// Push diffusion from `seed` followed by a sweep; returns the members.
    pub fn diffuse(&mut self, seed: u32, alpha: f64, eps: f64) -> Result<Vec<u32>, String> {
        let g = &self.geo.graph;
        let seeds = SeedSet::single(g, seed).map_err(msg)?;
        let params = DiffusionParams::default().with_alpha(alpha).with_eps(eps);
        let push = approximate_pagerank(g, &seeds, &params).map_err(msg)?;
        let c = sweep_cut(g, &push.p).map_err(msg)?;
        self.trace = vec![c.conductance()];
        let members = c.members().to_vec();
        self.current = Some(c);
        Ok(members)
    }

    /// Improves the current cluster with `mqi`, `flowimprove` or `simplelocal`.
    pub fn improve(&mut self, method: &str, delta: f64) -> Result<Vec<u32>, String> {
        let g = &self.geo.graph;
        let current = self.current.as_ref().ok_or("no cluster yet")?;
        let result = match method {
            "mqi" => mqi(g, current),
            "flowimprove" => flow_improve(g, current),
            "simplelocal" => simple_local(g, current, delta),
            other => return Err(format!("unknown method `{other}`")),
        }
        .map_err(msg)?;
        self.trace.extend(result.conductance_trace.iter().skip(1));
        let members = result.cluster.members().to_vec();
        self.current = Some(result.cluster);
        Ok(members)
    }

    /// Conductance of the current cluster, `NaN` before the first diffusion.
    pub fn conductance(&self) -> f64 {
        self.current.as_ref().map_or(f64::NAN, Cluster::conductance)
    }

    /// Conductance after the diffusion and after each improvement step.
    pub fn trace(&self) -> Vec<f64> {
        self.trace.clone()
    }

    /// Best `(size, conductance)` per log-spaced size bin, flattened.
    pub fn ncp(&self, bins: usize, seeds_per_bin: usize, rng_seed: u64) -> Result<Vec<f64>, String> {
        let g = self.graph();
        // coarser than the library default so the page stays responsive
        let spec = NcpSpec { epss: vec![1e-3, 1e-4, 1e-5], ..NcpSpec::acl() };
        let config = NcpConfig {
            spec,
            bins: SizeBins::log_spaced((g.n() / 2).max(1), bins).map_err(msg)?,
            seeds_per_bin,
            rng_seed,
            threads: 1,
            degree_biased: false,
            all: false,
        };
        let records = compute_ncp(g, &config).map_err(msg)?;
        Ok(records
            .iter()
            .filter_map(|r| r.best.as_ref())
            .flat_map(|b| [b.size as f64, b.conductance])
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diffuse_then_improve() {
        let mut demo = Demo::new(400, 0.1, 3).unwrap();
        assert_eq!(demo.points().len(), 800);
        assert_eq!(demo.edges().len(), 2 * demo.m());
        let seed = demo.nearest(0.5, 0.5);
        let members = demo.diffuse(seed, 0.05, 1e-5).unwrap();
        assert!(!members.is_empty());
        let before = demo.conductance();
        for method in ["mqi", "flowimprove", "simplelocal"] {
            demo.improve(method, 0.5).unwrap();
        }
        assert!(demo.conductance() <= before);
        let trace = demo.trace();
        assert!(trace.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(*trace.last().unwrap(), demo.conductance());
        assert!(demo.improve("nope", 0.5).is_err());
    }

    #[test]
    fn improve_needs_a_cluster() {
        let mut demo = Demo::new(50, 0.3, 1).unwrap();
        assert!(demo.improve("mqi", 0.5).is_err());
        assert!(demo.conductance().is_nan());
    }

    #[test]
    fn nearest_picks_the_closest_point() {
        let demo = Demo::new(100, 0.2, 9).unwrap();
        let p = demo.points();
        for v in 0..demo.n() {
            let expected = if demo.graph().degree(v as u32) > 0.0 { Some(v as u32) } else { None };
            let got = demo.nearest(p[2 * v], p[2 * v + 1]);
            match expected {
                Some(e) => assert_eq!(got, e),
                None => assert!(demo.graph().degree(got) > 0.0),
            }
        }
    }

    #[test]
    fn ncp_pairs() {
        let demo = Demo::new(300, 0.1, 5).unwrap();
        let curve = demo.ncp(6, 3, 42).unwrap();
        assert_eq!(curve.len() % 2, 0);
        assert!(!curve.is_empty());
        for pair in curve.chunks(2) {
            assert!(pair[0] >= 1.0 && (0.0..=1.0).contains(&pair[1]));
        }
        assert_eq!(curve, demo.ncp(6, 3, 42).unwrap());
    }
}
