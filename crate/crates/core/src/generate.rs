//! Synthetic graph generators. Randomized generators draw from a ChaCha8
//! stream seeded with the caller's `rng_seed`, so output is identical across
//! platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn clique_edges(base: u32, size: u32, edges: &mut Vec<(u32, u32)>) {
    for i in 0..size {
        for j in i + 1..size {
            edges.push((base + i, base + j));
        }
    }
}

/// `k` cliques of `c` vertices. Clique `i` holds `i*c .. (i+1)*c`; its last
/// vertex links to the first vertex of clique `i+1 (mod k)`.
pub fn ring_of_cliques(k: usize, c: usize) -> Result<Graph> {
    if k < 2 || c < 2 {
        return Err(Error::InvalidParameter(
            "ring of cliques needs k >= 2 cliques of size c >= 2".into(),
        ));
    }
    let (k32, c32) = (k as u32, c as u32);
    let mut edges = Vec::with_capacity(k * (c * (c - 1) / 2 + 1));
    for i in 0..k32 {
        clique_edges(i * c32, c32, &mut edges);
        edges.push((i * c32 + c32 - 1, ((i + 1) % k32) * c32));
    }
    Graph::from_edges(k * c, &edges)
}

/// Two `c`-cliques joined by the single edge `(c-1, c)`.
pub fn clique_pair(c: usize) -> Result<Graph> {
    if c < 2 {
        return Err(Error::InvalidParameter("clique size must be >= 2".into()));
    }
    let c32 = c as u32;
    let mut edges = Vec::new();
    clique_edges(0, c32, &mut edges);
    clique_edges(c32, c32, &mut edges);
    edges.push((c32 - 1, c32));
    Graph::from_edges(2 * c, &edges)
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    clique_edges(0, n as u32, &mut edges);
    Graph::from_edges(n, &edges)
}

/// A planted-partition graph together with each vertex's block.
#[derive(Debug, Clone)]
pub struct PlantedPartition {
    pub graph: Graph,
    pub blocks: Vec<u32>,
}

impl PlantedPartition {
    pub fn block_members(&self, block: u32) -> Vec<u32> {
        (0..self.blocks.len() as u32)
            .filter(|&v| self.blocks[v as usize] == block)
            .collect()
    }
}

/// Blocks of the given sizes, laid out consecutively. Each pair inside a block
/// is an edge with probability `p_in`, across blocks with `p_out`.
pub fn planted_partition(
    block_sizes: &[usize],
    p_in: f64,
    p_out: f64,
    rng_seed: u64,
) -> Result<PlantedPartition> {
    for p in [p_in, p_out] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "edge probability {p} outside [0, 1]"
            )));
        }
    }
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(Error::InvalidParameter("blocks must be nonempty".into()));
    }
    let blocks: Vec<u32> = block_sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| std::iter::repeat_n(b as u32, s))
        .collect();
    let n = blocks.len();
    let mut rng = rng(rng_seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if blocks[u] == blocks[v] { p_in } else { p_out };
            if rng.gen::<f64>() < p {
                edges.push((u as u32, v as u32));
            }
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    Ok(PlantedPartition { graph, blocks })
}

/// A random geometric graph with its point coordinates.
#[derive(Debug, Clone)]
pub struct GeometricGraph {
    pub graph: Graph,
    pub points: Vec<(f64, f64)>,
}

/// `n` uniform points in the unit square, joined when closer than `radius`.
pub fn random_geometric(n: usize, radius: f64, rng_seed: u64) -> Result<GeometricGraph> {
    if n < 2 || !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(
            "random geometric graph needs n >= 2 and a positive radius".into(),
        ));
    }
    let mut rng = rng(rng_seed);
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();

    // Bucket points into cells of side >= radius; neighbors lie in adjacent cells.
    let cells = ((1.0 / radius).floor() as usize).clamp(1, 4096);
    let cell_of = |x: f64| ((x * cells as f64) as usize).min(cells - 1);
    let mut grid: Vec<Vec<u32>> = vec![Vec::new(); cells * cells];
    for (i, &(x, y)) in points.iter().enumerate() {
        grid[cell_of(y) * cells + cell_of(x)].push(i as u32);
    }
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        let (cx, cy) = (cell_of(x), cell_of(y));
        for gy in cy.saturating_sub(1)..=(cy + 1).min(cells - 1) {
            for gx in cx.saturating_sub(1)..=(cx + 1).min(cells - 1) {
                for &j in &grid[gy * cells + gx] {
                    if (j as usize) <= i {
                        continue;
                    }
                    let (px, py) = points[j as usize];
                    if (px - x).powi(2) + (py - y).powi(2) < r2 {
                        edges.push((i as u32, j));
                    }
                }
            }
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    Ok(GeometricGraph { graph, points })
}
