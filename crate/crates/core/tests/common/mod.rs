//! Independent reference implementations used by the integration tests.
//! Everything here is deliberately naive: dense matrices, double loops and
//! exhaustive enumeration.

#![allow(dead_code)]

use localclust::{Graph, SparseEmbedding};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Edge list of a random simple graph on `n` vertices.
pub fn arb_edges(min_n: usize, max_n: usize) -> impl Strategy<Value = (usize, Vec<(u32, u32)>)> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(0.4), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            (n, edges)
        })
    })
}

/// Random graph with at least one edge.
pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    arb_edges(min_n, max_n)
        .prop_filter("needs an edge", |(_, e)| !e.is_empty())
        .prop_map(|(n, e)| Graph::from_edges(n, &e).unwrap())
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected(n: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n as u32 {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u != v {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Erdős–Rényi G(n, p), possibly with isolated vertices; `None` if edgeless.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).ok()
}

pub fn adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut a = DMatrix::zeros(n, n);
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            a[(u as usize, v as usize)] = g.edge_weight(u, v);
        }
    }
    a
}

/// Personalized PageRank of the lazy walk `W = (I + D^-1 A)/2`:
/// the row vector `pr` with `pr (I - (1-alpha) W) = alpha s`.
pub fn dense_ppr(g: &Graph, seed_mass: &[(u32, f64)], alpha: f64) -> Vec<f64> {
    let n = g.n();
    let a = adjacency(g);
    let mut w = DMatrix::<f64>::identity(n, n) * 0.5;
    for i in 0..n {
        let d: f64 = a.row(i).sum();
        for j in 0..n {
            if d > 0.0 {
                w[(i, j)] += 0.5 * a[(i, j)] / d;
            } else if i == j {
                w[(i, j)] += 0.5;
            }
        }
    }
    let m = (DMatrix::<f64>::identity(n, n) - w * (1.0 - alpha)).transpose();
    let mut s = DVector::zeros(n);
    for &(v, x) in seed_mass {
        s[v as usize] = alpha * x;
    }
    let pr = m.lu().solve(&s).expect("nonsingular");
    pr.iter().copied().collect()
}

/// Minimizer of `½ qᵀQq - α s̃ᵀq + ρα Σ sqrt(d) q` over `q >= 0`, by dense
/// projected gradient run until the iterates stop moving.
pub fn dense_l1reg(g: &Graph, seed_mass: &[(u32, f64)], alpha: f64, rho: f64) -> Vec<f64> {
    let n = g.n();
    let a = adjacency(g);
    let d: Vec<f64> = (0..n).map(|i| a.row(i).sum()).collect();
    let mut q_mat = DMatrix::<f64>::identity(n, n) * ((1.0 + alpha) / 2.0);
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)] != 0.0 {
                q_mat[(i, j)] -= (1.0 - alpha) / 2.0 * a[(i, j)] / (d[i] * d[j]).sqrt();
            }
        }
    }
    let mut b = DVector::zeros(n);
    for &(v, x) in seed_mass {
        b[v as usize] = alpha * x / d[v as usize].sqrt();
    }
    let penalty = DVector::from_iterator(n, d.iter().map(|x| rho * alpha * x.sqrt()));
    let mut q = DVector::<f64>::zeros(n);
    for _ in 0..1_000_000 {
        let grad = &q_mat * &q - &b + &penalty;
        let next = (&q - grad).map(|x| x.max(0.0));
        let change = (&next - &q).amax();
        q = next;
        if change < 1e-15 {
            break;
        }
    }
    q.iter().copied().collect()
}

/// Cut and volume of `set` by scanning every ordered pair of vertices.
pub fn naive_cut_volume(g: &Graph, set: &[u32]) -> (f64, f64) {
    let n = g.n() as u32;
    let inside = |v: u32| set.contains(&v);
    let (mut cut, mut vol) = (0.0, 0.0);
    for u in 0..n {
        for v in 0..n {
            let w = g.edge_weight(u, v);
            if inside(u) {
                vol += w;
                if !inside(v) {
                    cut += w;
                }
            }
        }
    }
    (cut, vol)
}

/// `(cut, denominator)` with the denominator `min(vol, total - vol)`.
pub fn naive_ratio(g: &Graph, set: &[u32]) -> (u64, u64) {
    let (cut, vol) = naive_cut_volume(g, set);
    let den = vol.min(g.total_volume() - vol);
    (cut as u64, den as u64)
}

/// `a.0 / a.1 < b.0 / b.1` on nonnegative integers with positive denominators.
pub fn ratio_less(a: (u64, u64), b: (u64, u64)) -> bool {
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

pub fn ratio_eq(a: (u64, u64), b: (u64, u64)) -> bool {
    (a.0 as u128) * (b.1 as u128) == (b.0 as u128) * (a.1 as u128)
}

/// Lowest `cut / vol` over nonempty subsets of `a` with positive volume.
pub fn brute_force_quotient(g: &Graph, a: &[u32]) -> (u64, u64) {
    let mut best: Option<(u64, u64)> = None;
    for mask in 1u32..(1 << a.len()) {
        let set: Vec<u32> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
        let (cut, vol) = naive_cut_volume(g, &set);
        if vol == 0.0 {
            continue;
        }
        let r = (cut as u64, vol as u64);
        if best.is_none_or(|b| ratio_less(r, b)) {
            best = Some(r);
        }
    }
    best.unwrap()
}

/// Minimum s-t cut capacity of a dense capacity matrix by enumerating every
/// source side.
pub fn brute_force_min_cut(cap: &[Vec<i64>], s: usize, t: usize) -> i64 {
    let n = cap.len();
    let mut best = i64::MAX;
    for mask in 0u32..(1 << n) {
        if mask >> s & 1 == 0 || mask >> t & 1 == 1 {
            continue;
        }
        let mut c = 0;
        for u in 0..n {
            for v in 0..n {
                if mask >> u & 1 == 1 && mask >> v & 1 == 0 {
                    c += cap[u][v];
                }
            }
        }
        best = best.min(c);
    }
    best
}

/// Scans every prefix of the ordering and keeps the first strict minimum.
pub fn prefix_oracle(g: &Graph, x: &SparseEmbedding) -> Option<Vec<u32>> {
    let mut order: Vec<u32> = x.support().filter(|&v| g.degree(v) > 0.0).collect();
    order.sort_by(|&a, &b| {
        let ra = x.get(a) / g.degree(a);
        let rb = x.get(b) / g.degree(b);
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    let mut best: Option<((u64, u64), usize)> = None;
    for k in 1..=order.len() {
        let (cut, den) = naive_ratio(g, &order[..k]);
        if k == g.n() || den == 0 {
            continue;
        }
        if best.is_none_or(|(b, _)| ratio_less((cut, den), b)) {
            best = Some(((cut, den), k));
        }
    }
    best.map(|(_, k)| {
        let mut set = order[..k].to_vec();
        set.sort_unstable();
        set
    })
}
