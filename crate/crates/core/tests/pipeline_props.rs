mod common;

use std::collections::BTreeMap;

use localclust::pipelines::{
    assign_labels, compute_ncp, evaluate_recovery, predict_labels, NcpConfig, NcpSpec, SizeBins,
};
use localclust::{Cluster, DiffusionParams, Graph, SeedSet, SparseEmbedding, SpectralMethod};
use proptest::prelude::*;

use common::{arb_graph, random_connected};

fn ncp_config(spec: NcpSpec, max_size: usize, rng_seed: u64) -> NcpConfig {
    NcpConfig {
        spec,
        bins: SizeBins::log_spaced(max_size, 5).unwrap(),
        seeds_per_bin: 2,
        rng_seed,
        threads: 1,
        degree_biased: false,
        all: false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ncp_records_are_reproducible(graph_seed in any::<u64>(), rng_seed in any::<u64>(), l1 in any::<bool>(), all in any::<bool>()) {
        let g = random_connected(60, 90, graph_seed);
        let spec = if l1 { NcpSpec::l1reg() } else { NcpSpec::acl() };
        let mut cfg = ncp_config(spec, 30, rng_seed);
        cfg.all = all;
        let records = compute_ncp(&g, &cfg).unwrap();
        for r in &records {
            prop_assert!(cfg.bins.bounds().contains(&(r.bin_lo, r.bin_hi)));
            let Some(best) = &r.best else { continue };
            prop_assert!(r.bin_lo <= best.size && best.size <= r.bin_hi);
            let c = Cluster::from_set(&g, &best.members).unwrap();
            prop_assert_eq!(c.conductance(), best.conductance);
            prop_assert_eq!(c.cut(), best.cut);
            prop_assert_eq!(c.volume(), best.volume);
            prop_assert_eq!(c.len(), best.size);
        }
        prop_assert_eq!(compute_ncp(&g, &cfg).unwrap(), records.clone());
        cfg.threads = 3;
        prop_assert_eq!(compute_ncp(&g, &cfg).unwrap(), records);
    }
}

fn graph_vectors_seeds() -> impl Strategy<Value = (Graph, BTreeMap<u32, SparseEmbedding>, BTreeMap<u32, SeedSet>)> {
    arb_graph(3, 15).prop_flat_map(|g| {
        let n = g.n();
        (
            Just(g),
            proptest::collection::vec(proptest::collection::vec(0u32..5, n), 1..4),
            proptest::collection::vec(any::<proptest::sample::Index>(), 1..4),
        )
            .prop_map(|(g, raw, picks)| {
                let mut vectors = BTreeMap::new();
                let mut seeds = BTreeMap::new();
                let mut used = Vec::new();
                for (c, values) in raw.iter().enumerate() {
                    let x = SparseEmbedding::from_pairs(
                        values
                            .iter()
                            .enumerate()
                            .filter(|&(v, _)| g.degree(v as u32) > 0.0)
                            .map(|(v, &k)| (v as u32, k as f64 * 0.37)),
                    );
                    vectors.insert(c as u32 * 3, x);
                    let candidates: Vec<u32> =
                        (0..g.n() as u32).filter(|&v| g.degree(v) > 0.0 && !used.contains(&v)).collect();
                    if let (Some(pick), false) = (picks.get(c), candidates.is_empty()) {
                        let s = candidates[pick.index(candidates.len())];
                        used.push(s);
                        seeds.insert(c as u32 * 3, SeedSet::single(&g, s).unwrap());
                    }
                }
                (g, vectors, seeds)
            })
    })
}

proptest! {
    #[test]
    fn common_scaling_keeps_labels((g, vectors, seeds) in graph_vectors_seeds(), power in -20i32..20) {
        prop_assume!(!seeds.is_empty());
        let base = assign_labels(&g, &vectors, &seeds).unwrap();
        let factor = 2f64.powi(power);
        let scaled: BTreeMap<u32, SparseEmbedding> =
            vectors.iter().map(|(&c, x)| (c, x.scaled(factor))).collect();
        let again = assign_labels(&g, &scaled, &seeds).unwrap();
        prop_assert_eq!(&again.labels, &base.labels);

        for v in 0..g.n() as u32 {
            let seeded = seeds.iter().find(|(_, s)| s.contains(v)).map(|(&c, _)| c);
            let all_zero = vectors.values().all(|x| x.get(v) == 0.0);
            match seeded {
                Some(c) => prop_assert_eq!(base.labels[v as usize], Some(c)),
                None => {
                    prop_assert_eq!(base.labels[v as usize].is_none(), all_zero);
                    if let Some(c) = base.labels[v as usize] {
                        // argmax, ties to the lowest class
                        let score = |k: u32| vectors[&k].get(v) / g.degree(v);
                        for &k in vectors.keys() {
                            prop_assert!(score(k) < score(c) || (score(k) == score(c) && k >= c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_class_labels_its_support(graph_seed in any::<u64>(), seed in 0u32..40, l1 in any::<bool>()) {
        let g = random_connected(40, 30, graph_seed);
        let method = if l1 { SpectralMethod::L1Reg } else { SpectralMethod::Acl };
        let params = DiffusionParams::default().with_alpha(0.1).with_eps(1e-4).with_rho(1e-3);
        let seeds = SeedSet::single(&g, seed).unwrap();
        let x = localclust::diffusion::diffuse(&g, &seeds, &params, method).unwrap();
        let classes = BTreeMap::from([(7u32, seeds)]);
        let a = predict_labels(&g, &classes, &params, method).unwrap();
        for v in 0..g.n() as u32 {
            let expected = (x.get(v) > 0.0 || v == seed).then_some(7);
            prop_assert_eq!(a.labels[v as usize], expected);
        }
    }

    #[test]
    fn recovery_swap_exchanges_precision_and_recall(g in arb_graph(3, 14), pa in any::<u32>(), pb in any::<u32>()) {
        let pick = |bits: u32| -> Vec<u32> { (0..g.n() as u32).filter(|v| bits >> (v % 32) & 1 == 1).collect() };
        let (Ok(a), Ok(b)) = (Cluster::from_set(&g, &pick(pa)), Cluster::from_set(&g, &pick(pb))) else {
            return Ok(());
        };
        let ab = evaluate_recovery(&g, &a, &b);
        let ba = evaluate_recovery(&g, &b, &a);
        prop_assert_eq!(ab.precision, ba.recall);
        prop_assert_eq!(ab.recall, ba.precision);
        prop_assert_eq!(ab.precision_cardinality, ba.recall_cardinality);
        prop_assert_eq!(ab.recall_cardinality, ba.precision_cardinality);
        for x in [ab.precision, ab.recall, ab.precision_cardinality, ab.recall_cardinality] {
            prop_assert!((0.0..=1.0).contains(&x));
        }
        let positive = a.members().iter().chain(b.members()).all(|&v| g.degree(v) > 0.0);
        if positive {
            prop_assert_eq!(ab.precision == 1.0 && ab.recall == 1.0, a.members() == b.members());
        }
    }
}

#[test]
fn bridged_cliques_are_labelled_by_side() {
    let g = localclust::generate::clique_pair(10).unwrap();
    let classes = BTreeMap::from([
        (1u32, SeedSet::single(&g, 2).unwrap()),
        (2u32, SeedSet::single(&g, 15).unwrap()),
    ]);
    for method in [SpectralMethod::Acl, SpectralMethod::L1Reg] {
        let params = DiffusionParams::default().with_alpha(0.1).with_eps(1e-7).with_rho(1e-5);
        let a = predict_labels(&g, &classes, &params, method).unwrap();
        for v in 0..20 {
            assert_eq!(a.labels[v], Some(if v < 10 { 1 } else { 2 }), "{method:?} vertex {v}");
        }
    }
}
