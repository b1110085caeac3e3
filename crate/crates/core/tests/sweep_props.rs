mod common;

use localclust::{sweep_cut, Error, Graph, SparseEmbedding};
use proptest::prelude::*;

use common::{arb_graph, prefix_oracle};

/// Values drawn from a small grid scaled by degree, so that `x/deg` ties are
/// common.
fn graph_and_embedding() -> impl Strategy<Value = (Graph, SparseEmbedding)> {
    arb_graph(2, 12).prop_flat_map(|g| {
        let n = g.n();
        let degrees = g.degrees().to_vec();
        (
            Just(g),
            proptest::collection::vec((0u32..4, any::<bool>(), 0.0f64..1.0), n).prop_map(
                move |draws| {
                    SparseEmbedding::from_pairs(draws.iter().enumerate().map(|(v, &(k, tie, u))| {
                        let x = if tie { k as f64 * degrees[v] / 4.0 } else { u * k as f64 };
                        (v as u32, x)
                    }))
                },
            ),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sweep_matches_prefix_oracle((g, x) in graph_and_embedding()) {
        match (sweep_cut(&g, &x), prefix_oracle(&g, &x)) {
            (Ok(c), Some(expected)) => {
                prop_assert_eq!(c.members(), expected.as_slice());
                prop_assert!(c.verify(&g));
            }
            (Err(Error::EmptyEmbedding | Error::Domain(_)), None) => {}
            (got, expected) => prop_assert!(false, "sweep {:?} vs oracle {:?}", got, expected),
        }
    }
}
