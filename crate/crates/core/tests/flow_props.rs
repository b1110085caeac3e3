mod common;

use localclust::{
    flow_improve, max_flow, mqi, simple_local, Cluster, FlowNetwork, Graph, ImproveResult,
};
use proptest::prelude::*;

use common::{arb_graph, brute_force_min_cut, brute_force_quotient, random_connected, ratio_eq};

/// Dense capacity matrix with source 0 and sink n-1.
fn arb_network() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec((any::<bool>(), 1i64..20), n), n)
            .prop_map(move |rows| {
                let mut cap = vec![vec![0i64; n]; n];
                for u in 0..n {
                    for v in 0..n {
                        let (present, c) = rows[u][v];
                        if present && u != v && v != 0 && u != n - 1 {
                            cap[u][v] = c;
                        }
                    }
                }
                cap
            })
    })
}

fn cut_of(cap: &[Vec<i64>], side: &[usize]) -> i64 {
    let n = cap.len();
    let inside = |v: usize| side.contains(&v);
    (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| inside(u) && !inside(v))
        .map(|(u, v)| cap[u][v])
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn max_flow_equals_enumerated_min_cut(cap in arb_network()) {
        let n = cap.len();
        let mut net = FlowNetwork::new(n, 0, n - 1);
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if cap[u][v] > 0 {
                    arcs.push((u, v, net.add_arc(u, v, cap[u][v]).unwrap()));
                }
            }
        }
        let result = max_flow(&mut net);
        let expected = brute_force_min_cut(&cap, 0, n - 1);
        prop_assert_eq!(result.value, expected);
        prop_assert_eq!(cut_of(&cap, &result.source_side), expected);

        // Feasible flow: capacities respected, conservation away from s and t.
        let mut balance = vec![0i64; n];
        for &(u, v, id) in &arcs {
            let f = net.flow_on(id);
            prop_assert!(0 <= f && f <= cap[u][v]);
            balance[u] -= f;
            balance[v] += f;
        }
        for (v, b) in balance.iter().enumerate().take(n - 1).skip(1) {
            prop_assert_eq!(*b, 0, "node {}", v);
        }
        prop_assert_eq!(balance[n - 1], expected);

        // The returned side is contained in every minimum cut's source side.
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 || mask >> (n - 1) & 1 == 1 {
                continue;
            }
            let side: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if cut_of(&cap, &side) == expected {
                for v in &result.source_side {
                    prop_assert!(side.contains(v));
                }
            }
        }
    }
}

/// A connected-ish random graph and a set holding at most half the volume.
fn graph_and_cluster(max_set: usize) -> impl Strategy<Value = (Graph, Cluster)> {
    (arb_graph(4, 22), any::<u64>()).prop_filter_map("needs a valid small cluster", move |(g, pick)| {
        let n = g.n() as u32;
        let candidates: Vec<u32> = (0..n).filter(|&v| g.degree(v) > 0.0).collect();
        if candidates.len() < 2 {
            return None;
        }
        let k = 1 + (pick % max_set.min(candidates.len() - 1) as u64) as usize;
        let mut state = pick;
        let mut set = Vec::new();
        for _ in 0..k {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let v = candidates[(state >> 33) as usize % candidates.len()];
            if !set.contains(&v) {
                set.push(v);
            }
        }
        let c = Cluster::from_set(&g, &set).ok()?;
        (c.volume() <= g.total_volume() / 2.0).then_some((g, c))
    })
}

fn check_contract(g: &Graph, input: &Cluster, r: &ImproveResult) -> Result<(), TestCaseError> {
    prop_assert!(r.cluster.verify(g));
    prop_assert!(r.cluster.cmp_conductance(input, g).is_le());
    prop_assert_eq!(r.conductance_trace[0], input.conductance());
    prop_assert_eq!(*r.conductance_trace.last().unwrap(), r.cluster.conductance());
    for w in r.conductance_trace.windows(2) {
        prop_assert!(w[1] < w[0]);
    }
    prop_assert!(r.conductance_trace.len() <= r.iterations);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn mqi_reaches_brute_force_optimum((g, a) in graph_and_cluster(15)) {
        let r = mqi(&g, &a).unwrap();
        check_contract(&g, &a, &r)?;
        prop_assert!(r.cluster.members().iter().all(|v| a.contains(*v)));
        let best = brute_force_quotient(&g, a.members());
        prop_assert!(ratio_eq((r.cluster.cut() as u64, r.cluster.volume() as u64), best));
    }

    #[test]
    fn mqi_is_idempotent((g, a) in graph_and_cluster(15)) {
        let once = mqi(&g, &a).unwrap();
        let twice = mqi(&g, &once.cluster).unwrap();
        prop_assert_eq!(twice.cluster, once.cluster);
        prop_assert_eq!(twice.iterations, 1);
    }

    #[test]
    fn flow_improve_never_worsens((g, a) in graph_and_cluster(10)) {
        let r = flow_improve(&g, &a).unwrap();
        check_contract(&g, &a, &r)?;
    }

    #[test]
    fn simple_local_never_worsens((g, a) in graph_and_cluster(10), delta in 0.0f64..5.0) {
        let r = simple_local(&g, &a, delta).unwrap();
        check_contract(&g, &a, &r)?;
    }

    #[test]
    fn simple_local_without_penalty_is_flow_improve((g, a) in graph_and_cluster(10)) {
        let local = simple_local(&g, &a, 0.0).unwrap();
        let global = flow_improve(&g, &a).unwrap();
        prop_assert_eq!(local.cluster, global.cluster);
        prop_assert_eq!(local.conductance_trace, global.conductance_trace);
    }

    #[test]
    fn large_delta_stays_inside((g, a) in graph_and_cluster(10)) {
        let r = simple_local(&g, &a, 1e6).unwrap();
        prop_assert!(r.cluster.members().iter().all(|v| a.contains(*v)));
        check_contract(&g, &a, &r)?;
    }

    #[test]
    fn oversized_inputs_are_complemented(g in arb_graph(4, 14), pick in any::<u32>()) {
        let n = g.n() as u32;
        let set: Vec<u32> = (0..n).filter(|v| (pick >> (v % 32)) & 1 == 1).collect();
        let Ok(a) = Cluster::from_set(&g, &set) else { return Ok(()) };
        prop_assume!(a.volume() > g.total_volume() / 2.0);
        for r in [mqi(&g, &a).unwrap(), flow_improve(&g, &a).unwrap(), simple_local(&g, &a, 0.5).unwrap()] {
            prop_assert!(r.complemented);
            prop_assert!(r.cluster.cmp_conductance(&a, &g).is_le());
        }
    }
}

#[test]
fn simple_local_touches_the_same_vertices_when_far_components_are_added() {
    let near = localclust::generate::ring_of_cliques(6, 8).unwrap();
    let mut set: Vec<u32> = (0..8).collect();
    set.extend([8, 9]);
    let a = Cluster::from_set(&near, &set).unwrap();
    let base = simple_local(&near, &a, 0.5).unwrap();
    for size in [50, 500, 5000] {
        let g = near.disjoint_union(&random_connected(size, size, 3)).unwrap();
        let a = Cluster::from_set(&g, &set).unwrap();
        let r = simple_local(&g, &a, 0.5).unwrap();
        assert_eq!(r.touched, base.touched);
        assert_eq!(r.cluster.members(), base.cluster.members());
    }
    assert_eq!(base.cluster.members(), (0..8).collect::<Vec<u32>>().as_slice());
}
