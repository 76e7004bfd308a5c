use irregularity_lab::indices::{albertson, forgotten, general_albertson, sigma, zagreb_second};
use irregularity_lab::verify::tolerance;
use irregularity_lab::{canonical_code, graph6, Exponent, Graph, PowValue};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..=9).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        (Just(n), proptest::collection::vec(any::<bool>(), len), Just(pairs))
            .prop_map(|(n, keep, pairs)| {
                let edges: Vec<_> = pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
                Graph::new(n, &edges).unwrap()
            })
    })
}

fn permuted(g: Graph) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    let n = g.n();
    (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn sigma_is_forgotten_minus_twice_second_zagreb(g in graph_strategy()) {
        prop_assert_eq!(sigma(&g) as i128, forgotten(&g) as i128 - 2 * zagreb_second(&g) as i128);
    }

    #[test]
    fn graph6_round_trips(g in graph_strategy()) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn invariants_ignore_labels((g, perm) in graph_strategy().prop_flat_map(permuted)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
        prop_assert_eq!(albertson(&g), albertson(&h));
        let p = Exponent::new(2.5).unwrap();
        let (a, b) = (general_albertson(&g, p).pow.as_f64(), general_albertson(&h, p).pow.as_f64());
        // Float sums depend on edge order.
        prop_assert!((a - b).abs() <= tolerance(a, b));
    }

    #[test]
    fn integer_exponents_stay_exact(g in graph_strategy(), p in 1u32..=4) {
        let v = general_albertson(&g, Exponent::new(p as f64).unwrap());
        prop_assert!(matches!(v.pow, PowValue::Exact(_)));
        if p == 1 {
            prop_assert_eq!(v.pow, PowValue::Exact(albertson(&g) as u128));
        }
    }
}
