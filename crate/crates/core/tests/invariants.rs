//! Structural invariants of token digraphs on random small hosts.

use proptest::prelude::*;

use tokengraph::coloring::{
    bidirected_clique_number, dichromatic_number, is_acyclic_partition, lift_acyclic_partition,
};
use tokengraph::cycles::{
    girth, is_degree_balanced, is_token_walk, is_unilateral, is_unilateral_by_reachability,
    predict_token_unilateral, token_path,
};
use tokengraph::kernels::{
    find_kernel, has_odd_cycle_by_enumeration, has_odd_oriented_cycle, is_kernel,
};
use tokengraph::scc::{scc, verify_condensation_theorem};
use tokengraph::subset::binomial;
use tokengraph::token::{clean_commutes, verify_digraph_property, Property};
use tokengraph::{token_digraph, Digraph, TokenConfig};

/// A digraph on 2..=6 vertices and a token count `1..n`.
fn host_and_k() -> impl Strategy<Value = (Digraph, usize)> {
    (2usize..=6).prop_flat_map(|n| {
        let pairs = n * (n - 1);
        (proptest::collection::vec(any::<bool>(), pairs), 1..n).prop_map(move |(bits, k)| {
            let arcs = (0..n)
                .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
                .zip(bits)
                .filter(|&(_, b)| b)
                .map(|(a, _)| a);
            (Digraph::from_arcs(n, arcs).unwrap(), k)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn node_and_arc_counts((d, k) in host_and_k()) {
        let f = token_digraph(&d, k).unwrap();
        prop_assert_eq!(f.node_count() as u64, binomial(d.n(), k));
        prop_assert_eq!(f.digraph().arc_count() as u64, d.arc_count() as u64 * binomial(d.n() - 2, k - 1));
        for (i, c) in f.configs().iter().enumerate() {
            prop_assert_eq!(c.k(), k);
            prop_assert_eq!(f.node_of(*c), Some(i));
        }
    }

    #[test]
    fn complement_reversal_and_clean((d, k) in host_and_k()) {
        prop_assert!(verify_digraph_property(Property::Complement, &d, k).unwrap().pass);
        prop_assert!(verify_digraph_property(Property::Reversal, &d, k).unwrap().pass);
        prop_assert!(clean_commutes(&d, k).unwrap());
    }

    #[test]
    fn condensation_matches_model((d, k) in host_and_k()) {
        prop_assert!(verify_condensation_theorem(&d, k).unwrap().pass);
        let f = token_digraph(&d, k).unwrap();
        let (hd, hf) = (scc(&d), scc(f.digraph()));
        prop_assert_eq!(hd.is_strongly_connected(), hf.is_strongly_connected());
        prop_assert_eq!(hd.is_acyclic(), hf.is_acyclic());
    }

    #[test]
    fn girth_and_balance((d, k) in host_and_k()) {
        let f = token_digraph(&d, k).unwrap();
        prop_assert_eq!(girth(&d), girth(f.digraph()));
        prop_assert_eq!(is_degree_balanced(&d), is_degree_balanced(f.digraph()));
    }

    #[test]
    fn unilateral_prediction((d, k) in host_and_k()) {
        let f = token_digraph(&d, k).unwrap();
        let actual = is_unilateral(f.digraph()).unilateral;
        prop_assert_eq!(actual, is_unilateral_by_reachability(f.digraph()));
        let pred = predict_token_unilateral(&d, k).unwrap();
        prop_assert_eq!(pred.unilateral, actual);
        prop_assert_ne!(pred.certificate_valid, Some(false));
    }

    #[test]
    fn token_paths_follow_reachability((d, k) in host_and_k(), a in any::<u64>(), b in any::<u64>()) {
        let f = token_digraph(&d, k).unwrap();
        let (x, y) = (a as usize % f.node_count(), b as usize % f.node_count());
        let (ca, cb): (TokenConfig, TokenConfig) = (f.config(x), f.config(y));
        let strong = scc(&d).is_strongly_connected();
        match token_path(&d, ca, cb) {
            Ok(walk) => {
                prop_assert!(strong);
                prop_assert!(is_token_walk(&d, &walk));
                prop_assert_eq!(walk.first(), Some(&ca));
                prop_assert_eq!(walk.last(), Some(&cb));
                let mut distinct = walk.clone();
                distinct.sort();
                distinct.dedup();
                prop_assert_eq!(distinct.len(), walk.len());
            }
            Err(_) => prop_assert!(!strong),
        }
    }

    #[test]
    fn odd_cycles_and_kernels((d, k) in host_and_k()) {
        let f = token_digraph(&d, k).unwrap();
        prop_assert_eq!(has_odd_oriented_cycle(&d), has_odd_cycle_by_enumeration(&d));
        if !has_odd_oriented_cycle(&d) {
            prop_assert!(!has_odd_oriented_cycle(f.digraph()));
            let kernel = find_kernel(f.digraph());
            prop_assert!(kernel.as_ref().is_some_and(|s| is_kernel(f.digraph(), s)));
        }
    }

    #[test]
    fn clique_formula((d, k) in host_and_k()) {
        let f = token_digraph(&d, k).unwrap();
        let n = d.n();
        let expected = bidirected_clique_number(&d).unwrap().min((n - k + 1).max(k + 1));
        prop_assert_eq!(bidirected_clique_number(f.digraph()).unwrap(), expected);
    }

    #[test]
    fn lifted_partition_is_acyclic((d, k) in host_and_k()) {
        let p = dichromatic_number(&d).unwrap();
        let f = token_digraph(&d, k).unwrap();
        let lifted = lift_acyclic_partition(&d, &p, k).unwrap();
        prop_assert!(is_acyclic_partition(f.digraph(), &lifted));
        prop_assert!(lifted.r <= p.r);
        prop_assert!(dichromatic_number(f.digraph()).unwrap().r <= p.r);
    }
}
