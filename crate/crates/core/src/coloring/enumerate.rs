//! Small graphs up to isomorphism, by vertex augmentation.
//!
//! A graph on `n <= 11` vertices is coded as a bitmask over pairs `u < v`
//! (bit `v(v-1)/2 + u`); its canonical code is the minimum over all vertex
//! permutations.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::digraph::Graph;

const MAX_N: usize = 11;

fn pair_bit(u: usize, v: usize) -> u64 {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    1 << (v * (v - 1) / 2 + u)
}

fn code_of(edges: &[(usize, usize)], perm: &[usize]) -> u64 {
    edges
        .iter()
        .fold(0, |m, &(u, v)| m | pair_bit(perm[u], perm[v]))
}

/// Minimum code over all relabellings.
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(g.n() <= MAX_N, "canonical codes are limited to 11 vertices");
    let edges: Vec<_> = g.edges().collect();
    (0..g.n())
        .permutations(g.n())
        .map(|p| code_of(&edges, &p))
        .min()
        .unwrap_or(0)
}

pub fn decode_graph(n: usize, code: u64) -> Graph {
    let edges = (1..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .filter(|&(u, v)| code & pair_bit(u, v) != 0);
    Graph::from_edges(n, edges).expect("decoded edges are valid")
}

fn augment(n: usize, connected: bool) -> BTreeSet<u64> {
    assert!(
        (1..=MAX_N).contains(&n),
        "graph enumeration supports 1..=11 vertices"
    );
    let mut level = BTreeSet::from([0u64]);
    for m in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let parent = decode_graph(m - 1, code);
            let first = u32::from(connected);
            for nbrs in first..1u32 << (m - 1) {
                let mut edges: Vec<_> = parent.edges().collect();
                edges.extend(
                    (0..m - 1)
                        .filter(|&u| nbrs & (1 << u) != 0)
                        .map(|u| (u, m - 1)),
                );
                let g = Graph::from_edges(m, edges).expect("valid edges");
                next.insert(canonical_code(&g));
            }
        }
        level = next;
    }
    level
}

/// Connected graphs on `n` vertices, one per isomorphism class, ordered by
/// canonical code. Every connected graph has a vertex whose removal keeps it
/// connected, so extending connected graphs by a vertex with a non-empty
/// neighbourhood reaches them all.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    augment(n, true)
        .into_iter()
        .map(|c| decode_graph(n, c))
        .collect()
}

/// All graphs on `n` vertices up to isomorphism.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    augment(n, false)
        .into_iter()
        .map(|c| decode_graph(n, c))
        .collect()
}
