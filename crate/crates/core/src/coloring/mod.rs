//! Cliques, proper colourings, acyclic partitions and the dichromatic number.
//!
//! The exact solvers keep adjacency as `u128` rows, so they accept at most
//! 128 vertices.

mod conjecture;
mod enumerate;

pub use conjecture::{
    k8_minus_c5, k8_minus_c5_study, scan_conjecture, ConjectureEntry, ConjectureReport,
    ConjectureStatus, K8C5Report,
};
pub use enumerate::{all_graphs, canonical_code, connected_graphs, decode_graph};

use serde::{Deserialize, Serialize};

use crate::cycles::{circumference, girth};
use crate::digraph::{clean_graph, Digraph, Graph};
use crate::error::{Error, Result};
use crate::scc::scc;
use crate::token::{clean_commutes, token_digraph};

const LIMIT: usize = 128;

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

fn graph_rows(g: &Graph) -> Result<Vec<u128>> {
    if g.n() > LIMIT {
        return Err(Error::SolverLimit(g.n()));
    }
    Ok(g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect())
}

/// Greedy colour classes of `p`, as `(vertex, colour)` with colours from 1
/// in non-decreasing order.
fn color_sort(adj: &[u128], p: u128) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p.count_ones() as usize);
    let mut rest = p;
    let mut c = 0;
    while rest != 0 {
        c += 1;
        let mut avail = rest;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            out.push((v, c));
            rest &= !(1 << v);
            avail &= !(1 << v) & !adj[v];
        }
    }
    out
}

struct CliqueSearch<'a> {
    adj: &'a [u128],
    cur: Vec<usize>,
    best: Vec<usize>,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, mut p: u128) {
        for &(v, c) in color_sort(self.adj, p).iter().rev() {
            if self.cur.len() + c <= self.best.len() {
                return;
            }
            self.cur.push(v);
            let np = p & self.adj[v];
            if np == 0 {
                if self.cur.len() > self.best.len() {
                    self.best = self.cur.clone();
                }
            } else {
                self.expand(np);
            }
            self.cur.pop();
            p &= !(1 << v);
        }
    }
}

fn max_clique_rows(adj: &[u128]) -> Vec<usize> {
    let mut s = CliqueSearch {
        adj,
        cur: Vec::new(),
        best: Vec::new(),
    };
    let all = if adj.len() == LIMIT {
        u128::MAX
    } else {
        (1u128 << adj.len()) - 1
    };
    s.expand(all);
    s.best.sort_unstable();
    s.best
}

/// A maximum clique, by branch and bound with greedy-colouring bounds.
pub fn max_clique(g: &Graph) -> Result<Vec<usize>> {
    Ok(max_clique_rows(&graph_rows(g)?))
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    Ok(max_clique(g)?.len())
}

/// Largest set of vertices pairwise joined by digons.
pub fn bidirected_clique_number(d: &Digraph) -> Result<usize> {
    clique_number(&clean_graph(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueReport {
    pub n: usize,
    pub k: usize,
    pub host_clique: usize,
    /// Measured on the token digraph.
    pub token_clique: usize,
    /// `min(host_clique, max(n - k + 1, k + 1))`.
    pub predicted: usize,
    pub clean_commutes: bool,
    pub pass: bool,
}

pub fn verify_clique_formula(d: &Digraph, k: usize) -> Result<CliqueReport> {
    let f = token_digraph(d, k)?;
    let n = d.n();
    let host_clique = bidirected_clique_number(d)?;
    let token_clique = bidirected_clique_number(f.digraph())?;
    let predicted = host_clique.min((n - k + 1).max(k + 1));
    let clean_commutes = clean_commutes(d, k)?;
    Ok(CliqueReport {
        n,
        k,
        host_clique,
        token_clique,
        predicted,
        clean_commutes,
        pass: clean_commutes && token_clique == predicted,
    })
}

/// Vertex colours in `0..r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperColoring {
    pub colors: Vec<usize>,
    pub r: usize,
}

pub fn is_proper_coloring(g: &Graph, c: &ProperColoring) -> bool {
    c.colors.len() == g.n()
        && c.colors.iter().all(|&x| x < c.r)
        && g.edges().all(|(u, v)| c.colors[u] != c.colors[v])
}

const UNCOLORED: usize = usize::MAX;

/// Exact `r`-colourability by DSATUR branching with forward checking.
struct ColorSearch<'a> {
    adj: &'a [u128],
    r: usize,
    colors: Vec<usize>,
    /// Neighbours of each vertex holding each colour, indexed `v * r + c`.
    count: Vec<u16>,
    /// Colours seen around each vertex.
    sat: Vec<u128>,
    uncolored: u128,
}

impl<'a> ColorSearch<'a> {
    fn new(adj: &'a [u128], r: usize) -> Self {
        let n = adj.len();
        ColorSearch {
            adj,
            r,
            colors: vec![UNCOLORED; n],
            count: vec![0; n * r],
            sat: vec![0; n],
            uncolored: bits_below(n),
        }
    }

    /// Colours `v`; `false` if some uncoloured neighbour has no colour left.
    fn place(&mut self, v: usize, c: usize) -> bool {
        self.colors[v] = c;
        self.uncolored &= !(1 << v);
        let mut ok = true;
        for w in bits(self.adj[v] & self.uncolored) {
            let x = &mut self.count[w * self.r + c];
            *x += 1;
            if *x == 1 {
                self.sat[w] |= 1 << c;
                if self.sat[w].count_ones() as usize == self.r {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unplace(&mut self, v: usize, c: usize) {
        for w in bits(self.adj[v] & self.uncolored) {
            let x = &mut self.count[w * self.r + c];
            *x -= 1;
            if *x == 0 {
                self.sat[w] &= !(1 << c);
            }
        }
        self.colors[v] = UNCOLORED;
        self.uncolored |= 1 << v;
    }

    fn pick(&self) -> usize {
        bits(self.uncolored)
            .max_by_key(|&v| {
                (
                    self.sat[v].count_ones(),
                    (self.adj[v] & self.uncolored).count_ones(),
                    std::cmp::Reverse(v),
                )
            })
            .expect("some vertex is uncoloured")
    }

    fn solve(&mut self, used: usize) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        let v = self.pick();
        for c in 0..self.r.min(used + 1) {
            if self.sat[v] & (1 << c) != 0 {
                continue;
            }
            if self.place(v, c) && self.solve(used.max(c + 1)) {
                return true;
            }
            self.unplace(v, c);
        }
        false
    }
}

fn bits_below(n: usize) -> u128 {
    if n == LIMIT {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Colour `clique[i]` with `i`, then search. `None` if not `r`-colourable.
fn exact_coloring(adj: &[u128], clique: &[usize], r: usize) -> Option<Vec<usize>> {
    if clique.len() > r {
        return None;
    }
    let mut s = ColorSearch::new(adj, r);
    for (c, &v) in clique.iter().enumerate() {
        if !s.place(v, c) {
            return None;
        }
    }
    s.solve(clique.len()).then_some(s.colors)
}

/// DSATUR heuristic colouring.
fn dsatur_greedy(adj: &[u128]) -> Vec<usize> {
    let n = adj.len();
    let mut s = ColorSearch::new(adj, n.max(1));
    while s.uncolored != 0 {
        let v = s.pick();
        let c = (0..n)
            .find(|&c| s.sat[v] & (1 << c) == 0)
            .expect("n colours suffice");
        s.place(v, c);
    }
    s.colors
}

/// Exact chromatic number with a witness colouring.
///
/// Lower bound from a maximum clique, upper bound from DSATUR, then each
/// colour count in between is decided exactly with the clique precoloured.
pub fn chromatic_number(g: &Graph) -> Result<ProperColoring> {
    let adj = graph_rows(g)?;
    if g.n() == 0 {
        return Ok(ProperColoring {
            colors: Vec::new(),
            r: 0,
        });
    }
    let clique = max_clique_rows(&adj);
    let greedy = dsatur_greedy(&adj);
    let ub = greedy.iter().max().map_or(0, |&c| c + 1);
    for r in clique.len()..ub {
        if let Some(colors) = exact_coloring(&adj, &clique, r) {
            return Ok(ProperColoring { colors, r });
        }
    }
    Ok(ProperColoring {
        colors: greedy,
        r: ub,
    })
}

/// Whether `g` is `r`-colourable.
pub fn is_colorable(g: &Graph, r: usize) -> Result<bool> {
    let adj = graph_rows(g)?;
    if g.n() == 0 {
        return Ok(true);
    }
    let clique = max_clique_rows(&adj);
    Ok(exact_coloring(&adj, &clique, r).is_some())
}

/// Classes `0..r`, each inducing an acyclic subdigraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicPartition {
    pub colors: Vec<usize>,
    pub r: usize,
}

impl AcyclicPartition {
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v] == c)
            .collect()
    }
}

pub fn is_acyclic_partition(d: &Digraph, p: &AcyclicPartition) -> bool {
    p.colors.len() == d.n()
        && p.colors.iter().all(|&c| c < p.r)
        && (0..p.r).all(|c| scc(&d.induced(&p.class(c))).is_acyclic())
}

struct Rows {
    out: Vec<u128>,
    inn: Vec<u128>,
}

impl Rows {
    fn new(d: &Digraph) -> Self {
        let row = |nb: &[usize]| nb.iter().fold(0u128, |m, &w| m | 1 << w);
        Rows {
            out: d.vertices().map(|v| row(d.out_neighbors(v))).collect(),
            inn: d.vertices().map(|v| row(d.in_neighbors(v))).collect(),
        }
    }

    /// Whether adding `v` to the acyclic class `class` closes a cycle.
    fn closes_cycle(&self, v: usize, class: u128) -> bool {
        let mut reach = self.out[v] & class;
        let mut frontier = reach;
        while frontier != 0 {
            if reach & self.inn[v] != 0 {
                return true;
            }
            let mut next = 0;
            for w in bits(frontier) {
                next |= self.out[w] & class;
            }
            frontier = next & !reach;
            reach |= frontier;
        }
        reach & self.inn[v] != 0
    }
}

struct PartitionSearch<'a> {
    rows: &'a Rows,
    order: Vec<usize>,
    r: usize,
    classes: Vec<u128>,
    colors: Vec<usize>,
}

impl PartitionSearch<'_> {
    fn solve(&mut self, i: usize, used: usize) -> bool {
        let Some(&v) = self.order.get(i) else {
            return true;
        };
        for c in 0..self.r.min(used + 1) {
            if self.rows.closes_cycle(v, self.classes[c]) {
                continue;
            }
            self.classes[c] |= 1 << v;
            self.colors[v] = c;
            if self.solve(i + 1, used.max(c + 1)) {
                return true;
            }
            self.classes[c] &= !(1 << v);
        }
        false
    }
}

/// Breadth-first order, so each vertex has earlier neighbours to clash with.
fn bfs_order(d: &Digraph) -> Vec<usize> {
    let mut seen = vec![false; d.n()];
    let mut order = Vec::with_capacity(d.n());
    for s in d.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            let v = order[i];
            for &w in d.out_neighbors(v).iter().chain(d.in_neighbors(v)) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order
}

/// Exact dichromatic number of a strongly connected digraph.
fn dichromatic_strong(d: &Digraph) -> Result<Vec<usize>> {
    let n = d.n();
    if n <= 1 {
        return Ok(vec![0; n]);
    }
    let rows = Rows::new(d);
    let order = bfs_order(d);
    let lb = bidirected_clique_number(d)?.max(2);
    for r in lb..=n {
        let mut s = PartitionSearch {
            rows: &rows,
            order: order.clone(),
            r,
            classes: vec![0; r],
            colors: vec![0; n],
        };
        if s.solve(0, 0) {
            return Ok(s.colors);
        }
    }
    unreachable!("singleton classes are acyclic")
}

/// Exact dichromatic number with a witness, as the maximum over strongly
/// connected components.
pub fn dichromatic_number(d: &Digraph) -> Result<AcyclicPartition> {
    if d.n() > LIMIT {
        return Err(Error::SolverLimit(d.n()));
    }
    let mut colors = vec![0; d.n()];
    let mut r = usize::from(d.n() > 0);
    for comp in scc(d).components() {
        if comp.len() == 1 {
            continue;
        }
        let part = dichromatic_strong(&d.induced(comp))?;
        for (i, &v) in comp.iter().enumerate() {
            colors[v] = part[i];
            r = r.max(part[i] + 1);
        }
    }
    Ok(AcyclicPartition { colors, r })
}

/// Colours each configuration by the sum of its members' colours mod `r`.
pub fn lift_acyclic_partition(
    d: &Digraph,
    c: &AcyclicPartition,
    k: usize,
) -> Result<AcyclicPartition> {
    if !is_acyclic_partition(d, c) {
        return Err(Error::precondition("input is not an acyclic partition"));
    }
    let f = token_digraph(d, k)?;
    let colors = f
        .configs()
        .iter()
        .map(|a| a.members().into_iter().map(|v| c.colors[v]).sum::<usize>() % c.r)
        .collect();
    Ok(AcyclicPartition { colors, r: c.r })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorderoBound {
    pub girth: usize,
    pub circumference: usize,
    pub bound: usize,
}

/// `ceil((c - 1) / (g - 1)) + 1` from exact girth and circumference.
pub fn cordero_bound(d: &Digraph) -> Result<CorderoBound> {
    let (Some(g), Some(c)) = (girth(d), circumference(d)) else {
        return Err(Error::precondition("digraph is acyclic"));
    };
    Ok(CorderoBound {
        girth: g,
        circumference: c,
        bound: (c - 1).div_ceil(g - 1) + 1,
    })
}

/// First substring of the form `X Y^j Z` (`j >= 1`, letters pairwise
/// distinct), as an inclusive index range. `s` must use exactly three letters.
pub fn find_special_substring(s: &str) -> Result<(usize, usize)> {
    let chars: Vec<char> = s.chars().collect();
    let mut alphabet = chars.clone();
    alphabet.sort_unstable();
    alphabet.dedup();
    if alphabet.len() != 3 {
        return Err(Error::precondition(format!(
            "string uses {} distinct letters, need exactly 3",
            alphabet.len()
        )));
    }
    // Runs as (letter, start, end inclusive).
    let mut runs: Vec<(char, usize, usize)> = Vec::new();
    for (i, &ch) in chars.iter().enumerate() {
        match runs.last_mut() {
            Some(run) if run.0 == ch => run.2 = i,
            _ => runs.push((ch, i, i)),
        }
    }
    let w = runs
        .windows(3)
        .find(|w| w[0].0 != w[2].0)
        .expect("three letters force a special substring");
    Ok((w[0].2, w[2].1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{
        bidirect, complete_graph, cycle_graph, directed_cycle, directed_path, Family,
    };
    use crate::token::token_graph;
    use proptest::prelude::*;

    /// Chromatic number by trying every assignment of `r` colours.
    fn brute_chromatic(g: &Graph) -> usize {
        let n = g.n();
        let edges: Vec<_> = g.edges().collect();
        (1..=n.max(1))
            .find(|&r| {
                let total = r.pow(n as u32);
                (0..total).any(|mut x| {
                    let col: Vec<usize> = (0..n)
                        .map(|_| {
                            let c = x % r;
                            x /= r;
                            c
                        })
                        .collect();
                    edges.iter().all(|&(u, v)| col[u] != col[v])
                })
            })
            .unwrap_or(0)
    }

    /// Dichromatic number by trying every assignment of `r` classes.
    fn brute_dichromatic(d: &Digraph) -> usize {
        let n = d.n();
        (1..=n.max(1))
            .find(|&r| {
                (0..r.pow(n as u32)).any(|mut x| {
                    let colors = (0..n)
                        .map(|_| {
                            let c = x % r;
                            x /= r;
                            c
                        })
                        .collect();
                    is_acyclic_partition(d, &AcyclicPartition { colors, r })
                })
            })
            .unwrap_or(0)
    }

    #[test]
    fn clique_examples() {
        assert_eq!(clique_number(&complete_graph(5)).unwrap(), 5);
        assert_eq!(clique_number(&cycle_graph(5)).unwrap(), 2);
        assert_eq!(clique_number(&k8_minus_c5()).unwrap(), 5);
        assert_eq!(
            bidirected_clique_number(&bidirect(&complete_graph(4))).unwrap(),
            4
        );
        assert_eq!(bidirected_clique_number(&directed_cycle(3)).unwrap(), 1);
        let d = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(bidirected_clique_number(&d).unwrap(), 2);
    }

    #[test]
    fn clique_formula_examples() {
        let r = verify_clique_formula(&bidirect(&complete_graph(5)), 2).unwrap();
        assert_eq!((r.token_clique, r.predicted), (4, 4));
        assert!(r.pass);
        let r = verify_clique_formula(&directed_cycle(5), 2).unwrap();
        assert_eq!((r.token_clique, r.predicted), (1, 1));
        let r = verify_clique_formula(&bidirect(&complete_graph(4)), 3).unwrap();
        assert_eq!((r.token_clique, r.predicted), (4, 4));
    }

    #[test]
    fn chromatic_examples() {
        let chi = |g: &Graph| {
            let c = chromatic_number(g).unwrap();
            assert!(is_proper_coloring(g, &c));
            c.r
        };
        assert_eq!(chi(&token_graph(&complete_graph(4), 2).unwrap()), 3);
        assert_eq!(chi(&token_graph(&complete_graph(5), 2).unwrap()), 5);
        assert_eq!(
            chi(&token_graph(&Family::Wheel.graph(5).unwrap(), 2).unwrap()),
            4
        );
        assert_eq!(chi(&cycle_graph(5)), 3);
        assert_eq!(chi(&Graph::empty(0)), 0);
        assert_eq!(chi(&Graph::empty(3)), 1);
        assert!(!is_colorable(&cycle_graph(7), 2).unwrap());
    }

    #[test]
    fn dichromatic_examples() {
        let dchi = |d: &Digraph| {
            let p = dichromatic_number(d).unwrap();
            assert!(is_acyclic_partition(d, &p));
            p.r
        };
        assert_eq!(dchi(&directed_cycle(5)), 2);
        assert_eq!(dchi(&bidirect(&complete_graph(3))), 3);
        assert_eq!(dchi(&directed_path(4)), 1);
        assert_eq!(
            dchi(&token_digraph(&directed_cycle(5), 2).unwrap().into_digraph()),
            2
        );
    }

    #[test]
    fn lift_examples() {
        for (d, k) in [
            (directed_cycle(5), 2),
            (directed_path(4), 2),
            (bidirect(&complete_graph(3)), 2),
        ] {
            let p = dichromatic_number(&d).unwrap();
            let lifted = lift_acyclic_partition(&d, &p, k).unwrap();
            let f = token_digraph(&d, k).unwrap();
            assert!(is_acyclic_partition(f.digraph(), &lifted));
            assert_eq!(lifted.r, p.r);
        }
        let bad = AcyclicPartition {
            colors: vec![0; 3],
            r: 1,
        };
        assert!(lift_acyclic_partition(&directed_cycle(3), &bad, 1).is_err());
    }

    #[test]
    fn cordero_examples() {
        let b = cordero_bound(&directed_cycle(5)).unwrap();
        assert_eq!((b.girth, b.circumference, b.bound), (5, 5, 2));
        assert_eq!(
            cordero_bound(&bidirect(&complete_graph(3))).unwrap().bound,
            3
        );
        assert_eq!(
            cordero_bound(&bidirect(&complete_graph(4))).unwrap().bound,
            4
        );
        assert!(cordero_bound(&directed_path(3)).is_err());
    }

    #[test]
    fn special_substring_examples() {
        assert_eq!(find_special_substring("ABC").unwrap(), (0, 2));
        assert_eq!(find_special_substring("AABBAC").unwrap(), (3, 5));
        assert!(find_special_substring("AAA").is_err());
        assert!(find_special_substring("ABCD").is_err());
    }

    #[test]
    fn exact_solvers_match_brute_force_on_small_graphs() {
        for g in all_graphs(5) {
            assert_eq!(
                chromatic_number(&g).unwrap().r,
                brute_chromatic(&g),
                "{g:?}"
            );
            let w = max_clique(&g).unwrap();
            for (i, &a) in w.iter().enumerate() {
                assert!(w[i + 1..].iter().all(|&b| g.has_edge(a, b)));
            }
        }
    }

    fn digraph_strategy(max_n: usize) -> impl Strategy<Value = Digraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let arcs = (0..n)
                    .flat_map(|u| (0..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| u != v && bits[u * n + v]);
                Digraph::from_arcs(n, arcs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn dichromatic_is_exact_and_max_over_components(d in digraph_strategy(6)) {
            let p = dichromatic_number(&d).unwrap();
            prop_assert!(is_acyclic_partition(&d, &p));
            prop_assert_eq!(p.r, brute_dichromatic(&d));
            let dec = scc(&d);
            let per = dec.components().iter()
                .map(|c| brute_dichromatic(&d.induced(c)))
                .max()
                .unwrap_or(0);
            prop_assert_eq!(p.r, per);
        }

        #[test]
        fn lift_never_increases_dichromatic_number(d in digraph_strategy(5), k in 1usize..4) {
            prop_assume!(k < d.n());
            let p = dichromatic_number(&d).unwrap();
            let lifted = lift_acyclic_partition(&d, &p, k).unwrap();
            let f = token_digraph(&d, k).unwrap();
            prop_assert!(is_acyclic_partition(f.digraph(), &lifted));
            prop_assert!(dichromatic_number(f.digraph()).unwrap().r <= p.r);
        }

        #[test]
        fn special_substring_matches_pattern(s in "[ABC]{0,20}") {
            match find_special_substring(&s) {
                Ok((i, j)) => {
                    let t: Vec<char> = s.chars().collect();
                    prop_assert!(i + 2 <= j && j < t.len());
                    let (x, y, z) = (t[i], t[i + 1], t[j]);
                    prop_assert!(x != y && y != z && x != z);
                    prop_assert!(t[i + 1..j].iter().all(|&c| c == y));
                }
                Err(_) => prop_assert!(!(s.contains('A') && s.contains('B') && s.contains('C'))),
            }
        }
    }
}
