//! Simple digraphs and graphs on dense vertex ids `0..n`, plus the standard
//! constructions (reversal, clean graph, bidirection, Cartesian product) and
//! the small families used throughout the crate.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple digraph: no loops, no parallel arcs.
///
/// Adjacency lists are kept sorted so every traversal is deterministic; a
/// flat `n * n` bit matrix answers arc membership in constant time.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    matrix: FixedBitSet,
    arc_count: usize,
}

impl Digraph {
    /// The arcless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            matrix: FixedBitSet::with_capacity(n * n),
            arc_count: 0,
        }
    }

    /// Builds a digraph, rejecting loops, out-of-range endpoints and repeated arcs.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Digraph::empty(n);
        for (u, v) in arcs {
            d.insert_arc(u, v)?;
        }
        d.sort_lists();
        Ok(d)
    }

    fn insert_arc(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let idx = u * self.n + v;
        if self.matrix.put(idx) {
            return Err(Error::DuplicateArc(u, v));
        }
        self.out[u].push(v);
        self.inn[v].push(u);
        self.arc_count += 1;
        Ok(())
    }

    fn sort_lists(&mut self) {
        self.out.iter_mut().for_each(|l| l.sort_unstable());
        self.inn.iter_mut().for_each(|l| l.sort_unstable());
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix.contains(u * self.n + v)
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// The subdigraph induced by `vertices`, relabelled so that `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let arcs = vertices.iter().flat_map(|&u| {
            let index = &index;
            self.out[u]
                .iter()
                .filter(move |&&v| index[v] != usize::MAX)
                .map(move |&v| (index[u], index[v]))
        });
        Digraph::from_arcs(vertices.len(), arcs.collect::<Vec<_>>())
            .expect("induced subdigraph of a simple digraph is simple")
    }

    /// Removes vertex `v`, shifting higher ids down by one.
    pub fn remove_vertex(&self, v: usize) -> Digraph {
        let keep: Vec<usize> = self.vertices().filter(|&w| w != v).collect();
        self.induced(&keep)
    }

    pub fn reverse(&self) -> Digraph {
        reverse(self)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs=[", self.n)?;
        for (i, (u, v)) in self.arcs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        write!(f, "])")
    }
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: FixedBitSet,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            matrix: FixedBitSet::with_capacity(n * n),
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        g.adj.iter_mut().for_each(|l| l.sort_unstable());
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.matrix.put(u * self.n + v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.matrix.insert(v * self.n + u);
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix.contains(u * self.n + v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        Graph::from_edges(vertices.len(), edges)
            .expect("induced subgraph of a simple graph is simple")
    }

    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = self.vertices().filter(|&w| w != v).collect();
        self.induced(&keep)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count * 2 == self.n * self.n.saturating_sub(1)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

pub fn reverse(d: &Digraph) -> Digraph {
    Digraph::from_arcs(d.n(), d.arcs().map(|(u, v)| (v, u)).collect::<Vec<_>>())
        .expect("reversal keeps a digraph simple")
}

/// The clean graph: keeps an edge `uv` exactly when both `(u, v)` and `(v, u)` are arcs.
pub fn clean_graph(d: &Digraph) -> Graph {
    let edges: Vec<_> = d
        .arcs()
        .filter(|&(u, v)| u < v && d.has_arc(v, u))
        .collect();
    Graph::from_edges(d.n(), edges).expect("digons give distinct edges")
}

/// Replaces every edge by a digon.
pub fn bidirect(g: &Graph) -> Digraph {
    let arcs: Vec<_> = g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
    Digraph::from_arcs(g.n(), arcs).expect("bidirection keeps a graph simple")
}

/// Cartesian product. Vertex `(u1, u2)` gets id `u1 * d2.n() + u2`.
pub fn cartesian_product(d1: &Digraph, d2: &Digraph) -> Digraph {
    let n2 = d2.n();
    let mut arcs = Vec::with_capacity(d1.arc_count() * n2 + d2.arc_count() * d1.n());
    for (u1, v1) in d1.arcs() {
        for w in 0..n2 {
            arcs.push((u1 * n2 + w, v1 * n2 + w));
        }
    }
    for w in 0..d1.n() {
        for (u2, v2) in d2.arcs() {
            arcs.push((w * n2 + u2, w * n2 + v2));
        }
    }
    Digraph::from_arcs(d1.n() * n2, arcs).expect("product of simple digraphs is simple")
}

/// Named families.
///
/// Vertex numbering:
/// - `Complete`: `0..n`.
/// - `Cycle`: `0..n` with `i` adjacent to `i + 1 mod n` (directed: `i -> i + 1`).
/// - `Path`: `0..n` with `i` adjacent to `i + 1` (directed: `i -> i + 1`).
/// - `Wheel`: rim `0..n` as a cycle, hub `n` adjacent to every rim vertex; `2n` edges.
/// - `MycielskiOfCycle`: for `C_n`, cycle vertices `0..n`, shadows `n..2n` with
///   shadow `n + i` adjacent to the cycle neighbours of `i`, apex `2n` adjacent
///   to every shadow.
///
/// The directed versions of `Cycle` and `Path` are oriented; the other
/// families are bidirected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Complete,
    Cycle,
    Path,
    Wheel,
    MycielskiOfCycle,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Wheel => "wheel",
            Family::MycielskiOfCycle => "mycielski-of-cycle",
        }
    }

    fn min_size(self) -> usize {
        match self {
            Family::Complete | Family::Path => 1,
            Family::Cycle | Family::Wheel | Family::MycielskiOfCycle => 3,
        }
    }

    fn check(self, n: usize) -> Result<()> {
        if n < self.min_size() {
            return Err(Error::SizeOutOfRange {
                kind: self.name(),
                n,
            });
        }
        Ok(())
    }

    pub fn graph(self, n: usize) -> Result<Graph> {
        self.check(n)?;
        let g = match self {
            Family::Complete => complete_graph(n),
            Family::Cycle => cycle_graph(n),
            Family::Path => path_graph(n),
            Family::Wheel => {
                let edges = (0..n)
                    .map(|i| (i, (i + 1) % n))
                    .chain((0..n).map(|i| (i, n)));
                Graph::from_edges(n + 1, edges).expect("wheel is simple")
            }
            Family::MycielskiOfCycle => mycielski(&cycle_graph(n)),
        };
        Ok(g)
    }

    pub fn digraph(self, n: usize) -> Result<Digraph> {
        self.check(n)?;
        let d = match self {
            Family::Cycle => directed_cycle(n),
            Family::Path => directed_path(n),
            _ => bidirect(&self.graph(n)?),
        };
        Ok(d)
    }
}

pub fn complete_graph(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, edges).expect("complete graph is simple")
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
}

pub fn directed_cycle(n: usize) -> Digraph {
    assert!(n >= 2, "directed cycle needs at least 2 vertices");
    Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

pub fn directed_path(n: usize) -> Digraph {
    Digraph::from_arcs(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
}

/// Mycielski graph: copy of `g`, one shadow per vertex, and an apex joined to all shadows.
pub fn mycielski(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges: Vec<_> = g.edges().collect();
    for (u, v) in g.edges() {
        edges.push((u, n + v));
        edges.push((v, n + u));
    }
    edges.extend((0..n).map(|i| (n + i, 2 * n)));
    Graph::from_edges(2 * n + 1, edges).expect("Mycielski construction is simple")
}

/// Adds `extra` isolated vertices after the existing ones.
pub fn with_isolated(d: &Digraph, extra: usize) -> Digraph {
    Digraph::from_arcs(d.n() + extra, d.arcs().collect::<Vec<_>>()).expect("same arcs")
}

/// Disjoint union; vertices of `b` are shifted by `a.n()`.
pub fn disjoint_union(a: &Digraph, b: &Digraph) -> Digraph {
    let shift = a.n();
    let arcs: Vec<_> = a
        .arcs()
        .chain(b.arcs().map(|(u, v)| (u + shift, v + shift)))
        .collect();
    Digraph::from_arcs(a.n() + b.n(), arcs).expect("disjoint union of simple digraphs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reverse_small_cases() {
        let d = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(reverse(&d), Digraph::from_arcs(2, [(1, 0)]).unwrap());

        let c3 = directed_cycle(3);
        let expected = Digraph::from_arcs(3, [(0, 2), (2, 1), (1, 0)]).unwrap();
        assert_eq!(reverse(&c3), expected);

        assert_eq!(reverse(&Digraph::empty(4)), Digraph::empty(4));
    }

    #[test]
    fn clean_graph_keeps_only_digons() {
        let digon = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(clean_graph(&digon), Graph::from_edges(2, [(0, 1)]).unwrap());

        let d = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(clean_graph(&d), Graph::from_edges(3, [(0, 1)]).unwrap());

        assert_eq!(clean_graph(&directed_cycle(3)), Graph::empty(3));
    }

    #[test]
    fn bidirect_small_cases() {
        let k2 = complete_graph(2);
        assert_eq!(
            bidirect(&k2),
            Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap()
        );
        assert_eq!(bidirect(&cycle_graph(3)).arc_count(), 6);
        assert_eq!(bidirect(&Graph::empty(3)), Digraph::empty(3));
        assert_eq!(clean_graph(&bidirect(&cycle_graph(5))), cycle_graph(5));
    }

    #[test]
    fn cartesian_product_counts() {
        let arc = directed_path(2);
        let sq = cartesian_product(&arc, &arc);
        assert_eq!(sq.n(), 4);
        assert_eq!(sq.arc_count(), 4);
        // (0,0)->(1,0), (0,1)->(1,1), (0,0)->(0,1), (1,0)->(1,1)
        for (u, v) in [(0, 2), (1, 3), (0, 1), (2, 3)] {
            assert!(sq.has_arc(u, v));
        }

        let digon = bidirect(&complete_graph(2));
        assert_eq!(cartesian_product(&digon, &digon).arc_count(), 8);

        let c5 = directed_cycle(5);
        assert_eq!(cartesian_product(&c5, &Digraph::empty(1)), c5);
    }

    #[test]
    fn rejects_bad_arcs() {
        assert!(matches!(
            Digraph::from_arcs(2, [(0, 0)]),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            Digraph::from_arcs(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(matches!(
            Digraph::from_arcs(2, [(0, 1), (0, 1)]),
            Err(Error::DuplicateArc(0, 1))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
    }

    #[test]
    fn families() {
        let c5 = Family::Cycle.digraph(5).unwrap();
        assert_eq!(c5.arc_count(), 5);
        assert!((0..5).all(|i| c5.has_arc(i, (i + 1) % 5)));

        let w5 = Family::Wheel.graph(5).unwrap();
        assert_eq!(w5.n(), 6);
        assert_eq!(w5.edge_count(), 10);
        assert_eq!(w5.degree(5), 5);

        let m5 = Family::MycielskiOfCycle.graph(5).unwrap();
        assert_eq!(m5.n(), 11);
        // 5 cycle edges, 10 shadow edges, 5 apex edges
        assert_eq!(m5.edge_count(), 20);

        assert!(matches!(
            Family::Cycle.graph(2),
            Err(Error::SizeOutOfRange {
                kind: "cycle",
                n: 2
            })
        ));
        assert!(Family::Wheel.digraph(2).is_err());
        assert!(Family::Path.graph(0).is_err());
        assert_eq!(Family::Path.digraph(1).unwrap().n(), 1);
        assert_eq!(Family::Complete.digraph(4).unwrap().arc_count(), 12);
    }

    #[test]
    fn wheel_edge_count_formula() {
        for n in 3..12 {
            assert_eq!(Family::Wheel.graph(n).unwrap().edge_count(), 2 * n);
        }
    }

    #[test]
    fn induced_relabels_in_order() {
        let d = Digraph::from_arcs(4, [(0, 1), (1, 3), (3, 0), (2, 3)]).unwrap();
        let sub = d.induced(&[3, 0, 1]);
        assert_eq!(
            sub,
            Digraph::from_arcs(3, [(1, 2), (2, 0), (0, 1)]).unwrap()
        );
    }
}
