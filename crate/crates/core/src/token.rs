//! Token digraphs `F_k(D)` and token graphs `F_k(G)`.
//!
//! Node `i` of a token digraph is the k-subset of colex rank `i`. An arc
//! `A -> B` exists when `A \ B = {a}`, `B \ A = {b}` and `(a, b)` is an arc of
//! the host.

use serde::{Deserialize, Serialize};

use crate::digraph::{bidirect, clean_graph, reverse, Digraph, Graph};
use crate::error::{Error, Result};
use crate::subset::{self, binomial, MAX_VERTICES};

/// Upper bound on materialized node counts.
pub const MAX_NODES: u64 = 2_000_000;

/// A k-token configuration: a set of vertex ids held as a mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct TokenConfig(u64);

impl TokenConfig {
    pub fn from_mask(mask: u64) -> Self {
        TokenConfig(mask)
    }

    pub fn new(members: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in members {
            if v >= MAX_VERTICES {
                return Err(Error::TooManyVertices(v + 1));
            }
            if mask & (1 << v) != 0 {
                return Err(Error::precondition(format!(
                    "vertex {v} repeated in configuration"
                )));
            }
            mask |= 1 << v;
        }
        Ok(TokenConfig(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn k(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn members(self) -> Vec<usize> {
        subset::to_vec(self.0)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    /// Complement within `0..n`.
    pub fn complement(self, n: usize) -> Self {
        TokenConfig(!self.0 & subset::full(n))
    }

    /// Slides the token on `from` to `to`.
    pub fn slide(self, from: usize, to: usize) -> Self {
        debug_assert!(self.contains(from) && !self.contains(to));
        TokenConfig(self.0 & !(1 << from) | (1 << to))
    }

    /// `Some((a, b))` when `self \ other = {a}` and `other \ self = {b}`.
    pub fn single_swap(self, other: TokenConfig) -> Option<(usize, usize)> {
        let gone = self.0 & !other.0;
        let came = other.0 & !self.0;
        (gone.count_ones() == 1 && came.count_ones() == 1).then(|| {
            (
                gone.trailing_zeros() as usize,
                came.trailing_zeros() as usize,
            )
        })
    }

    pub(crate) fn fits(self, n: usize) -> bool {
        self.0 & !subset::full(n) == 0
    }
}

impl From<TokenConfig> for Vec<usize> {
    fn from(c: TokenConfig) -> Self {
        c.members()
    }
}

impl TryFrom<Vec<usize>> for TokenConfig {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        TokenConfig::new(&v)
    }
}

/// `F_k(D)` together with its host and the node/subset correspondence.
#[derive(Clone, Debug)]
pub struct TokenDigraph {
    host: Digraph,
    k: usize,
    nodes: Vec<TokenConfig>,
    digraph: Digraph,
}

pub(crate) fn check_k(n: usize, k: usize) -> Result<()> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::TokenCountOutOfRange { k, n });
    }
    Ok(())
}

fn check_size(n: usize, k: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let count = binomial(n, k);
    if count > MAX_NODES {
        return Err(Error::TooLarge(count));
    }
    Ok(())
}

/// Builds `F_k(D)`; requires `1 <= k <= n - 1`.
pub fn token_digraph(d: &Digraph, k: usize) -> Result<TokenDigraph> {
    check_k(d.n(), k)?;
    check_size(d.n(), k)?;
    Ok(TokenDigraph::build(d, k))
}

impl TokenDigraph {
    /// Builds for any `0 <= k <= n`; the degenerate cases are single nodes.
    pub(crate) fn build(host: &Digraph, k: usize) -> TokenDigraph {
        let n = host.n();
        let nodes: Vec<TokenConfig> = subset::k_subsets(n, k).map(TokenConfig).collect();
        let mut arcs = Vec::new();
        for (i, &a) in nodes.iter().enumerate() {
            for from in subset::members(a.0) {
                for &to in host.out_neighbors(from) {
                    if !a.contains(to) {
                        arcs.push((i, subset::rank(a.slide(from, to).0) as usize));
                    }
                }
            }
        }
        let digraph = Digraph::from_arcs(nodes.len(), arcs).expect("token arcs are distinct");
        TokenDigraph {
            host: host.clone(),
            k,
            nodes,
            digraph,
        }
    }

    pub fn host(&self) -> &Digraph {
        &self.host
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn into_digraph(self) -> Digraph {
        self.digraph
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn config(&self, node: usize) -> TokenConfig {
        self.nodes[node]
    }

    pub fn configs(&self) -> &[TokenConfig] {
        &self.nodes
    }

    /// Node index of a configuration, if it is a `k`-subset of the host's vertices.
    pub fn node_of(&self, c: TokenConfig) -> Option<usize> {
        (c.k() == self.k && c.fits(self.host.n())).then(|| subset::rank(c.0) as usize)
    }

    /// The host arc `(a, b)` along which the token slides on arc `from -> to`.
    pub fn arc_witness(&self, from: usize, to: usize) -> Option<(usize, usize)> {
        if !self.digraph.has_arc(from, to) {
            return None;
        }
        self.nodes[from].single_swap(self.nodes[to])
    }

    /// Member lists per node, for sidecar output.
    pub fn node_map(&self) -> Vec<Vec<usize>> {
        self.nodes.iter().map(|c| c.members()).collect()
    }
}

/// `F_k(G)` for an undirected graph.
pub fn token_graph(g: &Graph, k: usize) -> Result<Graph> {
    check_k(g.n(), k)?;
    check_size(g.n(), k)?;
    Ok(token_graph_unchecked(g, k))
}

pub(crate) fn token_graph_unchecked(g: &Graph, k: usize) -> Graph {
    let nodes: Vec<u64> = subset::k_subsets(g.n(), k).collect();
    let mut edges = Vec::new();
    for (i, &a) in nodes.iter().enumerate() {
        for from in subset::members(a) {
            for &to in g.neighbors(from) {
                if a & (1 << to) == 0 {
                    let j = subset::rank(a & !(1 << from) | (1 << to)) as usize;
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    Graph::from_edges(nodes.len(), edges).expect("token edges are distinct")
}

/// One of the three natural isomorphisms between token digraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// `A -> V \ A` maps `F_k(D)` onto `F_{n-k}(reverse D)`.
    Complement,
    /// The identity maps `F_k(D)` onto `reverse(F_k(reverse D))`.
    Reversal,
    /// The identity maps `F_k(bidirect G)` onto `bidirect(F_k(G))`.
    Bidirection,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Complement => "complement",
            Property::Reversal => "reversal",
            Property::Bidirection => "bidirection",
        }
    }
}

/// An arc on one side whose image is missing on the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcViolation {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    /// `"forward"` if the arc is in the source and its image is missing,
    /// `"backward"` for the converse.
    pub direction: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub k: usize,
    pub nodes: usize,
    pub arcs: usize,
    pub pass: bool,
    pub first_violation: Option<ArcViolation>,
}

/// Checks that `map` (a bijection on configurations) carries the arcs of
/// `src` exactly onto the arcs of `dst`.
fn check_arc_bijection(
    src: &TokenDigraph,
    dst: &Digraph,
    dst_node: impl Fn(TokenConfig) -> Option<usize>,
    dst_config: impl Fn(usize) -> TokenConfig,
) -> Option<ArcViolation> {
    let viol = |a: TokenConfig, b: TokenConfig, dir: &str| ArcViolation {
        from: a.members(),
        to: b.members(),
        direction: dir.to_string(),
    };
    let image: Vec<usize> = src
        .configs()
        .iter()
        .map(|&c| dst_node(c).expect("map lands in the target node set"))
        .collect();
    let mut hit = vec![false; dst.n()];
    for &i in &image {
        if std::mem::replace(&mut hit[i], true) {
            let c = dst_config(i);
            return Some(viol(c, c, "not-injective"));
        }
    }
    if image.len() != dst.n() {
        let missing = hit.iter().position(|&h| !h).unwrap_or(0);
        let c = dst_config(missing);
        return Some(viol(c, c, "not-surjective"));
    }
    for (a, b) in src.digraph().arcs() {
        if !dst.has_arc(image[a], image[b]) {
            return Some(viol(src.config(a), src.config(b), "forward"));
        }
    }
    let mut preimage = vec![0; dst.n()];
    for (i, &j) in image.iter().enumerate() {
        preimage[j] = i;
    }
    for (a, b) in dst.arcs() {
        if !src.digraph().has_arc(preimage[a], preimage[b]) {
            return Some(viol(dst_config(a), dst_config(b), "backward"));
        }
    }
    None
}

fn report(
    property: Property,
    src: &TokenDigraph,
    violation: Option<ArcViolation>,
) -> PropertyReport {
    PropertyReport {
        property,
        k: src.k(),
        nodes: src.node_count(),
        arcs: src.digraph().arc_count(),
        pass: violation.is_none(),
        first_violation: violation,
    }
}

/// Property 1 or 2 on a digraph, via the explicit bijection.
pub fn verify_digraph_property(
    property: Property,
    d: &Digraph,
    k: usize,
) -> Result<PropertyReport> {
    let f = token_digraph(d, k)?;
    let n = d.n();
    let violation = match property {
        Property::Complement => {
            let other = token_digraph(&reverse(d), n - k)?;
            check_arc_bijection(
                &f,
                other.digraph(),
                |c| other.node_of(c.complement(n)),
                |i| other.config(i),
            )
        }
        Property::Reversal => {
            let other = token_digraph(&reverse(d), k)?;
            let flipped = reverse(other.digraph());
            check_arc_bijection(&f, &flipped, |c| other.node_of(c), |i| other.config(i))
        }
        Property::Bidirection => {
            return Err(Error::precondition(
                "bidirection takes an undirected graph; use verify_graph_property",
            ));
        }
    };
    Ok(report(property, &f, violation))
}

/// Property 3 on a graph, via the identity bijection.
pub fn verify_graph_property(g: &Graph, k: usize) -> Result<PropertyReport> {
    let f = token_digraph(&bidirect(g), k)?;
    let other = bidirect(&token_graph(g, k)?);
    // token_graph numbers nodes by the same colex ranks.
    let violation = check_arc_bijection(
        &f,
        &other,
        |c| Some(subset::rank(c.mask()) as usize),
        |i| TokenConfig(subset::unrank(i as u64, k)),
    );
    Ok(report(Property::Bidirection, &f, violation))
}

/// `clean(F_k(D)) == F_k(clean(D))`, as labelled graphs.
pub fn clean_commutes(d: &Digraph, k: usize) -> Result<bool> {
    let lhs = clean_graph(token_digraph(d, k)?.digraph());
    let rhs = token_graph(&clean_graph(d), k)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{complete_graph, directed_cycle, directed_path, path_graph};

    #[test]
    fn k1_is_the_host() {
        let d = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        let f = token_digraph(&d, 1).unwrap();
        // {v} has colex rank v.
        assert_eq!(f.digraph(), &d);

        let c5 = directed_cycle(5);
        assert_eq!(token_digraph(&c5, 1).unwrap().digraph(), &c5);
    }

    #[test]
    fn f2_of_directed_triangle() {
        // Pairs in colex order: {0,1}=0, {0,2}=1, {1,2}=2.
        // 0->1 moves {1,2}->{0,2}? no: token on 0 slides to 1 only from sets with 0 and not 1,
        // i.e. {0,2} -> {1,2}. 1->2: {0,1} -> {0,2}. 2->0: {1,2} -> {0,1}.
        let f = token_digraph(&directed_cycle(3), 2).unwrap();
        assert_eq!(f.node_count(), 3);
        let expected = Digraph::from_arcs(3, [(1, 2), (0, 1), (2, 0)]).unwrap();
        assert_eq!(f.digraph(), &expected);
    }

    #[test]
    fn node_count_ignores_arcs() {
        assert_eq!(
            token_digraph(&Digraph::empty(5), 2).unwrap().node_count(),
            10
        );
    }

    #[test]
    fn k_out_of_range() {
        let d = directed_path(3);
        for k in [0, 3, 4] {
            assert!(matches!(
                token_digraph(&d, k),
                Err(Error::TokenCountOutOfRange { .. })
            ));
        }
        assert!(token_digraph(&Digraph::empty(1), 1).is_err());
        assert!(token_graph(&path_graph(3), 3).is_err());
    }

    #[test]
    fn token_graph_examples() {
        // P3 a-b-c, k=2: {a,b} - {a,c} - {b,c}
        let f = token_graph(&path_graph(3), 2).unwrap();
        let expected = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(f, expected);

        assert_eq!(
            token_graph(&complete_graph(3), 2).unwrap(),
            complete_graph(3)
        );
    }

    #[test]
    fn witness_is_the_sliding_arc() {
        let d = directed_cycle(4);
        let f = token_digraph(&d, 2).unwrap();
        for (a, b) in f.digraph().arcs() {
            let (x, y) = f.arc_witness(a, b).unwrap();
            assert!(d.has_arc(x, y));
            assert_eq!(f.config(a).slide(x, y), f.config(b));
        }
        assert_eq!(f.arc_witness(0, 0), None);
    }

    #[test]
    fn property_examples() {
        let c5 = directed_cycle(5);
        assert!(
            verify_digraph_property(Property::Complement, &c5, 2)
                .unwrap()
                .pass
        );
        let d = Digraph::from_arcs(4, [(0, 1), (2, 1), (3, 2)]).unwrap();
        assert!(
            verify_digraph_property(Property::Reversal, &d, 1)
                .unwrap()
                .pass
        );
        assert!(verify_graph_property(&complete_graph(3), 2).unwrap().pass);
        assert!(verify_digraph_property(Property::Bidirection, &d, 1).is_err());
    }

    #[test]
    fn bijection_check_catches_a_wrong_map() {
        // Pretending F_2(C5) is isomorphic to F_2(reverse C5) by the identity must fail.
        let c5 = directed_cycle(5);
        let f = token_digraph(&c5, 2).unwrap();
        let g = token_digraph(&reverse(&c5), 2).unwrap();
        let v = check_arc_bijection(&f, g.digraph(), |c| g.node_of(c), |i| g.config(i));
        assert_eq!(v.unwrap().direction, "forward");
    }

    #[test]
    fn config_serializes_as_member_list() {
        let c = TokenConfig::new(&[4, 1]).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "[1,4]");
        let back: TokenConfig = serde_json::from_str("[1,4]").unwrap();
        assert_eq!(back, c);
        assert!(TokenConfig::new(&[2, 2]).is_err());
    }
}
