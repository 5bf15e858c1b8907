//! Strongly connected components, condensations, and the vector model of
//! `CD(F_k(D))`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::digraph::{cartesian_product, Digraph};
use crate::error::{Error, Result};
use crate::subset;
use crate::token::{check_k, token_digraph, TokenConfig, TokenDigraph};

/// Components listed in a topological order of the condensation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
}

impl SccDecomposition {
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.components.len() <= 1
    }

    /// True when every component is a single vertex (the digraph has no loops).
    pub fn is_acyclic(&self) -> bool {
        self.components.iter().all(|c| c.len() == 1)
    }
}

/// Tarjan's algorithm, iterative. Tarjan emits components in reverse
/// topological order; the result is flipped and then certified.
pub fn scc(d: &Digraph) -> SccDecomposition {
    const UNSEEN: usize = usize::MAX;
    let n = d.n();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    // (vertex, position in its out-list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let outs = d.out_neighbors(v);
            if *pos < outs.len() {
                let w = outs[*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack holds the component");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                found.push(comp);
            }
        }
    }

    found.reverse();
    let mut component_of = vec![0; n];
    for (i, comp) in found.iter().enumerate() {
        for &v in comp {
            component_of[v] = i;
        }
    }
    let dec = SccDecomposition {
        components: found,
        component_of,
    };
    debug_assert!(d
        .arcs()
        .all(|(u, v)| dec.component_of[u] <= dec.component_of[v]));
    dec
}

/// `CD(D)`: vertex `i` is component `i` of [`scc`].
pub fn condensation(d: &Digraph) -> Digraph {
    condensation_of(d, &scc(d))
}

pub fn condensation_of(d: &Digraph, dec: &SccDecomposition) -> Digraph {
    let arcs: BTreeSet<(usize, usize)> = d
        .arcs()
        .map(|(u, v)| (dec.component_of(u), dec.component_of(v)))
        .filter(|(a, b)| a != b)
        .collect();
    Digraph::from_arcs(dec.count(), arcs).expect("condensation arcs are distinct")
}

/// The dag on `V_k(c_1, ..., c_t)` whose arcs are `(i, j)`-moves along arcs of `CD(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondensationModel {
    pub sizes: Vec<usize>,
    pub k: usize,
    /// Vectors in decreasing lexicographic order.
    pub vertices: Vec<Vec<usize>>,
    /// Arcs as index pairs into `vertices`, sorted.
    pub arcs: Vec<(usize, usize)>,
}

impl CondensationModel {
    /// Builds the model from component sizes and the arcs of `CD(D)`.
    pub fn new(sizes: &[usize], cd_arcs: &[(usize, usize)], k: usize) -> Self {
        let mut vertices = Vec::new();
        let mut current = Vec::with_capacity(sizes.len());
        enumerate_vectors(sizes, k, &mut current, &mut vertices);
        let lookup: BTreeMap<&[usize], usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_slice(), i))
            .collect();
        let mut arcs = Vec::new();
        for (a, vec) in vertices.iter().enumerate() {
            for &(i, j) in cd_arcs {
                if vec[i] > 0 && vec[j] < sizes[j] {
                    let mut moved = vec.clone();
                    moved[i] -= 1;
                    moved[j] += 1;
                    arcs.push((a, lookup[moved.as_slice()]));
                }
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        CondensationModel {
            sizes: sizes.to_vec(),
            k,
            vertices,
            arcs,
        }
    }

    pub fn digraph(&self) -> Digraph {
        Digraph::from_arcs(self.vertices.len(), self.arcs.iter().copied())
            .expect("model arcs are distinct")
    }

    pub fn index_of(&self, v: &[usize]) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }
}

fn enumerate_vectors(
    sizes: &[usize],
    remaining: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let i = cur.len();
    if i == sizes.len() {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let capacity_after: usize = sizes[i + 1..].iter().sum();
    for x in (0..=sizes[i].min(remaining)).rev() {
        if remaining - x > capacity_after {
            break;
        }
        cur.push(x);
        enumerate_vectors(sizes, remaining - x, cur, out);
        cur.pop();
    }
}

pub fn condensation_model(d: &Digraph, k: usize) -> Result<CondensationModel> {
    check_k(d.n(), k)?;
    let dec = scc(d);
    let cd = condensation_of(d, &dec);
    Ok(CondensationModel::new(
        &dec.sizes(),
        &cd.arcs().collect::<Vec<_>>(),
        k,
    ))
}

/// Token counts per component, in the order of [`scc`].
pub fn associated_vector(dec: &SccDecomposition, a: TokenConfig) -> Vec<usize> {
    let mut v = vec![0; dec.count()];
    for x in a.members() {
        v[dec.component_of(x)] += 1;
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondensationReport {
    pub instance: String,
    pub scc_count: usize,
    pub model_vertex_count: usize,
    pub pass: bool,
    pub first_violation: Option<String>,
}

/// Checks that `CD(F_k(D))` is arc-for-arc the vector model, and that strong
/// connectivity and acyclicity transfer between `D` and `F_k(D)`.
pub fn verify_condensation_theorem(d: &Digraph, k: usize) -> Result<CondensationReport> {
    let f = token_digraph(d, k)?;
    let model = condensation_model(d, k)?;
    let dec = scc(d);
    let fdec = scc(f.digraph());
    let mut report = CondensationReport {
        instance: format!("{d:?} k={k}"),
        scc_count: fdec.count(),
        model_vertex_count: model.vertices.len(),
        pass: true,
        first_violation: None,
    };
    if let Err(msg) = compare_with_model(&f, &dec, &fdec, &model) {
        report.pass = false;
        report.first_violation = Some(msg);
        return Ok(report);
    }
    if dec.is_strongly_connected() != fdec.is_strongly_connected() {
        report.pass = false;
        report.first_violation = Some("strong connectivity differs between D and F_k(D)".into());
    } else if dec.is_acyclic() != fdec.is_acyclic() {
        report.pass = false;
        report.first_violation = Some("acyclicity differs between D and F_k(D)".into());
    }
    Ok(report)
}

fn compare_with_model(
    f: &TokenDigraph,
    dec: &SccDecomposition,
    fdec: &SccDecomposition,
    model: &CondensationModel,
) -> std::result::Result<(), String> {
    // Each SCC of F_k(D) -> its common associated vector -> model vertex.
    let mut to_model = Vec::with_capacity(fdec.count());
    for comp in fdec.components() {
        let vec = associated_vector(dec, f.config(comp[0]));
        if let Some(&other) = comp
            .iter()
            .find(|&&x| associated_vector(dec, f.config(x)) != vec)
        {
            return Err(format!(
                "nodes {:?} and {:?} share an SCC but not a vector",
                f.config(comp[0]).members(),
                f.config(other).members()
            ));
        }
        let idx = model
            .index_of(&vec)
            .ok_or_else(|| format!("vector {vec:?} is not a model vertex"))?;
        to_model.push(idx);
    }
    let distinct: BTreeSet<usize> = to_model.iter().copied().collect();
    if distinct.len() != to_model.len() {
        return Err("two SCCs map to the same vector".into());
    }
    if to_model.len() != model.vertices.len() {
        return Err(format!(
            "{} SCCs but {} model vertices",
            to_model.len(),
            model.vertices.len()
        ));
    }
    let induced: BTreeSet<(usize, usize)> = condensation_of(f.digraph(), fdec)
        .arcs()
        .map(|(a, b)| (to_model[a], to_model[b]))
        .collect();
    let expected: BTreeSet<(usize, usize)> = model.arcs.iter().copied().collect();
    if let Some(&(a, b)) = induced.symmetric_difference(&expected).next() {
        return Err(format!(
            "arc {:?} -> {:?} present on only one side",
            model.vertices[a], model.vertices[b]
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub config: Vec<usize>,
    pub vector: Vec<usize>,
    pub scc_size: usize,
    pub product_size: usize,
    pub pass: bool,
    pub first_violation: Option<String>,
}

/// Certifies that the SCC of `F_k(D)` containing `a` is isomorphic to the
/// Cartesian product of `F_{k_j}(C_j)` over components with `k_j > 0`, through
/// the map `B -> (B ∩ C_j)_j`.
pub fn verify_component_decomposition(d: &Digraph, a: TokenConfig) -> Result<DecompositionReport> {
    let k = a.k();
    if !a.fits(d.n()) {
        return Err(Error::precondition(
            "configuration uses vertices outside the digraph",
        ));
    }
    check_k(d.n(), k)?;
    let f = token_digraph(d, k)?;
    let fdec = scc(f.digraph());
    verify_component_decomposition_in(d, &f, &fdec, a)
}

/// Same as [`verify_component_decomposition`] with a prebuilt `F_k(D)` and its SCCs.
pub fn verify_component_decomposition_in(
    d: &Digraph,
    f: &TokenDigraph,
    fdec: &SccDecomposition,
    a: TokenConfig,
) -> Result<DecompositionReport> {
    let dec = scc(d);
    let vector = associated_vector(&dec, a);
    let start = f
        .node_of(a)
        .ok_or_else(|| Error::precondition("configuration is not a node of F_k(D)"))?;
    let comp_nodes = &fdec.components()[fdec.component_of(start)];

    // Factors F_{k_j}(C_j), with C_j relabelled in increasing vertex order.
    let factors: Vec<(usize, TokenDigraph)> = dec
        .components()
        .iter()
        .enumerate()
        .filter(|&(j, _)| vector[j] > 0)
        .map(|(j, c)| (j, TokenDigraph::build(&d.induced(c), vector[j])))
        .collect();
    let product = factors.iter().fold(Digraph::empty(1), |acc, (_, t)| {
        cartesian_product(&acc, t.digraph())
    });

    // Position of each host vertex inside its own component.
    let mut local = vec![0; d.n()];
    for c in dec.components() {
        for (i, &v) in c.iter().enumerate() {
            local[v] = i;
        }
    }
    let image = |b: TokenConfig| -> usize {
        factors.iter().fold(0, |acc, (j, t)| {
            let part = b
                .members()
                .into_iter()
                .filter(|&x| dec.component_of(x) == *j)
                .fold(0u64, |m, x| m | (1 << local[x]));
            acc * t.node_count() + subset::rank(part) as usize
        })
    };

    let mut report = DecompositionReport {
        config: a.members(),
        vector,
        scc_size: comp_nodes.len(),
        product_size: product.n(),
        pass: true,
        first_violation: None,
    };
    let fail = |mut r: DecompositionReport, msg: String| {
        r.pass = false;
        r.first_violation = Some(msg);
        Ok(r)
    };
    if comp_nodes.len() != product.n() {
        return fail(report, "SCC and product sizes differ".into());
    }
    let mut preimage = vec![usize::MAX; product.n()];
    for &x in comp_nodes {
        let y = image(f.config(x));
        if preimage[y] != usize::MAX {
            return fail(
                report,
                format!("map is not injective at {:?}", f.config(x).members()),
            );
        }
        preimage[y] = x;
    }
    for &x in comp_nodes {
        for &y in f.digraph().out_neighbors(x) {
            if fdec.component_of(y) == fdec.component_of(x)
                && !product.has_arc(image(f.config(x)), image(f.config(y)))
            {
                return fail(
                    report,
                    format!(
                        "arc {:?} -> {:?} has no product image",
                        f.config(x).members(),
                        f.config(y).members()
                    ),
                );
            }
        }
    }
    for (p, q) in product.arcs() {
        if !f.digraph().has_arc(preimage[p], preimage[q]) {
            return fail(
                report,
                format!(
                    "product arc {:?} -> {:?} missing in F_k(D)",
                    f.config(preimage[p]).members(),
                    f.config(preimage[q]).members()
                ),
            );
        }
    }
    report.pass = true;
    Ok(report)
}

/// One configuration per distinct associated vector, each the colex-first
/// node carrying it.
pub fn vector_representatives(d: &Digraph, f: &TokenDigraph) -> Vec<TokenConfig> {
    let dec = scc(d);
    let mut seen = BTreeSet::new();
    f.configs()
        .iter()
        .copied()
        .filter(|&c| seen.insert(associated_vector(&dec, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{directed_cycle, directed_path};

    fn two_digons() -> Digraph {
        Digraph::from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn scc_examples() {
        let c5 = scc(&directed_cycle(5));
        assert_eq!(c5.components(), &[vec![0, 1, 2, 3, 4]]);

        let p4 = scc(&directed_path(4));
        assert_eq!(p4.components(), &[vec![0], vec![1], vec![2], vec![3]]);

        assert_eq!(scc(&two_digons()).components(), &[vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn topological_order_respects_arcs() {
        // Arcs point "backwards" in vertex order.
        let d = Digraph::from_arcs(5, [(4, 3), (3, 2), (2, 3), (1, 0), (2, 1)]).unwrap();
        let dec = scc(&d);
        for (u, v) in d.arcs() {
            assert!(dec.component_of(u) <= dec.component_of(v));
        }
        assert_eq!(dec.sizes(), vec![1, 2, 1, 1]);
    }

    #[test]
    fn condensation_examples() {
        assert_eq!(condensation(&directed_cycle(4)), Digraph::empty(1));
        assert_eq!(condensation(&directed_path(4)), directed_path(4));
    }

    #[test]
    fn model_for_sizes_4_2_1() {
        let m = CondensationModel::new(&[4, 2, 1], &[(0, 1), (1, 2), (0, 2)], 2);
        assert_eq!(
            m.vertices,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1]
            ]
        );
        // Worked by hand:
        // (2,0,0)->(1,1,0) [1,2]  (2,0,0)->(1,0,1) [1,3]
        // (1,1,0)->(0,2,0) [1,2]  (1,1,0)->(1,0,1) [2,3]  (1,1,0)->(0,1,1) [1,3]
        // (1,0,1)->(0,1,1) [1,2]  (0,2,0)->(0,1,1) [2,3]
        assert_eq!(
            m.arcs,
            vec![(0, 1), (0, 2), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4)]
        );
        assert!(crate::scc::scc(&m.digraph()).is_acyclic());
    }

    #[test]
    fn model_of_strong_digraph_is_a_point() {
        let m = condensation_model(&directed_cycle(5), 3).unwrap();
        assert_eq!(m.vertices, vec![vec![3]]);
        assert!(m.arcs.is_empty());
        assert!(condensation_model(&directed_cycle(5), 5).is_err());
    }

    #[test]
    fn associated_vectors() {
        let p4 = directed_path(4);
        let dec = scc(&p4);
        let a = TokenConfig::new(&[0, 3]).unwrap();
        assert_eq!(associated_vector(&dec, a), vec![1, 0, 0, 1]);

        let c4 = directed_cycle(4);
        let a = TokenConfig::new(&[1, 2]).unwrap();
        assert_eq!(associated_vector(&scc(&c4), a), vec![2]);
    }

    #[test]
    fn condensation_theorem_small_cases() {
        for k in 1..5 {
            let r = verify_condensation_theorem(&directed_cycle(5), k).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.scc_count, 1);
        }
        let r = verify_condensation_theorem(&directed_path(4), 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.scc_count, 6);
    }

    #[test]
    fn decomposition_examples() {
        let c4 = directed_cycle(4);
        let r = verify_component_decomposition(&c4, TokenConfig::new(&[0, 2]).unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!(r.scc_size, 6);

        let d = two_digons();
        let r = verify_component_decomposition(&d, TokenConfig::new(&[0, 3]).unwrap()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.vector, vec![1, 1]);
        assert_eq!(r.scc_size, 4);

        let p4 = directed_path(4);
        let r = verify_component_decomposition(&p4, TokenConfig::new(&[0, 3]).unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!((r.scc_size, r.product_size), (1, 1));
    }

    #[test]
    fn decomposition_handles_full_components() {
        // Two tokens filling the first digon entirely.
        let d = two_digons();
        let r = verify_component_decomposition(&d, TokenConfig::new(&[0, 1]).unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!(r.scc_size, 1);
    }
}
