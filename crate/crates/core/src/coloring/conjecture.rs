//! Scanning small graphs for `chi(F_2(G)) < chi(G)` with `G` non-complete,
//! and the `K_8` minus `C_5` study.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{chromatic_number, clique_number, is_proper_coloring, ProperColoring};
use crate::digraph::Graph;
use crate::error::Result;
use crate::subset::binomial;
use crate::token::{token_graph, token_graph_unchecked};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureStatus {
    /// Non-complete and `chi(F_2) = chi`.
    Consistent,
    /// `K_n`, `n` even, with `chi(F_2) = n - 1`.
    CompleteEven,
    /// `K_n`, `n` odd, with `chi(F_2) = n`.
    CompleteOdd,
    /// Non-complete with `chi(F_2) < chi`.
    Counterexample,
    /// Anything else: `chi(F_2) > chi`, or a complete graph off its value.
    Violation,
    /// Fewer than two vertices.
    TooSmall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureEntry {
    pub graph_id: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub chi: usize,
    pub chi_f2: usize,
    pub omega: usize,
    pub max_degree: usize,
    /// `chi(G - v) = chi(G) - 1` for every `v`.
    pub critical: bool,
    /// `chi(F_k)` for `k = 1, 2, ..` up to `n/2`, while `F_k` fits the solver.
    pub chi_by_k: Vec<usize>,
    pub status: ConjectureStatus,
    /// For counterexamples: `chi > 3`, critical, `Delta >= chi`, `chi > omega`.
    pub filters_hold: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub graphs: usize,
    pub counterexamples: Vec<String>,
    pub violations: Vec<String>,
    /// Non-complete graphs with `chi(F_k) < chi(F_{k-1})` for some `1 < k <= n/2`.
    pub drops: Vec<String>,
    pub entries: Vec<ConjectureEntry>,
    pub pass: bool,
}

fn chi(g: &Graph) -> Result<usize> {
    let c = chromatic_number(g)?;
    assert!(
        is_proper_coloring(g, &c),
        "solver returned an improper colouring"
    );
    Ok(c.r)
}

fn scan_one(id: &str, g: &Graph) -> Result<ConjectureEntry> {
    let n = g.n();
    let chi_g = chi(g)?;
    let omega = clique_number(g)?;
    let critical = (0..n).all(|v| chi(&g.remove_vertex(v)).is_ok_and(|c| c + 1 == chi_g));
    let mut chi_by_k = vec![];
    for k in (1..=n / 2).take_while(|&k| binomial(n, k) <= super::LIMIT as u64) {
        chi_by_k.push(chi(&token_graph(g, k)?)?);
    }
    // F_2(K_2) is a single node, outside the usual range of k.
    let chi_f2 = if n >= 2 {
        chi(&token_graph_unchecked(g, 2))?
    } else {
        0
    };
    let complete = g.is_complete();
    let status = match (n, complete) {
        (0 | 1, _) => ConjectureStatus::TooSmall,
        (_, true) if n.is_multiple_of(2) && chi_f2 + 1 == n => ConjectureStatus::CompleteEven,
        (_, true) if n % 2 == 1 && chi_f2 == n => ConjectureStatus::CompleteOdd,
        (_, false) if chi_f2 == chi_g => ConjectureStatus::Consistent,
        (_, false) if chi_f2 < chi_g => ConjectureStatus::Counterexample,
        _ => ConjectureStatus::Violation,
    };
    let filters_hold = (status == ConjectureStatus::Counterexample)
        .then(|| chi_g > 3 && critical && g.max_degree() >= chi_g && chi_g > omega);
    Ok(ConjectureEntry {
        graph_id: id.to_string(),
        n,
        edges: g.edges().collect(),
        chi: chi_g,
        chi_f2,
        omega,
        max_degree: g.max_degree(),
        critical,
        chi_by_k,
        status,
        filters_hold,
    })
}

/// Computes `chi(G)` and `chi(F_2(G))` exactly for every graph, in parallel,
/// keeping input order.
pub fn scan_conjecture(graphs: &[(String, Graph)]) -> Result<ConjectureReport> {
    let entries = graphs
        .par_iter()
        .map(|(id, g)| scan_one(id, g))
        .collect::<Result<Vec<_>>>()?;
    let ids = |pred: &dyn Fn(&ConjectureEntry) -> bool| {
        entries
            .iter()
            .filter(|e| pred(e))
            .map(|e| e.graph_id.clone())
            .collect::<Vec<_>>()
    };
    let counterexamples = ids(&|e| e.status == ConjectureStatus::Counterexample);
    // A counterexample failing the necessary filters contradicts their proof.
    let violations =
        ids(&|e| e.status == ConjectureStatus::Violation || e.filters_hold == Some(false));
    let drops = ids(&|e| {
        e.edges.len() * 2 != e.n * e.n.saturating_sub(1)
            && e.chi_by_k.windows(2).any(|w| w[1] < w[0])
    });
    Ok(ConjectureReport {
        graphs: entries.len(),
        pass: counterexamples.is_empty() && violations.is_empty(),
        counterexamples,
        violations,
        drops,
        entries,
    })
}

/// `K_8` without the edges of the 5-cycle `0-1-2-3-4-0`.
pub fn k8_minus_c5() -> Graph {
    let cycle = |u: usize, v: usize| {
        let d = u.abs_diff(v);
        u < 5 && v < 5 && (d == 1 || d == 4)
    };
    let edges = (0..8)
        .flat_map(|u| (u + 1..8).map(move |v| (u, v)))
        .filter(|&(u, v)| !cycle(u, v));
    Graph::from_edges(8, edges).expect("valid edges")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K8C5Report {
    pub node_counts: Vec<usize>,
    pub chi: Vec<usize>,
    pub expected: Vec<usize>,
    pub colorings: Vec<ProperColoring>,
    pub pass: bool,
}

/// `chi(F_k(K_8 - C_5))` for `k = 1..=4`; expected `(6, 6, 6, 5)`.
pub fn k8_minus_c5_study() -> Result<K8C5Report> {
    let g = k8_minus_c5();
    let results = (1..=4)
        .into_par_iter()
        .map(|k| {
            let f = token_graph(&g, k)?;
            let c = chromatic_number(&f)?;
            assert!(
                is_proper_coloring(&f, &c),
                "solver returned an improper colouring"
            );
            Ok((f.n(), c))
        })
        .collect::<Result<Vec<_>>>()?;
    let expected = vec![6, 6, 6, 5];
    let chi: Vec<usize> = results.iter().map(|(_, c)| c.r).collect();
    Ok(K8C5Report {
        node_counts: results.iter().map(|&(n, _)| n).collect(),
        pass: chi == expected,
        chi,
        expected,
        colorings: results.into_iter().map(|(_, c)| c).collect(),
    })
}
