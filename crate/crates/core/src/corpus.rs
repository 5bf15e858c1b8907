//! Reproducible instance families for the verification suites.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{bidirect, cycle_graph, directed_cycle, disjoint_union, Digraph};
use crate::kernels::{CnfFormula, Literal};

/// Arc probabilities, cycled by sample index.
pub const ARC_PROBABILITIES: [f64; 3] = [0.2, 0.4, 0.6];

/// A named instance.
pub type Named<T> = (String, T);

/// Every labelled digraph on `n` vertices (`n <= 4`).
pub fn all_labelled_digraphs(n: usize) -> Vec<Digraph> {
    assert!(n <= 4, "labelled enumeration is limited to 4 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let arcs = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, &a)| a);
            Digraph::from_arcs(n, arcs).expect("valid arcs")
        })
        .collect()
}

/// Random digraph with each ordered pair an arc with probability `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let arcs: Vec<_> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::from_arcs(n, arcs).expect("valid arcs")
}

fn rng_for(seed: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `samples` random digraphs on `n` vertices; sample `i` uses
/// `ARC_PROBABILITIES[i % 3]`.
pub fn random_digraphs(n: usize, samples: usize, seed: u64) -> Vec<Named<Digraph>> {
    let mut rng = rng_for(seed, n);
    (0..samples)
        .map(|i| {
            let p = ARC_PROBABILITIES[i % ARC_PROBABILITIES.len()];
            (format!("r{n}-{i:03}"), random_digraph(&mut rng, n, p))
        })
        .collect()
}

/// The standard digraph corpus: all labelled digraphs on 2 and 3 vertices,
/// then `samples` random digraphs for each `n` in `4..=n_max`.
pub fn digraph_corpus(n_max: usize, samples: usize, seed: u64) -> Vec<Named<Digraph>> {
    let mut out = Vec::new();
    for n in 2..=n_max.min(3) {
        for (i, d) in all_labelled_digraphs(n).into_iter().enumerate() {
            out.push((format!("x{n}-{i:03}"), d));
        }
    }
    for n in 4..=n_max {
        out.extend(random_digraphs(n, samples, seed));
    }
    out
}

/// Degree-balanced instances: bidirected cycles, directed cycles, and their
/// disjoint unions.
pub fn balanced_digraphs(n_max: usize) -> Vec<Named<Digraph>> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        out.push((format!("cycle{n}"), directed_cycle(n)));
        out.push((format!("bicycle{n}"), bidirect(&cycle_graph(n))));
    }
    for a in 3..=n_max {
        for b in 3..=n_max.saturating_sub(a) {
            if a <= b {
                out.push((
                    format!("cycle{a}+cycle{b}"),
                    disjoint_union(&directed_cycle(a), &directed_cycle(b)),
                ));
            }
        }
    }
    out
}

fn arc_bit(n: usize, u: usize, v: usize) -> u64 {
    1 << (u * n + v)
}

fn digraph_code(d: &Digraph, perm: &[usize]) -> u64 {
    let n = d.n();
    d.arcs()
        .fold(0, |m, (u, v)| m | arc_bit(n, perm[u], perm[v]))
}

fn digraph_canonical(d: &Digraph) -> u64 {
    (0..d.n())
        .permutations(d.n())
        .map(|p| digraph_code(d, &p))
        .min()
        .unwrap_or(0)
}

fn digraph_decode(n: usize, code: u64) -> Digraph {
    let arcs = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && code & arc_bit(n, u, v) != 0);
    Digraph::from_arcs(n, arcs).expect("valid arcs")
}

/// Digraphs on `n <= 6` vertices up to isomorphism, by vertex augmentation,
/// ordered by canonical code.
pub fn digraphs_up_to_iso(n: usize) -> Vec<Digraph> {
    assert!(
        (1..=6).contains(&n),
        "isomorphism classes are enumerated for 1..=6 vertices"
    );
    let mut level = BTreeSet::from([0u64]);
    for m in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let parent = digraph_decode(m - 1, code);
            for ext in 0u32..1 << (2 * (m - 1)) {
                let mut arcs: Vec<_> = parent.arcs().collect();
                for u in 0..m - 1 {
                    if ext & (1 << (2 * u)) != 0 {
                        arcs.push((u, m - 1));
                    }
                    if ext & (1 << (2 * u + 1)) != 0 {
                        arcs.push((m - 1, u));
                    }
                }
                let d = Digraph::from_arcs(m, arcs).expect("valid arcs");
                next.insert(digraph_canonical(&d));
            }
        }
        level = next;
    }
    level.into_iter().map(|c| digraph_decode(n, c)).collect()
}

/// All isomorphism classes on `2..=n_max` vertices, named `i{n}-{index}`.
pub fn iso_corpus(n_max: usize) -> Vec<Named<Digraph>> {
    (2..=n_max)
        .flat_map(|n| {
            digraphs_up_to_iso(n)
                .into_iter()
                .enumerate()
                .map(move |(i, d)| (format!("i{n}-{i:04}"), d))
        })
        .collect()
}

/// Literals over 3 variables coded `0..6` as `2 * var + negated`.
fn lit_of(code: usize) -> Literal {
    Literal {
        var: code / 2,
        positive: code.is_multiple_of(2),
    }
}

/// Formulas with 1..=`max_clauses` clauses over at most 3 variables, one per
/// class under variable permutation and sign flips. Clauses are multisets of
/// literals in sorted order; variables are renumbered by first use.
pub fn formula_family(max_clauses: usize) -> Vec<CnfFormula> {
    let clauses: Vec<[usize; 3]> = (0..6)
        .combinations_with_replacement(3)
        .map(|c| [c[0], c[1], c[2]])
        .collect();
    let symmetries: Vec<(Vec<usize>, usize)> = (0..3)
        .permutations(3)
        .flat_map(|p| (0..8).map(move |flips| (p.clone(), flips)))
        .collect();
    let apply = |f: &[[usize; 3]], (perm, flips): &(Vec<usize>, usize)| {
        let mut out: Vec<[usize; 3]> = f
            .iter()
            .map(|c| {
                let mut c = c.map(|l| {
                    let var = perm[l / 2];
                    2 * var + ((l % 2) ^ ((flips >> var) & 1))
                });
                c.sort_unstable();
                c
            })
            .collect();
        out.sort_unstable();
        out
    };
    let mut seen = BTreeSet::new();
    for m in 1..=max_clauses {
        for f in (0..clauses.len()).combinations_with_replacement(m) {
            let f: Vec<[usize; 3]> = f.iter().map(|&i| clauses[i]).collect();
            let canon = symmetries
                .iter()
                .map(|s| apply(&f, s))
                .min()
                .expect("non-empty symmetry group");
            seen.insert(canon);
        }
    }
    seen.into_iter()
        .map(|f| {
            let mut rename = Vec::new();
            for c in &f {
                for &l in c {
                    if !rename.contains(&(l / 2)) {
                        rename.push(l / 2);
                    }
                }
            }
            let cs = f
                .iter()
                .map(|c| {
                    c.map(|l| {
                        let lit = lit_of(l);
                        Literal {
                            var: rename.iter().position(|&v| v == lit.var).expect("renamed"),
                            ..lit
                        }
                    })
                })
                .collect();
            CnfFormula::new(rename.len(), cs).expect("variables in range")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_size_and_determinism() {
        let a = digraph_corpus(6, 200, 7);
        assert_eq!(a.len(), 4 + 64 + 3 * 200);
        let b = digraph_corpus(6, 200, 7);
        assert!(a.iter().zip(&b).all(|(x, y)| x == y));
        let c = digraph_corpus(6, 200, 8);
        assert!(a.iter().zip(&c).any(|(x, y)| x.1 != y.1));
    }

    #[test]
    fn iso_class_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| digraphs_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 16, 218]);
    }

    #[test]
    fn labelled_counts() {
        assert_eq!(all_labelled_digraphs(3).len(), 64);
        assert_eq!(all_labelled_digraphs(1).len(), 1);
    }

    #[test]
    fn formula_family_is_reduced_by_symmetry() {
        let one = formula_family(1);
        // Multisets of size 3 over {x, ~x, y, ~y, z, ~z} up to symmetry.
        assert!(one.len() < 56);
        assert!(one
            .iter()
            .all(|f| f.clauses().len() == 1 && f.num_vars() <= 3));
        let two = formula_family(2);
        assert!(two.len() > one.len());
        assert!(two.iter().any(|f| f.num_vars() == 3));
    }

    #[test]
    fn balanced_family_is_balanced() {
        assert!(balanced_digraphs(6)
            .iter()
            .all(|(_, d)| d.vertices().all(|v| d.in_degree(v) == d.out_degree(v))));
    }
}
