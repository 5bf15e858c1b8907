//! Kernels: independent sets `K` with every vertex outside `K` having an
//! out-neighbour in `K` (equivalently `N^-[K] = V`).

mod reduction;

pub use reduction::{
    build_special_kernel, build_token_kernel, kernel_free_fixture, nae_oracle, reduce,
    verify_reduction, CnfFormula, GadgetDigraph, GadgetRole, KernelFreeFixture, Literal,
    ReductionReport, TokenKernel,
};

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::scc::scc;
use crate::token::token_digraph;

/// A vertex set claimed to be a kernel; check with [`is_kernel`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelSet {
    pub members: Vec<usize>,
}

impl KernelSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        KernelSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// Why a set fails to be a kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelViolation {
    OutOfRange(usize),
    /// Arc with both ends in the set.
    NotIndependent(usize, usize),
    /// Vertex outside the set with no out-neighbour inside it.
    NotAbsorbed(usize),
}

pub fn kernel_violation(d: &Digraph, k: &KernelSet) -> Option<KernelViolation> {
    let mut inside = vec![false; d.n()];
    for &v in &k.members {
        if v >= d.n() {
            return Some(KernelViolation::OutOfRange(v));
        }
        inside[v] = true;
    }
    for &v in &k.members {
        if let Some(&w) = d.out_neighbors(v).iter().find(|&&w| inside[w]) {
            return Some(KernelViolation::NotIndependent(v, w));
        }
    }
    d.vertices()
        .find(|&v| !inside[v] && !d.out_neighbors(v).iter().any(|&w| inside[w]))
        .map(KernelViolation::NotAbsorbed)
}

pub fn is_kernel(d: &Digraph, k: &KernelSet) -> bool {
    kernel_violation(d, k).is_none()
}

/// Exact test for an oriented odd cycle: a strongly connected digraph has
/// one iff its underlying graph is not bipartite, so each SCC is 2-coloured.
pub fn has_odd_oriented_cycle(d: &Digraph) -> bool {
    let dec = scc(d);
    let mut color = vec![u8::MAX; d.n()];
    for comp in dec.components() {
        let c = dec.component_of(comp[0]);
        let same = |w: usize| dec.component_of(w) == c;
        color[comp[0]] = 0;
        let mut stack = vec![comp[0]];
        while let Some(v) = stack.pop() {
            let nbrs = d.out_neighbors(v).iter().chain(d.in_neighbors(v));
            for &w in nbrs.filter(|&&w| same(w)) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return true;
                }
            }
        }
    }
    false
}

/// Odd-cycle test by enumerating simple cycles from their smallest vertex.
/// Exponential; used to cross-check [`has_odd_oriented_cycle`].
pub fn has_odd_cycle_by_enumeration(d: &Digraph) -> bool {
    fn walk(d: &Digraph, start: usize, v: usize, len: usize, on: &mut [bool]) -> bool {
        for &w in d.out_neighbors(v) {
            if w == start && len % 2 == 1 {
                return true;
            }
            if w > start && !on[w] {
                on[w] = true;
                if walk(d, start, w, len + 1, on) {
                    return true;
                }
                on[w] = false;
            }
        }
        false
    }
    let mut on = vec![false; d.n()];
    (0..d.n()).any(|s| {
        on.iter_mut().for_each(|x| *x = false);
        on[s] = true;
        walk(d, s, s, 1, &mut on)
    })
}

/// Peels sinks: take the sinks `S` of what remains, add them to the kernel,
/// delete `N^-[S]`, repeat.
pub fn dag_kernel(d: &Digraph) -> Result<KernelSet> {
    if !scc(d).is_acyclic() {
        return Err(Error::precondition("dag_kernel needs an acyclic digraph"));
    }
    let mut alive = vec![true; d.n()];
    let mut left = d.n();
    let mut kernel = Vec::new();
    while left > 0 {
        let sinks: Vec<usize> = d
            .vertices()
            .filter(|&v| alive[v] && !d.out_neighbors(v).iter().any(|&w| alive[w]))
            .collect();
        debug_assert!(!sinks.is_empty(), "a non-empty dag has a sink");
        for &s in &sinks {
            for &x in d.in_neighbors(s).iter().chain([&s]) {
                if std::mem::replace(&mut alive[x], false) {
                    left -= 1;
                }
            }
        }
        kernel.extend(sinks);
    }
    Ok(KernelSet::new(kernel))
}

const UNKNOWN: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

/// Backtracking kernel search with unit propagation.
///
/// Constraints: no arc inside `K`; every vertex is in `K` or has an
/// out-neighbour in `K`. Branches on vertices in decreasing out-degree,
/// trying "in" before "out".
struct KernelSearch<'a> {
    d: &'a Digraph,
    order: Vec<usize>,
    limit: usize,
    found: Vec<KernelSet>,
}

impl<'a> KernelSearch<'a> {
    fn new(d: &'a Digraph, limit: usize) -> Self {
        let mut order: Vec<usize> = d.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(d.out_degree(v)), v));
        KernelSearch {
            d,
            order,
            limit,
            found: Vec::new(),
        }
    }

    /// Applies `v := val` and everything it forces. `false` on conflict.
    fn assign(&self, state: &mut [u8], v: usize, val: u8) -> bool {
        let d = self.d;
        let mut queue = vec![(v, val)];
        let mut recheck = Vec::new();
        while let Some((v, val)) = queue.pop() {
            if state[v] == val {
                continue;
            }
            if state[v] != UNKNOWN {
                return false;
            }
            state[v] = val;
            if val == IN {
                for &w in d.out_neighbors(v).iter().chain(d.in_neighbors(v)) {
                    queue.push((w, OUT));
                }
            } else {
                recheck.push(v);
                recheck.extend_from_slice(d.in_neighbors(v));
            }
            while let Some(x) = recheck.pop() {
                if state[x] == IN {
                    continue;
                }
                let mut open = None;
                let mut open_count = 0;
                let mut absorbed = false;
                for &w in d.out_neighbors(x) {
                    match state[w] {
                        IN => {
                            absorbed = true;
                            break;
                        }
                        UNKNOWN => {
                            open_count += 1;
                            open = Some(w);
                        }
                        _ => {}
                    }
                }
                if absorbed {
                    continue;
                }
                match (state[x], open_count) {
                    (OUT, 0) => return false,
                    (UNKNOWN, 0) => queue.push((x, IN)),
                    (OUT, 1) => queue.push((open.expect("one open neighbour"), IN)),
                    _ => {}
                }
            }
        }
        true
    }

    fn run(&mut self, state: Vec<u8>) {
        if self.found.len() >= self.limit {
            return;
        }
        let Some(&v) = self.order.iter().find(|&&v| state[v] == UNKNOWN) else {
            let k = KernelSet::new(
                state
                    .iter()
                    .enumerate()
                    .filter(|&(_, &s)| s == IN)
                    .map(|(v, _)| v)
                    .collect(),
            );
            debug_assert!(is_kernel(self.d, &k));
            self.found.push(k);
            return;
        };
        for val in [IN, OUT] {
            let mut next = state.clone();
            if self.assign(&mut next, v, val) {
                self.run(next);
                if self.found.len() >= self.limit {
                    return;
                }
            }
        }
    }

    fn solve(mut self) -> Vec<KernelSet> {
        let mut state = vec![UNKNOWN; self.d.n()];
        // Sinks must be in every kernel.
        for v in self.d.vertices() {
            if self.d.out_degree(v) == 0 && !self.assign(&mut state, v, IN) {
                return Vec::new();
            }
        }
        self.run(state);
        self.found
    }
}

/// Some kernel of `d`, verified by [`is_kernel`], or `None` if there is none.
pub fn find_kernel(d: &Digraph) -> Option<KernelSet> {
    let k = KernelSearch::new(d, 1).solve().pop()?;
    assert!(is_kernel(d, &k), "search returned a non-kernel");
    Some(k)
}

/// Up to `limit` distinct kernels.
pub fn kernels_up_to(d: &Digraph, limit: usize) -> Vec<KernelSet> {
    KernelSearch::new(d, limit).solve()
}

/// Every kernel, by scanning all vertex subsets. Only for `n <= 24`.
pub fn kernels_brute_force(d: &Digraph) -> Vec<KernelSet> {
    assert!(
        d.n() <= 24,
        "brute-force kernel scan is limited to 24 vertices"
    );
    let n = d.n();
    let out: Vec<u32> = d
        .vertices()
        .map(|v| d.out_neighbors(v).iter().fold(0, |m, &w| m | (1 << w)))
        .collect();
    (0u32..1 << n)
        .filter(|&s| {
            crate::subset::members(s as u64).all(|v| out[v] & s == 0)
                && (0..n).all(|v| s & (1 << v) != 0 || out[v] & s != 0)
        })
        .map(|s| KernelSet::new(crate::subset::to_vec(s as u64)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycleReport {
    pub k: usize,
    pub skipped: Option<String>,
    pub token_has_odd_cycle: bool,
    /// Kernel counts, capped at 2.
    pub host_kernels: usize,
    pub token_kernels: usize,
    /// Uniqueness is required only for acyclic inputs.
    pub uniqueness_required: bool,
    pub pass: bool,
}

/// For `D` without oriented odd cycles: `F_k(D)` has none either and both
/// have a kernel. For acyclic `D` both kernels are unique; `C4` shows
/// uniqueness fails in general.
pub fn verify_odd_cycle_preservation(d: &Digraph, k: usize) -> Result<OddCycleReport> {
    let f = token_digraph(d, k)?;
    if has_odd_oriented_cycle(d) {
        return Ok(OddCycleReport {
            k,
            skipped: Some("input has an oriented odd cycle".into()),
            token_has_odd_cycle: true,
            host_kernels: 0,
            token_kernels: 0,
            uniqueness_required: false,
            pass: true,
        });
    }
    let token_has_odd_cycle = has_odd_oriented_cycle(f.digraph());
    let count = |g: &Digraph| {
        if g.n() <= 20 {
            kernels_brute_force(g).len().min(2)
        } else {
            kernels_up_to(g, 2).len()
        }
    };
    let host_kernels = count(d);
    let token_kernels = count(f.digraph());
    let uniqueness_required = scc(d).is_acyclic();
    let ok = |c: usize| if uniqueness_required { c == 1 } else { c >= 1 };
    Ok(OddCycleReport {
        k,
        skipped: None,
        token_has_odd_cycle,
        host_kernels,
        token_kernels,
        uniqueness_required,
        pass: !token_has_odd_cycle && ok(host_kernels) && ok(token_kernels),
    })
}

/// First candidate with a kernel whose `F_2` has none.
pub fn find_kernel_loss<I: IntoIterator<Item = Digraph>>(
    candidates: I,
) -> Option<(Digraph, KernelSet)> {
    candidates.into_iter().filter(|d| d.n() >= 3).find_map(|d| {
        let k = find_kernel(&d)?;
        let f = token_digraph(&d, 2).ok()?;
        find_kernel(f.digraph()).is_none().then_some((d, k))
    })
}
