//! Girth, circumference, paths between configurations, unilaterality,
//! degree balance and Hamiltonicity, for host digraphs and their token digraphs.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::digraph::{reverse, Digraph};
use crate::error::{Error, Result};
use crate::scc::{condensation_of, scc, CondensationModel, SccDecomposition};
use crate::token::{check_k, token_digraph, TokenConfig};

/// An oriented cycle `v_0 -> v_1 -> ... -> v_{l-1} -> v_0`, stored without
/// repeating `v_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_valid_in(&self, d: &Digraph) -> bool {
        let l = self.vertices.len();
        let mut seen = vec![false; d.n()];
        l >= 2
            && self
                .vertices
                .iter()
                .all(|&v| v < d.n() && !std::mem::replace(&mut seen[v], true))
            && (0..l).all(|i| d.has_arc(self.vertices[i], self.vertices[(i + 1) % l]))
    }
}

/// Shortest oriented cycle, digons included.
pub fn shortest_cycle(d: &Digraph) -> Option<CycleWitness> {
    let n = d.n();
    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        let mut closing = None;
        'bfs: while let Some(v) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| dist[v] + 1 >= b.len()) {
                break;
            }
            for &w in d.out_neighbors(v) {
                if w == s {
                    closing = Some(v);
                    break 'bfs;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if let Some(mut v) = closing {
            let mut cycle = vec![v];
            while v != s {
                v = parent[v];
                cycle.push(v);
            }
            cycle.reverse();
            if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                best = Some(cycle);
            }
        }
    }
    best.map(|vertices| CycleWitness { vertices })
}

pub fn girth(d: &Digraph) -> Option<usize> {
    shortest_cycle(d).map(|c| c.len())
}

/// Exhaustive backtracking over cycles, each enumerated from its smallest
/// vertex inside that vertex's SCC. Stops early once a cycle of length at
/// least `stop_at` is found.
fn cycle_search(d: &Digraph, stop_at: usize) -> Option<CycleWitness> {
    struct Search<'a> {
        d: &'a Digraph,
        allowed: Vec<bool>,
        remaining: usize,
        on_path: Vec<bool>,
        path: Vec<usize>,
        best: Vec<usize>,
        stop_at: usize,
    }

    impl Search<'_> {
        fn done(&self) -> bool {
            self.best.len() >= self.stop_at
        }

        fn extend(&mut self, start: usize) {
            let v = *self.path.last().expect("path starts at the root");
            for &w in self.d.out_neighbors(v) {
                if self.done() {
                    return;
                }
                if w == start {
                    if self.path.len() > self.best.len() {
                        self.best = self.path.clone();
                    }
                    continue;
                }
                if !self.allowed[w] || self.on_path[w] {
                    continue;
                }
                // Even using every remaining vertex cannot beat the incumbent.
                if self.path.len() + self.remaining <= self.best.len() {
                    return;
                }
                self.on_path[w] = true;
                self.remaining -= 1;
                self.path.push(w);
                self.extend(start);
                self.path.pop();
                self.remaining += 1;
                self.on_path[w] = false;
            }
        }
    }

    let dec = scc(d);
    let mut search = Search {
        d,
        allowed: vec![false; d.n()],
        remaining: 0,
        on_path: vec![false; d.n()],
        path: Vec::new(),
        best: Vec::new(),
        stop_at,
    };
    // Larger components first: they bound the answer from above.
    let mut comps: Vec<&Vec<usize>> = dec.components().iter().filter(|c| c.len() > 1).collect();
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    for comp in comps {
        if comp.len() <= search.best.len() || search.done() {
            break;
        }
        for (i, &s) in comp.iter().enumerate() {
            let rest = &comp[i + 1..];
            if rest.len() < search.best.len() || search.done() {
                break;
            }
            for &w in rest {
                search.allowed[w] = true;
            }
            search.remaining = rest.len();
            search.on_path[s] = true;
            search.path.push(s);
            search.extend(s);
            search.path.clear();
            search.on_path[s] = false;
            for &w in rest {
                search.allowed[w] = false;
            }
        }
    }
    (!search.best.is_empty()).then_some(CycleWitness {
        vertices: search.best,
    })
}

/// Longest oriented cycle, with witness. Exponential; meant for small inputs.
pub fn longest_cycle(d: &Digraph) -> Option<CycleWitness> {
    cycle_search(d, usize::MAX)
}

pub fn circumference(d: &Digraph) -> Option<usize> {
    longest_cycle(d).map(|c| c.len())
}

/// Some cycle of length at least `len`, if one exists.
pub fn cycle_at_least(d: &Digraph, len: usize) -> Option<CycleWitness> {
    cycle_search(d, len).filter(|c| c.len() >= len)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthReport {
    pub k: usize,
    pub girth: Option<usize>,
    pub token_girth: Option<usize>,
    pub circumference: Option<usize>,
    /// Length of a token cycle at least as long as the host circumference.
    pub token_cycle_found: Option<usize>,
    pub pass: bool,
    pub skipped: Option<String>,
}

/// `g(F_k(D)) == g(D)` and `c(F_k(D)) >= c(D)`.
///
/// The token side of the inequality is settled by finding a token cycle of
/// length at least `c(D)`, which is validated before being accepted.
pub fn verify_girth_circumference(d: &Digraph, k: usize) -> Result<GirthReport> {
    let f = token_digraph(d, k)?;
    let g = girth(d);
    let mut report = GirthReport {
        k,
        girth: g,
        token_girth: None,
        circumference: None,
        token_cycle_found: None,
        pass: true,
        skipped: None,
    };
    let Some(_) = g else {
        // Acyclic host: the token digraph must be acyclic too.
        report.token_girth = girth(f.digraph());
        report.pass = report.token_girth.is_none();
        report.skipped = Some("acyclic input".into());
        return Ok(report);
    };
    report.token_girth = girth(f.digraph());
    let c = circumference(d).expect("cyclic digraph has a longest cycle");
    report.circumference = Some(c);
    let found = cycle_at_least(f.digraph(), c).filter(|w| w.is_valid_in(f.digraph()));
    report.token_cycle_found = found.as_ref().map(CycleWitness::len);
    report.pass = report.token_girth == g && found.is_some();
    Ok(report)
}

fn loop_erase(walk: Vec<TokenConfig>) -> Vec<TokenConfig> {
    let mut path: Vec<TokenConfig> = Vec::with_capacity(walk.len());
    let mut pos: HashMap<TokenConfig, usize> = HashMap::new();
    for c in walk {
        if let Some(&i) = pos.get(&c) {
            for dropped in path.drain(i + 1..) {
                pos.remove(&dropped);
            }
        } else {
            pos.insert(c, path.len());
            path.push(c);
        }
    }
    path
}

/// Shortest host path from any vertex of `from` to any vertex of `to`,
/// breadth-first with sources and neighbours in increasing order.
fn shortest_set_path(d: &Digraph, from: u64, to: u64) -> Option<Vec<usize>> {
    let n = d.n();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for s in crate::subset::members(from) {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        if to & (1 << v) != 0 {
            let mut path = vec![v];
            let mut x = v;
            while parent[x] != usize::MAX {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &w in d.out_neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// A path from `a` to `b` in `F_k(D)` for strongly connected `D`.
///
/// Repeatedly takes a shortest host path `P` from `A \ B` to `B \ A`; the
/// tokens sitting on `P` are advanced one hop each, last one first, so the
/// token at the start of `P` effectively lands on its end. Any node revisited
/// across rounds is cut out of the walk.
pub fn token_path(d: &Digraph, a: TokenConfig, b: TokenConfig) -> Result<Vec<TokenConfig>> {
    if !scc(d).is_strongly_connected() {
        return Err(Error::precondition(
            "token_path needs a strongly connected digraph",
        ));
    }
    if a.k() != b.k() || !a.fits(d.n()) || !b.fits(d.n()) {
        return Err(Error::precondition(
            "configurations must be k-subsets of the same size",
        ));
    }
    let target = b.mask();
    let mut current = a;
    let mut walk = vec![current];
    while current.mask() != target {
        let path = shortest_set_path(d, current.mask() & !target, target & !current.mask())
            .expect("strongly connected digraphs have all paths");
        // Stops: the start, every occupied interior vertex, and the end.
        let mut stops = vec![0];
        stops.extend((1..path.len() - 1).filter(|&i| current.contains(path[i])));
        stops.push(path.len() - 1);
        for w in stops.windows(2).rev() {
            for s in w[0]..w[1] {
                current = current.slide(path[s], path[s + 1]);
                walk.push(current);
            }
        }
    }
    Ok(loop_erase(walk))
}

/// `true` if consecutive configurations are arcs of `F_k(D)`.
pub fn is_token_walk(d: &Digraph, walk: &[TokenConfig]) -> bool {
    walk.windows(2)
        .all(|w| w[0].single_swap(w[1]).is_some_and(|(x, y)| d.has_arc(x, y)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unilaterality {
    pub unilateral: bool,
    /// Component indices along the Hamiltonian path of `CD(D)`, when unilateral.
    pub condensation_path: Option<Vec<usize>>,
}

/// A digraph is unilateral iff consecutive components in the topological
/// order are joined by an arc of `CD(D)`.
pub fn is_unilateral(d: &Digraph) -> Unilaterality {
    let dec = scc(d);
    unilaterality_of(d, &dec)
}

fn unilaterality_of(d: &Digraph, dec: &SccDecomposition) -> Unilaterality {
    let cd = condensation_of(d, dec);
    let unilateral = (1..cd.n()).all(|i| cd.has_arc(i - 1, i));
    Unilaterality {
        unilateral,
        condensation_path: unilateral.then(|| (0..cd.n()).collect()),
    }
}

/// Pairwise-reachability definition, for cross-checking.
pub fn is_unilateral_by_reachability(d: &Digraph) -> bool {
    let n = d.n();
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in d.out_neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect();
    (0..n).all(|x| (x + 1..n).all(|y| reach[x][y] || reach[y][x]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnilateralPrediction {
    pub unilateral: bool,
    /// `false` when `k` is 1 or `n - 1` and the answer came from `D` directly.
    pub by_characterization: bool,
    /// Hamiltonian path of `CD(F_k(D))` as associated vectors, when predicted unilateral.
    pub certificate: Option<Vec<Vec<usize>>>,
    pub certificate_valid: Option<bool>,
    pub note: Option<String>,
}

/// Predicts unilaterality of `F_k(D)` from `D` alone.
///
/// For `2 <= k <= n - 2`, `F_k(D)` is unilateral iff `D` is and either
/// `t <= 2`, or `t = 3` with a single-vertex middle component.
pub fn predict_token_unilateral(d: &Digraph, k: usize) -> Result<UnilateralPrediction> {
    check_k(d.n(), k)?;
    let n = d.n();
    let dec = scc(d);
    let base = unilaterality_of(d, &dec);
    if k == 1 || k == n - 1 {
        return Ok(UnilateralPrediction {
            unilateral: base.unilateral,
            by_characterization: false,
            certificate: None,
            certificate_valid: None,
            note: Some(format!(
                "k = {k}: F_k(D) is D or its reverse up to isomorphism"
            )),
        });
    }
    let sizes = dec.sizes();
    let t = sizes.len();
    let unilateral = base.unilateral && (t <= 2 || (t == 3 && sizes[1] == 1));
    let mut out = UnilateralPrediction {
        unilateral,
        by_characterization: true,
        certificate: None,
        certificate_valid: None,
        note: None,
    };
    if unilateral {
        let path = condensation_path_certificate(&sizes, k);
        let cd_arcs: Vec<_> = condensation_of(d, &dec).arcs().collect();
        let model = CondensationModel::new(&sizes, &cd_arcs, k);
        let check = certify_hamiltonian_path(&model, &path);
        if let Err(msg) = &check {
            out.note = Some(format!("certificate rejected: {msg}"));
        }
        out.certificate_valid = Some(check.is_ok());
        out.certificate = Some(path);
    }
    Ok(out)
}

/// The explicit Hamiltonian path of `CD(F_k(D))` for unilateral `D` with
/// `t <= 2` components, or `t = 3` with `|C_2| = 1`, listed as vectors.
///
/// For `t = 3` the start vertex is `(k, 0, 0)` when `k <= |C_1|` and
/// `(|C_1|, 1, k - |C_1| - 1)` otherwise; the path then alternates a
/// `(1,2)`-move and a `(2,3)`-move until neither applies.
pub fn condensation_path_certificate(sizes: &[usize], k: usize) -> Vec<Vec<usize>> {
    match sizes {
        [_] => vec![vec![k]],
        [c1, c2] => {
            let k1 = k.min(*c1);
            let k2 = k.min(*c2);
            (0..=k1 + k2 - k)
                .map(|i| vec![k1 - i, k - k1 + i])
                .collect()
        }
        [c1, _, c3] => {
            let mut v = if k <= *c1 {
                vec![k, 0, 0]
            } else {
                vec![*c1, 1, k - c1 - 1]
            };
            let mut path = vec![v.clone()];
            loop {
                if v[1] == 0 && v[0] > 0 {
                    v[0] -= 1;
                    v[1] = 1;
                } else if v[1] == 1 && v[2] < *c3 {
                    v[1] = 0;
                    v[2] += 1;
                } else {
                    break;
                }
                path.push(v.clone());
            }
            path
        }
        _ => Vec::new(),
    }
}

/// Checks that `path` visits every model vertex once along model arcs.
pub fn certify_hamiltonian_path(
    model: &CondensationModel,
    path: &[Vec<usize>],
) -> std::result::Result<(), String> {
    let mut seen = vec![false; model.vertices.len()];
    let mut idx = Vec::with_capacity(path.len());
    for v in path {
        let i = model
            .index_of(v)
            .ok_or_else(|| format!("{v:?} is not a model vertex"))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(format!("{v:?} repeated"));
        }
        idx.push(i);
    }
    if idx.len() != model.vertices.len() {
        return Err(format!(
            "path covers {} of {} vertices",
            idx.len(),
            model.vertices.len()
        ));
    }
    let g = model.digraph();
    for w in idx.windows(2) {
        if !g.has_arc(w[0], w[1]) {
            return Err(format!(
                "no arc {:?} -> {:?}",
                model.vertices[w[0]], model.vertices[w[1]]
            ));
        }
    }
    Ok(())
}

/// `d^+(v) == d^-(v)` at every vertex.
pub fn is_degree_balanced(d: &Digraph) -> bool {
    d.vertices().all(|v| d.out_degree(v) == d.in_degree(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerianReport {
    pub k: usize,
    pub host_balanced: bool,
    pub token_balanced: bool,
    pub pass: bool,
}

pub fn verify_eulerian_equivalence(d: &Digraph, k: usize) -> Result<EulerianReport> {
    let f = token_digraph(d, k)?;
    let host_balanced = is_degree_balanced(d);
    let token_balanced = is_degree_balanced(f.digraph());
    Ok(EulerianReport {
        k,
        host_balanced,
        token_balanced,
        pass: host_balanced == token_balanced,
    })
}

/// Exact Hamiltonian-cycle search by backtracking from vertex 0.
pub fn hamiltonian_cycle(d: &Digraph) -> Option<CycleWitness> {
    let n = d.n();
    if n < 2 || !scc(d).is_strongly_connected() {
        return None;
    }
    fn viable(d: &Digraph, visited: &[bool], end: usize) -> bool {
        // Every unvisited vertex still needs a usable in-arc and out-arc.
        d.vertices().filter(|&w| !visited[w]).all(|w| {
            d.in_neighbors(w).iter().any(|&x| !visited[x] || x == end)
                && d.out_neighbors(w).iter().any(|&x| !visited[x] || x == 0)
        })
    }
    fn extend(d: &Digraph, path: &mut Vec<usize>, visited: &mut [bool]) -> bool {
        let v = *path.last().expect("non-empty path");
        if path.len() == d.n() {
            return d.has_arc(v, 0);
        }
        if !viable(d, visited, v) {
            return false;
        }
        for &w in d.out_neighbors(v) {
            if visited[w] {
                continue;
            }
            visited[w] = true;
            path.push(w);
            if extend(d, path, visited) {
                return true;
            }
            path.pop();
            visited[w] = false;
        }
        false
    }
    let mut path = vec![0];
    let mut visited = vec![false; n];
    visited[0] = true;
    extend(d, &mut path, &mut visited).then_some(CycleWitness { vertices: path })
}

pub fn is_hamiltonian(d: &Digraph) -> bool {
    hamiltonian_cycle(d).is_some()
}

/// A long cycle of `F_k(D)` built from a longest cycle of `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongTokenCycle {
    pub k: usize,
    pub r: usize,
    pub circumference: usize,
    /// Whether the construction ran on `(reverse D, n - k)` and was mapped
    /// back by complementation.
    pub complemented: bool,
    pub cycle: Vec<TokenConfig>,
}

/// Builds a cycle of length `r * c(D)` in `F_k(D)`, where `r = 2` if `k = 2`
/// and `r = min(max(k, n - k), c(D) - 3)` otherwise.
///
/// When `3 <= k < n - k` the construction runs on `F_{n-k}(reverse D)` and the
/// result is complemented back. With `q` tokens and `r` of them rotating on a
/// longest cycle `w_0 .. w_{c-1}`: segment `i` takes `{w_i .. w_{i+r-1}}` to
/// `{w_{i+1} .. w_{i+r}}` by sliding the front token first; indices are mod
/// `c`. The other `q - r` tokens sit on fixed vertices off the cycle.
pub fn construct_long_token_cycle(d: &Digraph, k: usize) -> Result<LongTokenCycle> {
    let n = d.n();
    if k < 2 || k + 3 > n {
        return Err(Error::precondition(format!(
            "long-cycle construction needs 2 <= k <= n - 3 (k = {k}, n = {n})"
        )));
    }
    let complemented = k != 2 && k < n - k;
    let (work, q) = if complemented {
        (reverse(d), n - k)
    } else {
        (d.clone(), k)
    };
    let longest =
        longest_cycle(&work).ok_or_else(|| Error::precondition("digraph has no cycle"))?;
    let c = longest.len();
    if c < 5 {
        return Err(Error::precondition(format!(
            "long-cycle construction needs circumference >= 5 (got {c})"
        )));
    }
    let r = if k == 2 { 2 } else { k.max(n - k).min(c - 3) };
    debug_assert!(r <= q);

    let w = &longest.vertices;
    let mut on_cycle = vec![false; n];
    for &v in w {
        on_cycle[v] = true;
    }
    let parked: u64 = (0..n)
        .filter(|&v| !on_cycle[v])
        .take(q - r)
        .fold(0, |m, v| m | (1 << v));
    debug_assert_eq!(parked.count_ones() as usize, q - r);

    let mut current = (0..r).fold(parked, |m, j| m | (1 << w[j]));
    let mut cycle = Vec::with_capacity(r * c);
    for i in 0..c {
        for j in (i..i + r).rev() {
            cycle.push(TokenConfig::from_mask(current));
            let (from, to) = (w[j % c], w[(j + 1) % c]);
            current = current & !(1 << from) | (1 << to);
        }
    }
    debug_assert_eq!(cycle.first().map(|c| c.mask()), Some(current));
    if complemented {
        for cfg in &mut cycle {
            *cfg = cfg.complement(n);
        }
    }
    Ok(LongTokenCycle {
        k,
        r,
        circumference: c,
        complemented,
        cycle,
    })
}

/// Validates a closed walk of configurations as an oriented cycle of `F_k(D)`.
pub fn is_token_cycle(d: &Digraph, k: usize, cycle: &[TokenConfig]) -> bool {
    let distinct: std::collections::HashSet<_> = cycle.iter().collect();
    cycle.len() >= 2
        && distinct.len() == cycle.len()
        && cycle.iter().all(|c| c.k() == k && c.fits(d.n()))
        && is_token_walk(d, cycle)
        && is_token_walk(d, &[cycle[cycle.len() - 1], cycle[0]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{bidirect, complete_graph, directed_cycle, directed_path, with_isolated};

    fn cfg(v: &[usize]) -> TokenConfig {
        TokenConfig::new(v).unwrap()
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&directed_cycle(5)), Some(5));
        assert_eq!(girth(&bidirect(&complete_graph(2))), Some(2));
        assert_eq!(girth(&directed_path(4)), None);
        let w = shortest_cycle(&bidirect(&complete_graph(4))).unwrap();
        assert!(w.is_valid_in(&bidirect(&complete_graph(4))));
    }

    #[test]
    fn circumference_examples() {
        assert_eq!(circumference(&directed_cycle(5)), Some(5));
        let k4 = bidirect(&complete_graph(4));
        let c = longest_cycle(&k4).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.is_valid_in(&k4));
        assert_eq!(circumference(&directed_path(5)), None);
    }

    #[test]
    fn circumference_sees_components_separately() {
        // A 3-cycle and a disjoint 4-cycle.
        let d = Digraph::from_arcs(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)])
            .unwrap();
        assert_eq!(circumference(&d), Some(4));
        assert_eq!(girth(&d), Some(3));
        assert_eq!(cycle_at_least(&d, 5), None);
        assert_eq!(cycle_at_least(&d, 3).map(|c| c.len() >= 3), Some(true));
    }

    #[test]
    fn girth_circumference_reports() {
        let r = verify_girth_circumference(&directed_cycle(5), 2).unwrap();
        assert!(r.pass);
        assert_eq!((r.girth, r.token_girth), (Some(5), Some(5)));

        let d = with_isolated(&bidirect(&complete_graph(2)), 1);
        let r = verify_girth_circumference(&d, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.token_girth, Some(2));

        let r = verify_girth_circumference(&bidirect(&complete_graph(4)), 2).unwrap();
        assert!(r.pass);
        assert!(r.token_cycle_found.unwrap() >= 4);

        let r = verify_girth_circumference(&directed_path(4), 2).unwrap();
        assert!(r.pass);
        assert!(r.skipped.is_some());
    }

    #[test]
    fn token_path_examples() {
        let c3 = directed_cycle(3);
        assert_eq!(
            token_path(&c3, cfg(&[0]), cfg(&[2])).unwrap(),
            vec![cfg(&[0]), cfg(&[1]), cfg(&[2])]
        );
        assert_eq!(
            token_path(&c3, cfg(&[0, 1]), cfg(&[1, 2])).unwrap(),
            vec![cfg(&[0, 1]), cfg(&[0, 2]), cfg(&[1, 2])]
        );
        assert_eq!(
            token_path(&c3, cfg(&[1]), cfg(&[1])).unwrap(),
            vec![cfg(&[1])]
        );
        assert!(token_path(&directed_path(3), cfg(&[0]), cfg(&[2])).is_err());
    }

    #[test]
    fn token_paths_on_all_pairs() {
        let d = Digraph::from_arcs(
            6,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 0),
                (2, 0),
                (4, 1),
            ],
        )
        .unwrap();
        for k in 1..6 {
            let f = token_digraph(&d, k).unwrap();
            for &a in f.configs() {
                for &b in f.configs() {
                    let p = token_path(&d, a, b).unwrap();
                    assert_eq!(p.first(), Some(&a));
                    assert_eq!(p.last(), Some(&b));
                    assert!(is_token_walk(&d, &p));
                    let distinct: std::collections::HashSet<_> = p.iter().collect();
                    assert_eq!(distinct.len(), p.len());
                }
            }
        }
    }

    #[test]
    fn unilateral_examples() {
        assert!(is_unilateral(&directed_path(4)).unilateral);
        let two_sources = Digraph::from_arcs(3, [(0, 2), (1, 2)]).unwrap();
        assert!(!is_unilateral(&two_sources).unilateral);
        assert!(!is_unilateral_by_reachability(&two_sources));
        assert!(is_unilateral(&directed_cycle(4)).unilateral);
    }

    #[test]
    fn prediction_examples() {
        let p = predict_token_unilateral(&directed_path(4), 2).unwrap();
        assert!(!p.unilateral && p.by_characterization);

        let two_digons = Digraph::from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]).unwrap();
        let p = predict_token_unilateral(&two_digons, 2).unwrap();
        assert!(p.unilateral);
        assert_eq!(p.certificate_valid, Some(true));

        // digon -> single vertex -> digon
        let chain =
            Digraph::from_arcs(5, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 4), (4, 3)]).unwrap();
        let p = predict_token_unilateral(&chain, 2).unwrap();
        assert!(p.unilateral);
        assert_eq!(p.certificate_valid, Some(true), "{p:?}");

        let p = predict_token_unilateral(&directed_path(4), 1).unwrap();
        assert!(p.unilateral && !p.by_characterization);
    }

    #[test]
    fn certificate_shapes() {
        assert_eq!(
            condensation_path_certificate(&[2, 3], 3),
            vec![vec![2, 1], vec![1, 2], vec![0, 3]]
        );
        // k <= |C1|, k > |C3|: ends at (k - |C3| - 1, 1, |C3|).
        assert_eq!(
            condensation_path_certificate(&[4, 1, 1], 3),
            vec![vec![3, 0, 0], vec![2, 1, 0], vec![2, 0, 1], vec![1, 1, 1]]
        );
        // k > |C1|
        assert_eq!(
            condensation_path_certificate(&[1, 1, 4], 3),
            vec![vec![1, 1, 1], vec![1, 0, 2], vec![0, 1, 2], vec![0, 0, 3]]
        );
    }

    #[test]
    fn degree_balance() {
        assert!(is_degree_balanced(&directed_cycle(6)));
        assert!(!is_degree_balanced(&directed_path(2)));
        assert!(is_degree_balanced(&bidirect(&complete_graph(5))));

        let r = verify_eulerian_equivalence(&directed_cycle(4), 2).unwrap();
        assert!(r.pass && r.host_balanced && r.token_balanced);
        let r = verify_eulerian_equivalence(&with_isolated(&directed_path(2), 1), 2).unwrap();
        assert!(r.pass && !r.host_balanced && !r.token_balanced);
        let r = verify_eulerian_equivalence(&bidirect(&complete_graph(3)), 2).unwrap();
        assert!(r.pass && r.token_balanced);
    }

    #[test]
    fn hamiltonicity_of_f2_of_cycles() {
        for (n, expected) in [(3, true), (4, false), (5, true)] {
            let f = token_digraph(&directed_cycle(n), 2).unwrap();
            let h = hamiltonian_cycle(f.digraph());
            assert_eq!(h.is_some(), expected, "n = {n}");
            if let Some(w) = h {
                assert!(w.is_valid_in(f.digraph()));
                assert_eq!(w.len(), f.node_count());
            }
        }
    }

    #[test]
    fn long_cycle_on_c5_plus_three() {
        let d = with_isolated(&directed_cycle(5), 3);
        let out = construct_long_token_cycle(&d, 2).unwrap();
        assert_eq!((out.r, out.circumference), (2, 5));
        assert_eq!(out.cycle.len(), 10);
        assert!(is_token_cycle(&d, 2, &out.cycle));
        let f = token_digraph(&d, 2).unwrap();
        let idx: Vec<usize> = out.cycle.iter().map(|&c| f.node_of(c).unwrap()).collect();
        assert!(CycleWitness { vertices: idx }.is_valid_in(f.digraph()));
    }

    #[test]
    fn long_cycle_on_c6_plus_two() {
        let d = with_isolated(&directed_cycle(6), 2);
        let out = construct_long_token_cycle(&d, 3).unwrap();
        assert_eq!(out.r, 3);
        assert!(out.complemented);
        assert_eq!(out.cycle.len(), 18);
        assert!(is_token_cycle(&d, 3, &out.cycle));
    }

    #[test]
    fn long_cycle_preconditions() {
        // n = 5 allows k = 2 only; the 10-cycle is then Hamiltonian in F_2(C5).
        let c5 = directed_cycle(5);
        let out = construct_long_token_cycle(&c5, 2).unwrap();
        assert_eq!(out.cycle.len(), 10);
        assert!(is_token_cycle(&c5, 2, &out.cycle));
        assert!(construct_long_token_cycle(&c5, 3).is_err());
        let short = with_isolated(&directed_cycle(4), 4);
        assert!(construct_long_token_cycle(&short, 2).is_err());
        assert!(construct_long_token_cycle(&with_isolated(&directed_cycle(5), 3), 1).is_err());
    }
}
