//! Verification suites over reproducible corpora, and the reports they emit.
//!
//! Every check sweeps its instances in parallel and collects results in
//! instance order, so a report depends only on the configuration.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coloring::{
    chromatic_number, connected_graphs, cordero_bound, dichromatic_number, is_acyclic_partition,
    is_proper_coloring, k8_minus_c5_study, lift_acyclic_partition, scan_conjecture,
    verify_clique_formula,
};
use crate::corpus::{
    balanced_digraphs, digraph_corpus, formula_family, iso_corpus, random_digraphs, Named,
};
use crate::cycles::{
    circumference, construct_long_token_cycle, girth, hamiltonian_cycle, is_degree_balanced,
    is_hamiltonian, is_token_cycle, is_unilateral, predict_token_unilateral,
    verify_eulerian_equivalence, verify_girth_circumference,
};
use crate::digraph::{
    complete_graph, cycle_graph, directed_cycle, mycielski, with_isolated, Digraph, Family, Graph,
};
use crate::error::Result;
use crate::kernels::{
    build_special_kernel, build_token_kernel, dag_kernel, find_kernel,
    has_odd_cycle_by_enumeration, has_odd_oriented_cycle, is_kernel, kernel_free_fixture,
    nae_oracle, reduce, verify_odd_cycle_preservation, verify_reduction, CnfFormula, KernelSet,
};
use crate::scc::{
    scc, vector_representatives, verify_component_decomposition_in, verify_condensation_theorem,
};
use crate::subset::binomial;
use crate::token::{
    clean_commutes, token_digraph, token_graph, verify_digraph_property, verify_graph_property,
    Property,
};

/// Scope of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Largest host order in the standard corpus (at most 6).
    pub n_max: usize,
    /// Random digraphs per order.
    pub samples: usize,
    pub seed: u64,
    /// Restrict sweeps to this token count where it applies.
    pub k: Option<usize>,
    /// Include the long-running scopes.
    pub slow: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 6,
            samples: 200,
            seed: 1,
            k: None,
            slow: false,
        }
    }
}

impl SuiteConfig {
    fn ks(&self, n: usize) -> Vec<usize> {
        (1..n).filter(|&k| self.k.is_none_or(|x| x == k)).collect()
    }

    fn corpus(&self) -> Vec<Named<Digraph>> {
        digraph_corpus(self.n_max.min(6), self.samples, self.seed)
    }

    /// Isomorphism classes up to `min(n_max, 5)` vertices.
    fn exhaustive(&self) -> Vec<Named<Digraph>> {
        iso_corpus(self.n_max.min(5))
    }

    /// `count` random digraphs for each of 6 and 7 vertices, when `n_max >= 6`.
    fn extended(&self, count: usize) -> Vec<Named<Digraph>> {
        if self.n_max < 6 {
            return Vec::new();
        }
        [6, 7]
            .iter()
            .flat_map(|&n| random_digraphs(n, count, self.seed))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub instances: usize,
    pub violations: usize,
    pub skipped: usize,
    pub pass: bool,
    /// First violation in instance order.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub suites: Vec<String>,
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(
        command: impl Into<String>,
        suites: &[SuiteId],
        config: &SuiteConfig,
        checks: Vec<CheckResult>,
    ) -> Self {
        RunReport {
            command: command.into(),
            suites: suites.iter().map(|s| s.to_string()).collect(),
            config: config.clone(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    /// Drops wall times so equal configurations give byte-identical JSON.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.wall_ms = None;
        }
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(Value),
}

impl Outcome {
    fn check(ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(witness())
        }
    }
}

fn error_witness(id: &str, k: Option<usize>, e: impl fmt::Display) -> Value {
    json!({ "instance": id, "k": k, "error": e.to_string() })
}

fn digraph_json(d: &Digraph) -> Value {
    json!({ "n": d.n(), "arcs": d.arcs().collect::<Vec<_>>() })
}

fn sweep<T, F>(name: &str, items: &[T], f: F) -> CheckResult
where
    T: Sync,
    F: Fn(&T) -> Outcome + Sync + Send,
{
    let start = Instant::now();
    let outcomes: Vec<Outcome> = items.par_iter().map(f).collect();
    let mut violations = 0;
    let mut skipped = 0;
    let mut witness = None;
    for o in outcomes {
        match o {
            Outcome::Pass => {}
            Outcome::Skip => skipped += 1,
            Outcome::Fail(w) => {
                violations += 1;
                witness.get_or_insert(w);
            }
        }
    }
    CheckResult {
        name: name.to_string(),
        instances: items.len(),
        violations,
        skipped,
        pass: violations == 0,
        witness,
        details: Value::Null,
        wall_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    }
}

/// A single fixed assertion.
fn fixture(name: &str, f: impl FnOnce() -> Result<(bool, Value)>) -> CheckResult {
    let start = Instant::now();
    let (pass, details) = match f() {
        Ok(x) => x,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    CheckResult {
        name: name.to_string(),
        instances: 1,
        violations: usize::from(!pass),
        skipped: 0,
        pass,
        witness: (!pass).then(|| details.clone()),
        details,
        wall_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    }
}

/// `(id, digraph, k)` for every applicable `k`.
fn with_ks(
    corpus: &[Named<Digraph>],
    ks: impl Fn(usize) -> Vec<usize>,
) -> Vec<(&str, &Digraph, usize)> {
    corpus
        .iter()
        .flat_map(|(id, d)| ks(d.n()).into_iter().map(move |k| (id.as_str(), d, k)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuiteId {
    Properties,
    Condensation,
    ComponentProducts,
    Unilateral,
    Girth,
    LongCycle,
    Eulerian,
    HamiltonianCn,
    OddCycle,
    Kernels,
    Reduction,
    Clique,
    Dichromatic,
    Chromatic,
    Conjecture,
    K8c5,
}

impl SuiteId {
    pub const ALL: [SuiteId; 16] = [
        SuiteId::Properties,
        SuiteId::Condensation,
        SuiteId::ComponentProducts,
        SuiteId::Unilateral,
        SuiteId::Girth,
        SuiteId::LongCycle,
        SuiteId::Eulerian,
        SuiteId::HamiltonianCn,
        SuiteId::OddCycle,
        SuiteId::Kernels,
        SuiteId::Reduction,
        SuiteId::Clique,
        SuiteId::Dichromatic,
        SuiteId::Chromatic,
        SuiteId::Conjecture,
        SuiteId::K8c5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Properties => "properties",
            SuiteId::Condensation => "condensation",
            SuiteId::ComponentProducts => "component-products",
            SuiteId::Unilateral => "unilateral",
            SuiteId::Girth => "girth",
            SuiteId::LongCycle => "long-cycle",
            SuiteId::Eulerian => "eulerian",
            SuiteId::HamiltonianCn => "hamiltonian-cn",
            SuiteId::OddCycle => "odd-cycle",
            SuiteId::Kernels => "kernels",
            SuiteId::Reduction => "reduction",
            SuiteId::Clique => "clique",
            SuiteId::Dichromatic => "dichromatic",
            SuiteId::Chromatic => "chromatic",
            SuiteId::Conjecture => "conjecture",
            SuiteId::K8c5 => "k8c5",
        }
    }

    /// Alternative name accepted on the command line.
    pub fn alias(self) -> Option<&'static str> {
        (self == SuiteId::ComponentProducts).then_some("lemma2")
    }

    /// Left out of `all` unless slow scopes are requested.
    pub fn is_slow(self) -> bool {
        self == SuiteId::K8c5
    }

    pub fn run(self, cfg: &SuiteConfig) -> Vec<CheckResult> {
        match self {
            SuiteId::Properties => properties_suite(cfg),
            SuiteId::Condensation => condensation_suite(cfg),
            SuiteId::ComponentProducts => component_products_suite(cfg),
            SuiteId::Unilateral => unilateral_suite(cfg),
            SuiteId::Girth => girth_suite(cfg),
            SuiteId::LongCycle => long_cycle_suite(cfg),
            SuiteId::Eulerian => eulerian_suite(cfg),
            SuiteId::HamiltonianCn => hamiltonian_suite(),
            SuiteId::OddCycle => odd_cycle_suite(cfg),
            SuiteId::Kernels => kernels_suite(),
            SuiteId::Reduction => reduction_suite(cfg),
            SuiteId::Clique => clique_suite(cfg),
            SuiteId::Dichromatic => dichromatic_suite(cfg),
            SuiteId::Chromatic => chromatic_suite(),
            SuiteId::Conjecture => conjecture_suite(cfg),
            SuiteId::K8c5 => k8c5_suite(),
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s || id.alias() == Some(s))
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Runs suites in order and gathers one report.
pub fn run_suites(command: &str, ids: &[SuiteId], cfg: &SuiteConfig) -> RunReport {
    let checks = ids.iter().flat_map(|id| id.run(cfg)).collect();
    RunReport::new(command, ids, cfg, checks)
}

fn property_check(prop: Property, items: &[(&str, &Digraph, usize)]) -> CheckResult {
    let name = format!("{}-map", prop.name());
    sweep(&name, items, |&(id, d, k)| {
        match verify_digraph_property(prop, d, k) {
            Ok(r) => Outcome::check(r.pass, || json!({ "instance": id, "k": k, "report": r })),
            Err(e) => Outcome::Fail(error_witness(id, Some(k), e)),
        }
    })
}

pub fn properties_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut hosts = cfg.exhaustive();
    hosts.extend(cfg.extended(cfg.samples));
    let items = with_ks(&hosts, |n| cfg.ks(n));
    let graphs: Vec<Named<Graph>> = (2..=cfg.n_max.min(6))
        .flat_map(|n| {
            crate::coloring::all_graphs(n)
                .into_iter()
                .enumerate()
                .map(move |(i, g)| (format!("g{n}-{i:03}"), g))
        })
        .collect();
    let graph_items: Vec<(&str, &Graph, usize)> = graphs
        .iter()
        .flat_map(|(id, g)| cfg.ks(g.n()).into_iter().map(move |k| (id.as_str(), g, k)))
        .collect();
    let corpus = cfg.corpus();
    let corpus_items = with_ks(&corpus, |n| cfg.ks(n));
    vec![
        sweep("token-counts", &corpus_items, |&(id, d, k)| {
            let n = d.n();
            match token_digraph(d, k) {
                Ok(f) => {
                    let arcs = d.arc_count() as u64 * binomial(n - 2, k - 1);
                    let ok = f.node_count() as u64 == binomial(n, k)
                        && f.digraph().arc_count() as u64 == arcs;
                    Outcome::check(
                        ok,
                        || json!({ "instance": id, "k": k, "nodes": f.node_count(), "arcs": f.digraph().arc_count(), "expected_arcs": arcs }),
                    )
                }
                Err(e) => Outcome::Fail(error_witness(id, Some(k), e)),
            }
        }),
        property_check(Property::Complement, &items),
        property_check(Property::Reversal, &items),
        sweep(
            "bidirection-map",
            &graph_items,
            |&(id, g, k)| match verify_graph_property(g, k) {
                Ok(r) => Outcome::check(r.pass, || json!({ "instance": id, "k": k, "report": r })),
                Err(e) => Outcome::Fail(error_witness(id, Some(k), e)),
            },
        ),
        sweep(
            "clean-commutes",
            &items,
            |&(id, d, k)| match clean_commutes(d, k) {
                Ok(ok) => Outcome::check(
                    ok,
                    || json!({ "instance": id, "k": k, "digraph": digraph_json(d) }),
                ),
                Err(e) => Outcome::Fail(error_witness(id, Some(k), e)),
            },
        ),
    ]
}

/// Directed 4-cycle, digon, single vertex; components joined 1->2, 2->3, 1->3.
pub fn condensation_fixture() -> Digraph {
    Digraph::from_arcs(
        7,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 4),
            (3, 4),
            (5, 6),
            (0, 6),
        ],
    )
    .expect("valid arcs")
}

pub fn condensation_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let corpus = cfg.corpus();
    let items = with_ks(&corpus, |n| cfg.ks(n));
    vec![
        fixture("fixture-4-2-1", || {
            let d = condensation_fixture();
            let sizes = scc(&d).sizes();
            let r = verify_condensation_theorem(&d, 2)?;
            let pass =
                r.pass && r.scc_count == 5 && r.model_vertex_count == 5 && sizes == [4, 2, 1];
            Ok((pass, json!({ "sizes": sizes, "report": r })))
        }),
        sweep(
            "condensation-model",
            &items,
            |&(id, d, k)| match verify_condensation_theorem(d, k) {
                Ok(r) => Outcome::check(r.pass, || json!({ "instance": id, "k": k, "report": r })),
                Err(e) => Outcome::Fail(error_witness(id, Some(k), e)),
            },
        ),
        sweep(
            "strong-and-acyclic-equivalences",
            &items,
            |&(id, d, k)| match token_digraph(d, k) {
                Ok(f) => {
                    let (hd, hf) = (scc(d), scc(f.digraph()));
                    let ok = hd.is_strongly_connected() == hf.is_strongly_connected()
                        && hd.is_acyclic() == hf.is_acyclic();
                    Outcome::check(
                        ok,
                        || json!({ "instance": id, "k": k, "digraph": digraph_json(d) }),
                    )
                }
                Err(e) => Outcome::Fail(error_witness(id, Some(k), e)),
            },
        ),
    ]
}

pub fn component_products_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let corpus = cfg.corpus();
    let items = with_ks(&corpus, |n| cfg.ks(n));
    vec![sweep("component-products", &items, |&(id, d, k)| {
        let f = match token_digraph(d, k) {
            Ok(f) => f,
            Err(e) => return Outcome::Fail(error_witness(id, Some(k), e)),
        };
        let fdec = scc(f.digraph());
        for a in vector_representatives(d, &f) {
            match verify_component_decomposition_in(d, &f, &fdec, a) {
                Ok(r) if r.pass => {}
                Ok(r) => return Outcome::Fail(json!({ "instance": id, "k": k, "report": r })),
                Err(e) => return Outcome::Fail(error_witness(id, Some(k), e)),
            }
        }
        Outcome::Pass
    })]
}

fn unilateral_outcome(id: &str, d: &Digraph, k: usize) -> Outcome {
    let pred = match predict_token_unilateral(d, k) {
        Ok(p) => p,
        Err(e) => return Outcome::Fail(error_witness(id, Some(k), e)),
    };
    let actual = match token_digraph(d, k) {
        Ok(f) => is_unilateral(f.digraph()).unilateral,
        Err(e) => return Outcome::Fail(error_witness(id, Some(k), e)),
    };
    Outcome::check(
        pred.unilateral == actual && pred.certificate_valid != Some(false),
        || json!({ "instance": id, "k": k, "actual": actual, "prediction": pred, "digraph": digraph_json(d) }),
    )
}

pub fn unilateral_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let corpus: Vec<_> = cfg
        .corpus()
        .into_iter()
        .filter(|(_, d)| d.n() >= 4)
        .collect();
    let middle = |n: usize| {
        cfg.ks(n)
            .into_iter()
            .filter(|&k| k >= 2 && k + 2 <= n)
            .collect()
    };
    let items = with_ks(&corpus, middle);
    let exhaustive = cfg.exhaustive();
    let k2 = with_ks(&exhaustive, |n| if n >= 3 { vec![2] } else { vec![] });
    let extended = cfg.extended(150);
    let ext_items = with_ks(&extended, |n| {
        cfg.ks(n)
            .into_iter()
            .filter(|&k| k >= 2 && k + 2 <= n)
            .collect()
    });
    vec![
        sweep("prediction-matches-corpus", &items, |&(id, d, k)| {
            unilateral_outcome(id, d, k)
        }),
        sweep("prediction-matches-exhaustive-k2", &k2, |&(id, d, k)| {
            unilateral_outcome(id, d, k)
        }),
        sweep(
            "prediction-matches-random-6-7",
            &ext_items,
            |&(id, d, k)| unilateral_outcome(id, d, k),
        ),
    ]
}

fn is_tournament(d: &Digraph) -> bool {
    let n = d.n();
    (0..n).all(|u| (u + 1..n).all(|v| d.has_arc(u, v) != d.has_arc(v, u)))
}

pub fn girth_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut hosts: Vec<_> = cfg
        .corpus()
        .into_iter()
        .filter(|(_, d)| girth(d).is_some())
        .collect();
    hosts.extend(
        iso_corpus(5)
            .into_iter()
            .filter(|(_, d)| is_tournament(d) && girth(d).is_some()),
    );
    let items = with_ks(&hosts, |n| cfg.ks(n));
    vec![sweep(
        "girth-equal-circumference-bound",
        &items,
        |&(id, d, k)| match verify_girth_circumference(d, k) {
            Ok(r) => Outcome::check(
                r.pass,
                || json!({ "instance": id, "k": k, "report": r, "digraph": digraph_json(d) }),
            ),
            Err(e) => Outcome::Fail(error_witness(id, Some(k), e)),
        },
    )]
}

pub fn long_cycle_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let corpus = cfg.corpus();
    let items = with_ks(&corpus, |n| {
        cfg.ks(n)
            .into_iter()
            .filter(|&k| k >= 2 && k + 3 <= n)
            .collect()
    });
    vec![
        fixture("cycle5-plus-3-isolated", || {
            let d = with_isolated(&directed_cycle(5), 3);
            let c = construct_long_token_cycle(&d, 2)?;
            let valid = is_token_cycle(&d, 2, &c.cycle);
            Ok((
                valid && c.cycle.len() == 10,
                json!({ "length": c.cycle.len(), "valid": valid, "r": c.r }),
            ))
        }),
        sweep("construction-length-and-validity", &items, |&(id, d, k)| {
            match construct_long_token_cycle(d, k) {
                Ok(c) => Outcome::check(
                    c.cycle.len() == c.r * c.circumference && is_token_cycle(d, k, &c.cycle),
                    || json!({ "instance": id, "k": k, "construction": c }),
                ),
                Err(_) => Outcome::Skip,
            }
        }),
    ]
}

pub fn eulerian_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut hosts = cfg.corpus();
    hosts.extend(balanced_digraphs(cfg.n_max.max(6)));
    let items = with_ks(&hosts, |n| cfg.ks(n));
    vec![sweep(
        "degree-balance-equivalence",
        &items,
        |&(id, d, k)| match verify_eulerian_equivalence(d, k) {
            Ok(r) => Outcome::check(r.pass, || json!({ "instance": id, "k": k, "report": r })),
            Err(e) => Outcome::Fail(error_witness(id, Some(k), e)),
        },
    )]
}

pub fn hamiltonian_suite() -> Vec<CheckResult> {
    let ns: Vec<usize> = (3..=7).collect();
    let check = sweep("token-cycle-hamiltonicity", &ns, |&n| {
        let f = match token_digraph(&directed_cycle(n), 2) {
            Ok(f) => f,
            Err(e) => return Outcome::Fail(error_witness(&format!("cycle{n}"), Some(2), e)),
        };
        let witness = hamiltonian_cycle(f.digraph());
        let valid = witness
            .as_ref()
            .is_none_or(|w| w.is_valid_in(f.digraph()) && w.len() == f.node_count());
        let expected = n == 3 || n == 5;
        Outcome::check(
            valid && witness.is_some() == expected,
            || json!({ "n": n, "hamiltonian": witness.is_some(), "expected": expected }),
        )
    });
    let mut check = check;
    check.details = json!(ns
        .iter()
        .map(|&n| {
            let f = token_digraph(&directed_cycle(n), 2).expect("valid k");
            json!({ "n": n, "hamiltonian": is_hamiltonian(f.digraph()) })
        })
        .collect::<Vec<_>>());
    vec![check]
}

pub fn odd_cycle_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut hosts = cfg.corpus();
    hosts.extend(cfg.exhaustive().into_iter().filter(|(_, d)| d.n() >= 4));
    let items = with_ks(&hosts, |n| cfg.ks(n));
    let dags: Vec<_> = hosts
        .iter()
        .filter(|(_, d)| scc(d).is_acyclic())
        .cloned()
        .collect();
    vec![
        sweep(
            "odd-cycle-detector-matches-enumeration",
            &hosts,
            |(id, d)| {
                Outcome::check(
                    has_odd_oriented_cycle(d) == has_odd_cycle_by_enumeration(d),
                    || json!({ "instance": id, "digraph": digraph_json(d) }),
                )
            },
        ),
        sweep("odd-cycle-freeness-and-kernels", &items, |&(id, d, k)| {
            match verify_odd_cycle_preservation(d, k) {
                Ok(r) if r.skipped.is_some() => Outcome::Skip,
                Ok(r) => Outcome::check(r.pass, || json!({ "instance": id, "k": k, "report": r })),
                Err(e) => Outcome::Fail(error_witness(id, Some(k), e)),
            }
        }),
        sweep("dag-kernel-is-the-kernel", &dags, |(id, d)| {
            let peeled = dag_kernel(d);
            let searched = find_kernel(d);
            let ok = matches!((&peeled, &searched), (Ok(p), Some(s)) if p == s && is_kernel(d, p));
            Outcome::check(
                ok,
                || json!({ "instance": id, "peeled": peeled.ok(), "searched": searched }),
            )
        }),
    ]
}

pub fn kernels_suite() -> Vec<CheckResult> {
    vec![
        fixture("cycle5-versus-token-kernel", || {
            let c5 = directed_cycle(5);
            let host = find_kernel(&c5);
            let f = token_digraph(&c5, 2)?;
            let k = find_kernel(f.digraph());
            let size = k.as_ref().map(KernelSet::len);
            let pass = host.is_none()
                && k.as_ref()
                    .is_some_and(|k| is_kernel(f.digraph(), k) && k.len() == 5);
            Ok((
                pass,
                json!({ "host_kernel": host, "token_kernel_size": size }),
            ))
        }),
        fixture("triangle-digon-subdigraph-has-no-kernel", || {
            let fx = kernel_free_fixture();
            let pass = fx.digraph.n() == 6 && fx.kernel.is_none();
            Ok((
                pass,
                json!({ "nodes": fx.digraph.n(), "kernel": fx.kernel }),
            ))
        }),
        fixture("worked-formula-kernels", || {
            let phi = CnfFormula::worked_example();
            let g = reduce(&phi);
            let a =
                nae_oracle(&phi).ok_or_else(|| crate::Error::precondition("no NAE assignment"))?;
            let special = build_special_kernel(&g, &a)?;
            let tk = build_token_kernel(&g, &special)?;
            let nodes = binomial(g.digraph().n(), 2);
            Ok((
                g.digraph().n() == 18 && g.digraph().arc_count() == 34 && nodes == 153,
                json!({ "assignment": a, "special_kernel": special, "token_kernel_size": tk.kernel.len() }),
            ))
        }),
    ]
}

pub fn reduction_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let max_clauses = if cfg.slow { 3 } else { 2 };
    let mut formulas = formula_family(max_clauses);
    formulas.push(CnfFormula::worked_example());
    let mut check = sweep(
        &format!("nae-iff-token-kernel-up-to-{max_clauses}-clauses"),
        &formulas,
        |phi| match verify_reduction(phi) {
            Ok(r) => Outcome::check(r.pass, || json!(r)),
            Err(e) => Outcome::Fail(error_witness(&phi.to_string(), Some(2), e)),
        },
    );
    let nae = formulas.iter().filter(|f| nae_oracle(f).is_some()).count();
    check.details = json!({ "formulas": formulas.len(), "nae_satisfiable": nae });
    vec![check]
}

pub fn clique_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut hosts = cfg.exhaustive();
    hosts.extend(cfg.corpus().into_iter().filter(|(_, d)| d.n() >= 6));
    hosts.extend(cfg.extended(100));
    let items = with_ks(&hosts, |n| cfg.ks(n));
    vec![sweep(
        "clique-formula-and-clean-commutes",
        &items,
        |&(id, d, k)| match verify_clique_formula(d, k) {
            Ok(r) => Outcome::check(
                r.pass,
                || json!({ "instance": id, "report": r, "digraph": digraph_json(d) }),
            ),
            Err(e) => Outcome::Fail(error_witness(id, Some(k), e)),
        },
    )]
}

pub fn dichromatic_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let hosts = cfg.exhaustive();
    let items = with_ks(&hosts, |n| cfg.ks(n));
    let cyclic: Vec<_> = hosts
        .iter()
        .filter(|(_, d)| girth(d).is_some())
        .cloned()
        .collect();
    let cyclic_items = with_ks(&cyclic, |n| cfg.ks(n));
    vec![
        fixture("cycle5-token-dichromatic", || {
            let f = token_digraph(&directed_cycle(5), 2)?;
            let p = dichromatic_number(f.digraph())?;
            Ok((
                p.r == 2 && is_acyclic_partition(f.digraph(), &p),
                json!({ "dichromatic": p.r }),
            ))
        }),
        sweep("lifted-partition-is-acyclic", &items, |&(id, d, k)| {
            let run = || -> Result<Outcome> {
                let p = dichromatic_number(d)?;
                let lifted = lift_acyclic_partition(d, &p, k)?;
                let f = token_digraph(d, k)?;
                let exact = dichromatic_number(f.digraph())?;
                let ok = is_acyclic_partition(f.digraph(), &lifted) && exact.r <= p.r;
                Ok(Outcome::check(
                    ok,
                    || json!({ "instance": id, "k": k, "host": p.r, "token": exact.r, "lifted": lifted }),
                ))
            };
            run().unwrap_or_else(|e| Outcome::Fail(error_witness(id, Some(k), e)))
        }),
        sweep("cordero-bound", &cyclic_items, |&(id, d, k)| {
            let run = || -> Result<Outcome> {
                let b = cordero_bound(d)?;
                let host = dichromatic_number(d)?.r;
                let token = dichromatic_number(token_digraph(d, k)?.digraph())?.r;
                Ok(Outcome::check(
                    host <= b.bound && token <= b.bound,
                    || json!({ "instance": id, "k": k, "bound": b, "host": host, "token": token }),
                ))
            };
            run().unwrap_or_else(|e| Outcome::Fail(error_witness(id, Some(k), e)))
        }),
    ]
}

pub fn chromatic_suite() -> Vec<CheckResult> {
    let wheel = Family::Wheel.graph(5).expect("valid wheel");
    let cases: Vec<(&str, Graph, usize)> = vec![
        ("K4", complete_graph(4), 3),
        ("K5", complete_graph(5), 5),
        ("K6", complete_graph(6), 5),
        ("W5", wheel, 4),
        ("M(C5)", mycielski(&cycle_graph(5)), 4),
    ];
    let mut check = sweep(
        "token-graph-chromatic-numbers",
        &cases,
        |(id, g, expected)| {
            let run = || -> Result<Outcome> {
                let f = token_graph(g, 2)?;
                let c = chromatic_number(&f)?;
                Ok(Outcome::check(
                    c.r == *expected && is_proper_coloring(&f, &c),
                    || json!({ "instance": id, "chi_f2": c.r, "expected": expected }),
                ))
            };
            run().unwrap_or_else(|e| Outcome::Fail(error_witness(id, Some(2), e)))
        },
    );
    check.details = json!(cases
        .iter()
        .map(|(id, g, _)| {
            let chi = token_graph(g, 2)
                .and_then(|f| chromatic_number(&f))
                .map(|c| c.r)
                .ok();
            json!({ "instance": id, "chi_f2": chi })
        })
        .collect::<Vec<_>>());
    vec![check]
}

pub fn conjecture_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let graphs: Vec<Named<Graph>> = (2..=cfg.n_max)
        .flat_map(|n| {
            connected_graphs(n)
                .into_iter()
                .enumerate()
                .map(move |(i, g)| (format!("c{n}-{i:03}"), g))
        })
        .collect();
    vec![fixture("connected-graphs-scan", || {
        let r = scan_conjecture(&graphs)?;
        Ok((
            r.pass,
            json!({
                "graphs": r.graphs,
                "counterexamples": r.counterexamples,
                "violations": r.violations,
                "drops": r.drops,
            }),
        ))
    })]
}

pub fn k8c5_suite() -> Vec<CheckResult> {
    vec![fixture("k8-minus-c5-chromatic-numbers", || {
        let r = k8_minus_c5_study()?;
        Ok((
            r.pass,
            json!({ "node_counts": r.node_counts, "chi": r.chi, "expected": r.expected }),
        ))
    })]
}

/// One-shot invariant dump for a digraph.
pub fn analyze(d: &Digraph) -> Result<Value> {
    let dec = scc(d);
    let kernel = (d.n() <= 200).then(|| find_kernel(d));
    let dichromatic = if d.n() <= 20 {
        Some(dichromatic_number(d)?.r)
    } else {
        None
    };
    let mut tokens = Vec::new();
    for k in 1..d.n() {
        if binomial(d.n(), k) > 5000 {
            continue;
        }
        let f = token_digraph(d, k)?;
        let fdec = scc(f.digraph());
        tokens.push(json!({
            "k": k,
            "nodes": f.node_count(),
            "arcs": f.digraph().arc_count(),
            "strong_components": fdec.count(),
            "strongly_connected": fdec.is_strongly_connected(),
            "unilateral": is_unilateral(f.digraph()).unilateral,
        }));
    }
    Ok(json!({
        "n": d.n(),
        "arcs": d.arc_count(),
        "strong_component_sizes": dec.sizes(),
        "strongly_connected": dec.is_strongly_connected(),
        "acyclic": dec.is_acyclic(),
        "unilateral": is_unilateral(d).unilateral,
        "degree_balanced": is_degree_balanced(d),
        "girth": girth(d),
        "circumference": if d.n() <= 16 { circumference(d) } else { None },
        "odd_oriented_cycle": has_odd_oriented_cycle(d),
        "kernel": kernel,
        "dichromatic_number": dichromatic,
        "token_digraphs": tokens,
    }))
}

/// First candidate with a kernel whose `F_2` has none, by increasing order.
pub fn search_kernel_loss(n_max: usize) -> Option<(Digraph, KernelSet)> {
    crate::kernels::find_kernel_loss(iso_corpus(n_max.min(5)).into_iter().map(|(_, d)| d))
}

/// First sampled non-Hamiltonian digraph whose `F_2` is Hamiltonian.
pub fn search_hamiltonian_lift(n_max: usize, samples: usize, seed: u64) -> Option<Digraph> {
    let mut candidates: Vec<Digraph> = iso_corpus(n_max.min(4))
        .into_iter()
        .map(|(_, d)| d)
        .collect();
    for n in 5..=n_max.min(6) {
        candidates.extend(
            random_digraphs(n, samples, seed)
                .into_iter()
                .map(|(_, d)| d),
        );
    }
    candidates.into_iter().filter(|d| d.n() >= 3).find(|d| {
        scc(d).is_strongly_connected()
            && !is_hamiltonian(d)
            && token_digraph(d, 2).is_ok_and(|f| is_hamiltonian(f.digraph()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            n_max: 4,
            samples: 10,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.name().parse::<SuiteId>().unwrap(), id);
        }
        assert_eq!("lemma2".parse::<SuiteId>().unwrap(), SuiteId::ComponentProducts);
        assert!("nope".parse::<SuiteId>().is_err());
    }

    #[test]
    fn small_scope_suites_pass() {
        for id in SuiteId::ALL.into_iter().filter(|id| !id.is_slow()) {
            for c in id.run(&small()) {
                assert!(c.pass, "{id}: {c:?}");
            }
        }
    }

    #[test]
    fn reports_are_deterministic_without_timings() {
        let a = run_suites("verify eulerian", &[SuiteId::Eulerian], &small()).without_timings();
        let b = run_suites("verify eulerian", &[SuiteId::Eulerian], &small()).without_timings();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(a.checks.iter().all(|c| c.wall_ms.is_none()));
    }

    #[test]
    fn searches_find_examples() {
        let (d, k) = search_kernel_loss(5).expect("kernel loss exists");
        assert!(is_kernel(&d, &k));
        assert!(find_kernel(token_digraph(&d, 2).unwrap().digraph()).is_none());
        if let Some(d) = search_hamiltonian_lift(6, 200, 1) {
            assert!(!is_hamiltonian(&d));
            assert!(is_hamiltonian(token_digraph(&d, 2).unwrap().digraph()));
        }
    }

    #[test]
    fn analyze_cycle() {
        let v = analyze(&directed_cycle(5)).unwrap();
        assert_eq!(v["girth"], 5);
        assert_eq!(v["kernel"], Value::Null);
        assert_eq!(v["dichromatic_number"], 2);
        assert_eq!(v["token_digraphs"][1]["nodes"], 10);
    }
}
