//! Text formats: edge lists, DOT, DIMACS CNF, and JSON sidecars.
//!
//! Edge lists are a header `n m` followed by `m` lines `u v`. Blank lines
//! and lines starting with `#` are ignored. Errors carry 1-based line numbers.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::digraph::{Digraph, Graph};
use crate::error::{Error, Result};
use crate::kernels::{CnfFormula, GadgetDigraph, GadgetRole, Literal};
use crate::token::TokenDigraph;

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let mut it = s.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
        tok.parse().map_err(|_| {
            Error::parse(
                line,
                format!("{what} `{tok}` is not a non-negative integer"),
            )
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(Error::parse(line, format!("unexpected field `{extra}`")));
    }
    Ok((a, b))
}

/// `n`, then the pairs each tagged with its line number.
fn parse_pairs(text: &str) -> Result<(usize, Vec<(usize, usize, usize)>)> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
    let (n, m) = parse_pair(hl, header)?;
    let mut pairs = Vec::with_capacity(m);
    let mut last = hl;
    for (line, s) in lines {
        let (u, v) = parse_pair(line, s)?;
        for x in [u, v] {
            if x >= n {
                return Err(Error::parse(
                    line,
                    format!("vertex {x} out of range 0..{n}"),
                ));
            }
        }
        if u == v {
            return Err(Error::parse(line, format!("self-loop at vertex {u}")));
        }
        pairs.push((line, u, v));
        last = line;
    }
    if pairs.len() != m {
        return Err(Error::parse(
            last,
            format!("header declares {m} lines but {} were given", pairs.len()),
        ));
    }
    Ok((n, pairs))
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let (n, pairs) = parse_pairs(text)?;
    let mut seen = std::collections::HashSet::new();
    for &(line, u, v) in &pairs {
        if !seen.insert((u, v)) {
            return Err(Error::parse(line, format!("duplicate arc {u} {v}")));
        }
    }
    Digraph::from_arcs(n, pairs.into_iter().map(|(_, u, v)| (u, v)))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, pairs) = parse_pairs(text)?;
    let mut seen = std::collections::HashSet::new();
    for &(line, u, v) in &pairs {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
        }
    }
    Graph::from_edges(n, pairs.into_iter().map(|(_, u, v)| (u, v)))
}

/// Canonical edge list: arcs in lexicographic order.
pub fn write_digraph(d: &Digraph) -> String {
    let mut s = format!("{} {}\n", d.n(), d.arc_count());
    for (u, v) in d.arcs() {
        writeln!(s, "{u} {v}").expect("writing to a String");
    }
    s
}

/// Canonical edge list: edges `u < v` in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    let edges: Vec<_> = g.edges().collect();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        writeln!(s, "{u} {v}").expect("writing to a String");
    }
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph; `labels[v]` names vertex `v` when given.
pub fn digraph_to_dot(d: &Digraph, labels: Option<&[String]>) -> String {
    let mut s = String::from("digraph G {\n");
    for v in d.vertices() {
        let label = labels.map_or_else(|| v.to_string(), |l| dot_escape(&l[v]));
        writeln!(s, "  {v} [label=\"{label}\"];").expect("writing to a String");
    }
    for (u, v) in d.arcs() {
        writeln!(s, "  {u} -> {v};").expect("writing to a String");
    }
    s.push_str("}\n");
    s
}

pub fn graph_to_dot(g: &Graph, labels: Option<&[String]>) -> String {
    let mut s = String::from("graph G {\n");
    for v in g.vertices() {
        let label = labels.map_or_else(|| v.to_string(), |l| dot_escape(&l[v]));
        writeln!(s, "  {v} [label=\"{label}\"];").expect("writing to a String");
    }
    for (u, v) in g.edges() {
        writeln!(s, "  {u} -- {v};").expect("writing to a String");
    }
    s.push_str("}\n");
    s
}

/// Node labels of a token digraph, such as `{0,3}`.
pub fn token_labels(f: &TokenDigraph) -> Vec<String> {
    f.node_map()
        .iter()
        .map(|m| {
            let inner: Vec<String> = m.iter().map(usize::to_string).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect()
}

/// DIMACS CNF with exactly three literals per clause. Clauses may span
/// lines; each ends with `0`. A trailing `%` line is accepted.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        if l.starts_with('%') {
            break;
        }
        last_line = line;
        if l.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line, "second `p` line"));
            }
            let f: Vec<&str> = l.split_whitespace().collect();
            let (Some(&"p"), Some(&"cnf"), Some(v), Some(c), None) =
                (f.first(), f.get(1), f.get(2), f.get(3), f.get(4))
            else {
                return Err(Error::parse(line, "expected `p cnf <vars> <clauses>`"));
            };
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("`{s}` is not a count")))
            };
            header = Some((num(v)?, num(c)?));
            continue;
        }
        let (num_vars, _) =
            header.ok_or_else(|| Error::parse(line, "clause before `p cnf` header"))?;
        for tok in l.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("`{tok}` is not a literal")))?;
            match Literal::from_dimacs(x) {
                None => {
                    let clause: [Literal; 3] = current.as_slice().try_into().map_err(|_| {
                        Error::parse(
                            line,
                            format!("clause has {} literals, need exactly 3", current.len()),
                        )
                    })?;
                    clauses.push(clause);
                    current.clear();
                }
                Some(lit) if lit.var >= num_vars => {
                    return Err(Error::parse(
                        line,
                        format!("variable {} exceeds declared {num_vars}", lit.var + 1),
                    ));
                }
                Some(lit) => current.push(lit),
            }
        }
    }
    let (num_vars, num_clauses) =
        header.ok_or_else(|| Error::parse(last_line, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(Error::parse(
            last_line,
            "last clause is not terminated by 0",
        ));
    }
    if clauses.len() != num_clauses {
        return Err(Error::parse(
            last_line,
            format!(
                "header declares {num_clauses} clauses but {} were given",
                clauses.len()
            ),
        ));
    }
    CnfFormula::new(num_vars, clauses)
}

pub fn write_dimacs(phi: &CnfFormula) -> String {
    let mut s = format!("p cnf {} {}\n", phi.num_vars(), phi.clauses().len());
    for c in phi.clauses() {
        writeln!(
            s,
            "{} {} {} 0",
            c[0].to_dimacs(),
            c[1].to_dimacs(),
            c[2].to_dimacs()
        )
        .expect("writing to a String");
    }
    s
}

#[derive(Serialize)]
struct NodeEntry<'a> {
    node: usize,
    config: &'a [usize],
}

#[derive(Serialize)]
struct TokenSidecar<'a> {
    host_vertices: usize,
    k: usize,
    nodes: Vec<NodeEntry<'a>>,
}

/// JSON mapping each node of `F_k(D)` to its configuration.
pub fn token_sidecar_json(f: &TokenDigraph) -> String {
    let map = f.node_map();
    let sidecar = TokenSidecar {
        host_vertices: f.host().n(),
        k: f.k(),
        nodes: map
            .iter()
            .enumerate()
            .map(|(node, config)| NodeEntry { node, config })
            .collect(),
    };
    serde_json::to_string_pretty(&sidecar).expect("sidecar serializes")
}

#[derive(Serialize)]
struct RoleEntry {
    vertex: usize,
    #[serde(flatten)]
    role: GadgetRole,
    label: Option<String>,
}

#[derive(Serialize)]
struct RoleSidecar {
    formula: String,
    num_vars: usize,
    num_clauses: usize,
    roles: Vec<RoleEntry>,
}

/// JSON describing the role of each gadget vertex.
pub fn gadget_sidecar_json(g: &GadgetDigraph) -> String {
    let sidecar = RoleSidecar {
        formula: g.formula().to_string(),
        num_vars: g.formula().num_vars(),
        num_clauses: g.formula().clauses().len(),
        roles: g
            .roles()
            .iter()
            .enumerate()
            .map(|(vertex, &role)| RoleEntry {
                vertex,
                role,
                label: g.label(vertex).map(|l| l.to_string()),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&sidecar).expect("sidecar serializes")
}

/// Labels for DOT output of a gadget.
pub fn gadget_labels(g: &GadgetDigraph) -> Vec<String> {
    (0..g.digraph().n())
        .map(|v| match g.roles()[v] {
            GadgetRole::Sink => "u".to_string(),
            GadgetRole::Literal { .. } => g.label(v).expect("literal label").to_string(),
            GadgetRole::Clause { clause, .. } => {
                format!("{}@C{}", g.label(v).expect("clause label"), clause + 1)
            }
        })
        .collect()
}

pub fn read_digraph(path: &Path) -> Result<Digraph> {
    parse_digraph(&std::fs::read_to_string(path)?)
}

pub fn read_dimacs(path: &Path) -> Result<CnfFormula> {
    parse_dimacs(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{directed_cycle, directed_path, path_graph};
    use crate::kernels::reduce;
    use crate::token::token_digraph;
    use proptest::prelude::*;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_path() {
        assert_eq!(parse_digraph("3 2\n0 1\n1 2\n").unwrap(), directed_path(3));
        assert_eq!(parse_graph("3 2\n0 1\n2 1\n").unwrap(), path_graph(3));
        assert_eq!(
            parse_digraph("# comment\n\n3 2\n0 1\n1 2\n").unwrap(),
            directed_path(3)
        );
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(line_of(parse_digraph("3 2\n0 1\n0 1\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_digraph("3 2\n0 1\n1 7\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_digraph("3 1\n2 2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_digraph("3 1\n0 x\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_digraph("3 2\n0 1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_digraph("").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph("3 2\n0 1\n1 0\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_digraph("3 1\n0 1 2\n").unwrap_err()), 2);
    }

    #[test]
    fn round_trips() {
        let s = write_digraph(&directed_cycle(5));
        assert_eq!(s, "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
        assert_eq!(write_digraph(&parse_digraph(&s).unwrap()), s);
        let g = write_graph(&path_graph(4));
        assert_eq!(write_graph(&parse_graph(&g).unwrap()), g);
    }

    #[test]
    fn dimacs() {
        let phi = parse_dimacs("p cnf 3 1\n1 -2 3 0\n").unwrap();
        assert_eq!(phi.to_string(), "(x1 | ~x2 | x3)");
        let phi =
            parse_dimacs("c worked example\np cnf 4 3\n1 -2 3 0 -1 3\n4 0\n2 -3 -4 0\n").unwrap();
        assert_eq!(phi, CnfFormula::worked_example());
        assert_eq!(parse_dimacs(&write_dimacs(&phi)).unwrap(), phi);

        assert_eq!(line_of(parse_dimacs("p cnf 3 1\n1 2 0\n").unwrap_err()), 2);
        assert_eq!(
            line_of(parse_dimacs("p cnf 2 1\n1 2 3 0\n").unwrap_err()),
            2
        );
        assert_eq!(line_of(parse_dimacs("1 2 3 0\n").unwrap_err()), 1);
        assert_eq!(
            line_of(parse_dimacs("p cnf 3 2\n1 2 3 0\n").unwrap_err()),
            2
        );
        assert_eq!(line_of(parse_dimacs("p cnf 3 1\n1 2 3\n").unwrap_err()), 2);
    }

    #[test]
    fn dot_and_sidecars() {
        let dot = digraph_to_dot(&directed_path(2), None);
        assert_eq!(
            dot,
            "digraph G {\n  0 [label=\"0\"];\n  1 [label=\"1\"];\n  0 -> 1;\n}\n"
        );
        let f = token_digraph(&directed_cycle(4), 2).unwrap();
        assert_eq!(token_labels(&f)[0], "{0,1}");
        let v: serde_json::Value = serde_json::from_str(&token_sidecar_json(&f)).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
        assert_eq!(v["nodes"][2]["config"], serde_json::json!([1, 2]));

        let g = reduce(&CnfFormula::worked_example());
        let v: serde_json::Value = serde_json::from_str(&gadget_sidecar_json(&g)).unwrap();
        assert_eq!(v["roles"].as_array().unwrap().len(), 18);
        assert_eq!(v["roles"][17]["role"], "sink");
        assert_eq!(v["roles"][9]["role"], "clause");
        assert_eq!(v["roles"][9]["label"], "~x2");
        assert_eq!(gadget_labels(&g)[1], "~x1");
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(n in 1usize..8, bits in proptest::collection::vec(any::<bool>(), 64)) {
            let arcs = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v && bits[u * 8 + v]);
            let d = Digraph::from_arcs(n, arcs).unwrap();
            let s = write_digraph(&d);
            let back = parse_digraph(&s).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(write_digraph(&back), s);
        }
    }
}
