//! NAE-3-SAT to token-kernel reduction: the gadget digraph, the special
//! kernel built from a NAE assignment, and the lifted kernel of `F_2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{find_kernel, is_kernel, KernelSet};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::token::{token_digraph, TokenConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    /// 0-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            positive: !self.positive,
            ..self
        }
    }

    /// DIMACS form: 1-based, negative when negated.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(x: i64) -> Option<Self> {
        (x != 0).then(|| Literal {
            var: x.unsigned_abs() as usize - 1,
            positive: x > 0,
        })
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.positive { "" } else { "~" };
        write!(f, "{sign}x{}", self.var + 1)
    }
}

/// A 3-CNF formula. Repeated literals inside a clause are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for c in &clauses {
            if let Some(l) = c.iter().find(|l| l.var >= num_vars) {
                return Err(Error::precondition(format!(
                    "literal {l} uses a variable beyond {num_vars}"
                )));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds from DIMACS-style signed 1-based literals.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[[i64; 3]]) -> Result<Self> {
        let cs = clauses
            .iter()
            .map(|c| {
                let lit = |x: i64| {
                    Literal::from_dimacs(x)
                        .ok_or_else(|| Error::precondition("literal 0 in clause"))
                };
                Ok([lit(c[0])?, lit(c[1])?, lit(c[2])?])
            })
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::new(num_vars, cs)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Some clause has one or two true literals, in every clause.
    pub fn is_nae(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars
            && self.clauses.iter().all(|c| {
                let t = c.iter().filter(|l| l.eval(assignment)).count();
                t == 1 || t == 2
            })
    }

    /// The formula used for the worked gadget example:
    /// `(x1 | ~x2 | x3) & (~x1 | x3 | x4) & (x2 | ~x3 | ~x4)`.
    pub fn worked_example() -> Self {
        CnfFormula::from_dimacs_clauses(4, &[[1, -2, 3], [-1, 3, 4], [2, -3, -4]])
            .expect("valid formula")
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "true");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            write!(f, "({} | {} | {})", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

/// What a gadget vertex stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum GadgetRole {
    Literal { var: usize, positive: bool },
    Clause { clause: usize, position: usize },
    Sink,
}

/// Gadget digraph. Literal `x_j` is vertex `2j`, `~x_j` is `2j + 1`; position
/// `p` of clause `i` is `2v + 3i + p`; the sink `u` is last.
#[derive(Clone, Debug)]
pub struct GadgetDigraph {
    formula: CnfFormula,
    digraph: Digraph,
    roles: Vec<GadgetRole>,
}

impl GadgetDigraph {
    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn roles(&self) -> &[GadgetRole] {
        &self.roles
    }

    pub fn literal_vertex(&self, l: Literal) -> usize {
        2 * l.var + usize::from(!l.positive)
    }

    pub fn clause_vertex(&self, clause: usize, position: usize) -> usize {
        2 * self.formula.num_vars + 3 * clause + position
    }

    pub fn sink(&self) -> usize {
        self.digraph.n() - 1
    }

    /// Label of a literal or clause vertex.
    pub fn label(&self, v: usize) -> Option<Literal> {
        match self.roles[v] {
            GadgetRole::Literal { var, positive } => Some(Literal { var, positive }),
            GadgetRole::Clause { clause, position } => Some(self.formula.clauses[clause][position]),
            GadgetRole::Sink => None,
        }
    }

    pub fn is_literal(&self, v: usize) -> bool {
        matches!(self.roles[v], GadgetRole::Literal { .. })
    }

    pub fn is_clause(&self, v: usize) -> bool {
        matches!(self.roles[v], GadgetRole::Clause { .. })
    }

    /// `D' = D - u`; vertex ids are unchanged since `u` is last.
    pub fn without_sink(&self) -> Digraph {
        self.digraph.remove_vertex(self.sink())
    }
}

pub fn reduce(phi: &CnfFormula) -> GadgetDigraph {
    let v = phi.num_vars;
    let c = phi.clauses.len();
    let n = 2 * v + 3 * c + 1;
    let u = n - 1;
    let mut roles = Vec::with_capacity(n);
    for var in 0..v {
        roles.push(GadgetRole::Literal {
            var,
            positive: true,
        });
        roles.push(GadgetRole::Literal {
            var,
            positive: false,
        });
    }
    for clause in 0..c {
        for position in 0..3 {
            roles.push(GadgetRole::Clause { clause, position });
        }
    }
    roles.push(GadgetRole::Sink);

    let lit = |l: Literal| 2 * l.var + usize::from(!l.positive);
    let mut arcs = Vec::with_capacity(4 * v + 6 * c);
    for var in 0..v {
        arcs.push((2 * var, 2 * var + 1));
        arcs.push((2 * var + 1, 2 * var));
        arcs.push((2 * var, u));
        arcs.push((2 * var + 1, u));
    }
    for (i, cl) in phi.clauses.iter().enumerate() {
        let base = 2 * v + 3 * i;
        for p in 0..3 {
            arcs.push((base + p, base + (p + 1) % 3));
            arcs.push((base + p, lit(cl[p])));
        }
    }
    let digraph = Digraph::from_arcs(n, arcs).expect("gadget arcs are valid");
    GadgetDigraph {
        formula: phi.clone(),
        digraph,
        roles,
    }
}

/// First NAE assignment in binary counting order, or `None`.
pub fn nae_oracle(phi: &CnfFormula) -> Option<Vec<bool>> {
    let v = phi.num_vars;
    assert!(v < 32, "exhaustive NAE search is limited to 31 variables");
    (0u32..1 << v)
        .map(|bits| (0..v).map(|j| bits & (1 << j) != 0).collect::<Vec<_>>())
        .find(|a| phi.is_nae(a))
}

/// Special kernel of `D' = D - u`: the true literal of each digon and one
/// false-labelled vertex per triangle. With two false-labelled vertices the
/// one absorbing the other is taken.
pub fn build_special_kernel(g: &GadgetDigraph, assignment: &[bool]) -> Result<KernelSet> {
    let phi = &g.formula;
    if !phi.is_nae(assignment) {
        return Err(Error::precondition("assignment is not NAE for the formula"));
    }
    let mut k = Vec::new();
    for var in 0..phi.num_vars {
        k.push(g.literal_vertex(Literal {
            var,
            positive: assignment[var],
        }));
    }
    for (i, cl) in phi.clauses.iter().enumerate() {
        let false_pos: Vec<usize> = (0..3).filter(|&p| !cl[p].eval(assignment)).collect();
        let p = match false_pos[..] {
            [p] => p,
            // Position a points to a+1, so the later one in the cycle absorbs.
            [a, b] => {
                if (a + 1) % 3 == b {
                    b
                } else {
                    a
                }
            }
            _ => unreachable!("NAE leaves one or two false literals"),
        };
        k.push(g.clause_vertex(i, p));
    }
    let k = KernelSet::new(k);
    debug_assert!(is_special_kernel(g, &k));
    if !is_special_kernel(g, &k) {
        return Err(Error::precondition(
            "constructed set is not a special kernel",
        ));
    }
    Ok(k)
}

/// Kernel of `D'` with exactly one vertex per digon and per triangle.
pub fn is_special_kernel(g: &GadgetDigraph, k: &KernelSet) -> bool {
    if k.contains(g.sink()) || !is_kernel(&g.without_sink(), k) {
        return false;
    }
    let phi = &g.formula;
    let digons = (0..phi.num_vars).all(|var| {
        let a = k.contains(g.literal_vertex(Literal::pos(var)));
        let b = k.contains(g.literal_vertex(Literal::neg(var)));
        a != b
    });
    let triangles = (0..phi.clauses.len()).all(|i| {
        (0..3)
            .filter(|&p| k.contains(g.clause_vertex(i, p)))
            .count()
            == 1
    });
    digons && triangles
}

/// Kernel of `F_2(D)` lifted from a special kernel, split into its four parts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TokenKernel {
    pub s1: Vec<TokenConfig>,
    pub s2: Vec<TokenConfig>,
    pub s3: Vec<TokenConfig>,
    pub s4: Vec<TokenConfig>,
    /// Node indices in `F_2(D)`.
    pub kernel: KernelSet,
}

pub fn build_token_kernel(g: &GadgetDigraph, special: &KernelSet) -> Result<TokenKernel> {
    if !is_special_kernel(g, special) {
        return Err(Error::precondition(
            "input is not a special kernel of D - u",
        ));
    }
    let d = &g.digraph;
    let n = d.n();
    let u = g.sink();
    let in_k = |v: usize| special.contains(v);
    let literals: Vec<usize> = (0..n).filter(|&v| g.is_literal(v)).collect();
    let clauses: Vec<usize> = (0..n).filter(|&v| g.is_clause(v)).collect();

    // For each clause vertex: 0 in K', 1 dominating, 2 undominating.
    let kind = |y: usize| -> u8 {
        let GadgetRole::Clause { clause, position } = g.roles[y] else {
            unreachable!()
        };
        let chosen = (0..3)
            .find(|&p| in_k(g.clause_vertex(clause, p)))
            .expect("special kernel meets every triangle");
        if position == chosen {
            0
        } else if (position + 1) % 3 == chosen {
            1
        } else {
            2
        }
    };
    let triangle = |y: usize| match g.roles[y] {
        GadgetRole::Clause { clause, .. } => clause,
        _ => unreachable!(),
    };
    let lit_nbr_in_k = |y: usize| {
        d.out_neighbors(y)
            .iter()
            .any(|&w| g.is_literal(w) && in_k(w))
    };

    let pair = |a: usize, b: usize| TokenConfig::new(&[a, b]).expect("distinct vertices");
    let s1: Vec<_> = special.members.iter().map(|&v| pair(u, v)).collect();
    let mut s2 = Vec::new();
    for (i, &a) in literals.iter().enumerate() {
        for &b in &literals[i + 1..] {
            if !in_k(a) && !in_k(b) {
                s2.push(pair(a, b));
            }
        }
    }
    let mut s3 = Vec::new();
    for &v in &literals {
        for &y in &clauses {
            if (in_k(v) && kind(y) == 1) || (!in_k(v) && kind(y) == 2) {
                s3.push(pair(v, y));
            }
        }
    }
    let mut s4 = Vec::new();
    for (i, &y) in clauses.iter().enumerate() {
        for &z in &clauses[i + 1..] {
            let (ky, kz) = (kind(y), kind(z));
            let keep = (ky == 0 && kz == 0)
                || (ky == 1 && kz == 1 && !lit_nbr_in_k(y) && !lit_nbr_in_k(z))
                || (ky == 2 && kz == 2)
                || (triangle(y) == triangle(z) && matches!((ky, kz), (0, 1) | (1, 0)));
            if keep {
                s4.push(pair(y, z));
            }
        }
    }

    let f = token_digraph(d, 2)?;
    let nodes = s1
        .iter()
        .chain(&s2)
        .chain(&s3)
        .chain(&s4)
        .map(|&c| f.node_of(c).expect("pair of host vertices"))
        .collect();
    let kernel = KernelSet::new(nodes);
    if !is_kernel(f.digraph(), &kernel) {
        return Err(Error::precondition(format!(
            "lifted set is not a kernel of F_2: {:?}",
            super::kernel_violation(f.digraph(), &kernel)
        )));
    }
    Ok(TokenKernel {
        s1,
        s2,
        s3,
        s4,
        kernel,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub formula: String,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub gadget_vertices: usize,
    pub token_nodes: usize,
    pub nae_assignment: Option<Vec<bool>>,
    pub token_kernel_exists: bool,
    /// Whether the S1..S4 construction produced a verified kernel, when NAE.
    pub constructed_kernel_valid: Option<bool>,
    pub pass: bool,
}

/// NAE-satisfiable iff `F_2(reduce(phi))` has a kernel, checked by exact
/// search; the constructive direction is also checked when NAE.
pub fn verify_reduction(phi: &CnfFormula) -> Result<ReductionReport> {
    let g = reduce(phi);
    let f = token_digraph(g.digraph(), 2)?;
    let nae = nae_oracle(phi);
    let token_kernel_exists = find_kernel(f.digraph()).is_some();
    let constructed_kernel_valid = nae.as_ref().map(|a| {
        build_special_kernel(&g, a)
            .and_then(|k| build_token_kernel(&g, &k))
            .is_ok()
    });
    let pass = nae.is_some() == token_kernel_exists && constructed_kernel_valid != Some(false);
    Ok(ReductionReport {
        formula: phi.to_string(),
        num_vars: phi.num_vars,
        num_clauses: phi.clauses.len(),
        gadget_vertices: g.digraph.n(),
        token_nodes: f.node_count(),
        nae_assignment: nae,
        token_kernel_exists,
        constructed_kernel_valid,
        pass,
    })
}

/// Subdigraph of `F_2(D)` on configurations with one token in the digon of
/// `x1` and one in the triangle of `(x1 | ~x2 | x3)`, for the worked example.
#[derive(Clone, Debug)]
pub struct KernelFreeFixture {
    pub digraph: Digraph,
    pub configs: Vec<TokenConfig>,
    pub kernel: Option<KernelSet>,
}

pub fn kernel_free_fixture() -> KernelFreeFixture {
    let g = reduce(&CnfFormula::worked_example());
    let f = token_digraph(g.digraph(), 2).expect("k = 2 is valid");
    let digon = [
        g.literal_vertex(Literal::pos(0)),
        g.literal_vertex(Literal::neg(0)),
    ];
    let mut configs = Vec::new();
    for &a in &digon {
        for p in 0..3 {
            configs.push(TokenConfig::new(&[a, g.clause_vertex(0, p)]).expect("distinct"));
        }
    }
    let nodes: Vec<usize> = configs
        .iter()
        .map(|&c| f.node_of(c).expect("valid pair"))
        .collect();
    let digraph = f.digraph().induced(&nodes);
    let kernel = find_kernel(&digraph);
    KernelFreeFixture {
        digraph,
        configs,
        kernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::kernels_brute_force;

    fn single() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(3, &[[1, 2, 3]]).unwrap()
    }

    fn unsat_with_duplicates() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(2, &[[1, 1, 2], [1, 1, -2], [-1, -1, 2], [-1, -1, -2]])
            .unwrap()
    }

    #[test]
    fn gadget_counts() {
        let g = reduce(&CnfFormula::worked_example());
        assert_eq!(g.digraph().n(), 18);
        assert_eq!(g.digraph().arc_count(), 34);
        let g1 = reduce(&single());
        assert_eq!(g1.digraph().n(), 10);
        assert_eq!(g1.digraph().arc_count(), 4 * 3 + 6);
        for g in [&g, &g1] {
            assert_eq!(g.digraph().out_degree(g.sink()), 0);
            assert_eq!(g.roles()[g.sink()], GadgetRole::Sink);
        }
    }

    #[test]
    fn gadget_structure() {
        let g = reduce(&CnfFormula::worked_example());
        let d = g.digraph();
        // ~x2 at position 1 of clause 0 points to the ~x2 literal vertex.
        assert!(d.has_arc(g.clause_vertex(0, 1), g.literal_vertex(Literal::neg(1))));
        assert!(d.has_arc(g.clause_vertex(0, 0), g.clause_vertex(0, 1)));
        assert!(d.has_arc(g.clause_vertex(0, 2), g.clause_vertex(0, 0)));
        assert!(d.has_arc(0, 1) && d.has_arc(1, 0) && d.has_arc(0, g.sink()));
        assert_eq!(g.label(g.clause_vertex(2, 2)), Some(Literal::neg(3)));
    }

    #[test]
    fn nae_examples() {
        assert_eq!(nae_oracle(&single()), Some(vec![true, false, false]));
        let triple = CnfFormula::from_dimacs_clauses(1, &[[1, 1, 1]]).unwrap();
        assert_eq!(nae_oracle(&triple), None);
        assert_eq!(nae_oracle(&unsat_with_duplicates()), None);
        let phi = CnfFormula::worked_example();
        assert!(phi.is_nae(&[true, true, false, true]));
    }

    #[test]
    fn special_kernel_examples() {
        let g = reduce(&single());
        let k = build_special_kernel(&g, &[true, false, false]).unwrap();
        assert_eq!(k.len(), 4);
        assert!(k.contains(g.literal_vertex(Literal::pos(0))));
        assert!(k.contains(g.literal_vertex(Literal::neg(1))));
        assert!(k.contains(g.literal_vertex(Literal::neg(2))));
        // Positions 1 and 2 are false; 1 -> 2, so 2 absorbs 1.
        assert!(k.contains(g.clause_vertex(0, 2)));
        assert!(is_kernel(&g.without_sink(), &k));

        assert!(build_special_kernel(&g, &[true, true, true]).is_err());

        let g = reduce(&CnfFormula::worked_example());
        let k = build_special_kernel(&g, &[true, true, false, true]).unwrap();
        assert!(is_special_kernel(&g, &k));
        assert_eq!(k.len(), 4 + 3);
    }

    #[test]
    fn token_kernel_examples() {
        for (phi, nodes) in [(single(), 45), (CnfFormula::worked_example(), 153)] {
            let g = reduce(&phi);
            let a = nae_oracle(&phi).unwrap();
            let special = build_special_kernel(&g, &a).unwrap();
            let tk = build_token_kernel(&g, &special).unwrap();
            assert_eq!(tk.s1.len(), special.len());
            let f = token_digraph(g.digraph(), 2).unwrap();
            assert_eq!(f.node_count(), nodes);
            assert!(is_kernel(f.digraph(), &tk.kernel));
        }
        let g = reduce(&single());
        assert!(build_token_kernel(&g, &KernelSet::new(vec![0])).is_err());
    }

    #[test]
    fn reduction_examples() {
        let r = verify_reduction(&single()).unwrap();
        assert!(r.pass && r.token_kernel_exists, "{r:?}");
        let r = verify_reduction(&unsat_with_duplicates()).unwrap();
        assert!(r.pass && !r.token_kernel_exists, "{r:?}");
        let r = verify_reduction(&CnfFormula::worked_example()).unwrap();
        assert!(r.pass && r.token_kernel_exists && r.constructed_kernel_valid == Some(true));
    }

    #[test]
    fn six_node_fixture_has_no_kernel() {
        let fx = kernel_free_fixture();
        assert_eq!(fx.digraph.n(), 6);
        assert_eq!(fx.configs.len(), 6);
        assert_eq!(fx.kernel, None);
        assert!(kernels_brute_force(&fx.digraph).is_empty());
    }

    #[test]
    fn display_and_dimacs() {
        assert_eq!(
            CnfFormula::worked_example().to_string(),
            "(x1 | ~x2 | x3) & (~x1 | x3 | x4) & (x2 | ~x3 | ~x4)"
        );
        assert_eq!(Literal::from_dimacs(-3), Some(Literal::neg(2)));
        assert_eq!(Literal::neg(2).to_dimacs(), -3);
        assert!(CnfFormula::from_dimacs_clauses(2, &[[1, 2, 3]]).is_err());
    }
}
