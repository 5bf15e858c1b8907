//! Token digraphs: construction of `F_k(D)`, structural invariants of digraphs
//! and their token digraphs, and exact verification harnesses that check the
//! known transfer theorems against brute-force oracles on small instances.

pub mod coloring;
pub mod corpus;
pub mod cycles;
pub mod digraph;
pub mod error;
pub mod io;
pub mod kernels;
pub mod scc;
pub mod subset;
pub mod suites;
pub mod token;

pub use digraph::{Digraph, Family, Graph};
pub use error::{Error, Result};
pub use token::{token_digraph, token_graph, TokenConfig, TokenDigraph};
