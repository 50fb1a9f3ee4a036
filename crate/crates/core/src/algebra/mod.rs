//! Exact semantics: the standard algebra on `[0,1]` and its expansions,
//! finite chains, equational suites and congruences of finite algebras.

mod chain;
mod eval;
mod finite;
pub mod identities;

pub use chain::{
    check_identity, eval_chain, Counterexample, FiniteChain, IdentityModel, IdentityReport,
};
pub use eval::{eval, value, Valuation};
pub use finite::{
    check_compatible_expansion, enumerate_congruences, CongruenceSet, FiniteAlgebra, Operation,
    Partition, DEFAULT_SIZE_BOUND, MV_OPERATIONS,
};
