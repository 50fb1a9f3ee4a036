//! Łukasiewicz logic and its admissible expansions (product, division,
//! negation fixpoint, rational truth constants).
//!
//! * [`syntax`]: formulas, profiles, theories and the ASCII syntax.
//! * [`algebra`]: exact evaluation, equational suites, congruences.
//! * [`calculus`]: axiom schemes, Hilbert proofs, the checker, proof search
//!   and proof synthesis.
//! * [`degrees`]: truth degrees (exact and certified), proof-degree lower
//!   bounds and the completeness/compactness harnesses.

pub mod algebra;
pub mod calculus;
pub mod degrees;
pub mod error;
pub mod gen;
pub mod rational;
pub mod syntax;

pub use num_bigint;
pub use num_rational;

pub use algebra::{eval, Valuation};
pub use degrees::DegreeBounds;
pub use error::*;
pub use rational::Rational01;
pub use syntax::{parse, Formula, LogicProfile, Theory};
