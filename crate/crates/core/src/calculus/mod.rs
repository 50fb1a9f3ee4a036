//! Hilbert calculus: axiom schemes for every profile, proofs, the checker,
//! derived-rule construction, proof search and ground proof synthesis.

mod builder;
mod check;
mod ground;
mod lemma;
mod proof;
mod replay;
mod scheme;
mod search;

pub use builder::ProofBuilder;
pub use check::{check_proof, check_proof_with, StepIssue, Verdict};
pub use ground::synthesize_ground_proof;
pub use lemma::{
    register_lemma, standard_lemmas, validate_lemma, LemmaRecord, LemmaRegistry, LemmaStatus,
    ValidationBudget, IMP_NEG_ODOT, NEG_ODOT_IMP,
};
pub use proof::{Justification, Proof, ProofStep};
pub use replay::{bullet_monotonicity_formula, replay_prop33};
pub use scheme::{
    const_impl, const_op, division_residual, division_unfold, match_scheme, match_scheme_all,
    AxiomScheme, Instantiation, Param, METAVARIABLES,
};
pub use search::{search_proof, SearchBudget};
