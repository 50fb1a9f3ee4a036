//! Replay of the monotonicity derivation for the product connective.

use super::builder::ProofBuilder;
use super::proof::Proof;
use crate::syntax::{Formula, LogicProfile, Theory};

/// `(α → β) → ((γ • α) → (γ • β))`.
pub fn bullet_monotonicity_formula(alpha: &Formula, beta: &Formula, gamma: &Formula) -> Formula {
    Formula::imp(
        Formula::imp(alpha.clone(), beta.clone()),
        Formula::imp(
            Formula::bullet(gamma.clone(), alpha.clone()),
            Formula::bullet(gamma.clone(), beta.clone()),
        ),
    )
}

/// Nine-stage derivation of [`bullet_monotonicity_formula`]. Stages 6 and
/// 8 cite the registered lemmas; stages 3, 7 and 9 are syllogisms, each
/// expanding into an `L2` instance and two modus ponens. Stage 4 is an `L2`
/// instance with `γ := 0`.
pub fn replay_prop33(alpha: &Formula, beta: &Formula, gamma: &Formula) -> Proof {
    let profile = LogicProfile::BASE.with_product();
    let mut b = ProofBuilder::new(Theory::empty(profile));
    b.bullet_monotonicity(alpha, beta, gamma, true);
    b.finish(&bullet_monotonicity_formula(alpha, beta, gamma))
}
