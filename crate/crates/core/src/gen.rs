//! Seeded generators for test corpora: random formulas, theories and proof
//! mutations. Every generator is a pure function of its RNG state.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::calculus::{AxiomScheme, Justification, Proof};
use crate::degrees::truncation_nodes;
use crate::rational::Rational01;
use crate::syntax::{Formula, LogicProfile, Theory};

/// Variable names `p`, `q`, `r`, `s`, then `x4`, `x5`, ...
pub fn variable_names(n: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["p", "q", "r", "s"];
    (0..n)
        .map(|i| NAMES.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string()))
        .collect()
}

/// A random formula of depth at most `depth` over `vars`, using only
/// connectives the profile admits. With no variables the result is ground.
pub fn formula<R: Rng + ?Sized>(rng: &mut R, vars: &[String], depth: u32, profile: &LogicProfile) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return atom(rng, vars, profile);
    }
    let d = depth - 1;
    let mut choices: Vec<u8> = vec![0, 0, 1, 2, 3, 4, 5];
    if profile.product {
        choices.push(6);
    }
    if profile.division {
        choices.push(7);
    }
    match *choices.choose(rng).expect("non-empty") {
        0 => Formula::imp(formula(rng, vars, d, profile), formula(rng, vars, d, profile)),
        1 => Formula::neg(formula(rng, vars, d, profile)),
        2 => Formula::odot(formula(rng, vars, d, profile), formula(rng, vars, d, profile)),
        3 => Formula::oplus(formula(rng, vars, d, profile), formula(rng, vars, d, profile)),
        4 => Formula::meet(formula(rng, vars, d, profile), formula(rng, vars, d, profile)),
        5 => Formula::join(formula(rng, vars, d, profile), formula(rng, vars, d, profile)),
        6 => Formula::bullet(formula(rng, vars, d, profile), formula(rng, vars, d, profile)),
        _ => Formula::div(rng.gen_range(1..=4), formula(rng, vars, d, profile)),
    }
}

fn atom<R: Rng + ?Sized>(rng: &mut R, vars: &[String], profile: &LogicProfile) -> Formula {
    if !vars.is_empty() && rng.gen_bool(0.7) {
        return Formula::Var(vars.choose(rng).expect("non-empty").clone());
    }
    let mut choices: Vec<u8> = vec![0, 1];
    if profile.constants {
        choices.extend([2, 2, 2]);
    }
    if profile.fixpoint {
        choices.push(3);
    }
    match *choices.choose(rng).expect("non-empty") {
        0 => Formula::Zero,
        1 => Formula::One,
        2 => Formula::Const(Rational01::sample(rng, 6)),
        _ => Formula::FixK,
    }
}

/// Profile of the piecewise-linear corpus: everything but the product.
pub fn pl_profile() -> LogicProfile {
    LogicProfile::BASE.with_constants().with_division().with_fixpoint()
}

/// A product-free formula over `vars` with at most `max_truncations`
/// truncation nodes, by rejection.
pub fn pl_formula<R: Rng + ?Sized>(rng: &mut R, vars: &[String], depth: u32, max_truncations: usize) -> Formula {
    let profile = pl_profile();
    loop {
        let f = formula(rng, vars, depth, &profile);
        if truncation_nodes(&f).is_ok_and(|n| n <= max_truncations) {
            return f;
        }
    }
}

/// A theory of `size` product-free generators, each with at most
/// `max_truncations` truncation nodes.
pub fn pl_theory<R: Rng + ?Sized>(
    rng: &mut R,
    vars: &[String],
    size: usize,
    depth: u32,
    max_truncations: usize,
) -> Theory {
    let generators = (0..size).map(|_| pl_formula(rng, vars, depth, max_truncations)).collect();
    Theory::new(pl_profile(), generators)
}

/// A variable-free formula over base connectives, constants, `δ_n` and `K`.
pub fn ground_formula<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> Formula {
    formula(rng, &[], depth, &pl_profile())
}

/// A formula/theory pair built so that short derivations usually exist:
/// the target is a generator, the consequent of a detachable generator, or
/// a theorem instance, and constants may guard either side.
pub fn derivable_instance<R: Rng + ?Sized>(rng: &mut R, vars: &[String]) -> (Formula, Theory) {
    let profile = pl_profile();
    let small = |rng: &mut R| formula(rng, vars, 2, &profile);
    let mut generators: Vec<Formula> = (0..rng.gen_range(0..=2)).map(|_| small(rng)).collect();
    let phi = match rng.gen_range(0..5) {
        0 => {
            let g = small(rng);
            generators.push(g.clone());
            g
        }
        1 => {
            let (a, b) = (small(rng), small(rng));
            generators.push(a.clone());
            generators.push(Formula::imp(a, b.clone()));
            b
        }
        2 => {
            let (a, b) = (small(rng), small(rng));
            Formula::imp(a.clone(), Formula::imp(b, a))
        }
        3 => {
            let r = Rational01::sample(rng, 6);
            let b = small(rng);
            generators.push(Formula::imp(Formula::Const(r), b.clone()));
            b
        }
        _ => {
            let a = small(rng);
            Formula::imp(a.clone(), a)
        }
    };
    generators.shuffle(rng);
    (phi, Theory::new(profile, generators))
}

/// Kind of a single-step proof mutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// `mp:i,j` becomes `mp:j,i`.
    PremiseSwap,
    /// A step's formula is negated or has its implication reversed.
    FormulaEdit,
    /// An axiom step cites a different scheme.
    SchemeRename,
}

/// Applies one mutation of a randomly chosen kind to a random eligible
/// step. Returns `None` only for an empty proof.
pub fn mutate_proof<R: Rng + ?Sized>(rng: &mut R, proof: &Proof) -> Option<(Mutation, Proof)> {
    if proof.is_empty() {
        return None;
    }
    let mps: Vec<usize> = steps_where(proof, |j| matches!(j, Justification::ModusPonens(..)));
    let axioms: Vec<usize> = steps_where(proof, |j| matches!(j, Justification::Axiom { .. }));
    let mut kinds = vec![Mutation::FormulaEdit];
    if !mps.is_empty() {
        kinds.push(Mutation::PremiseSwap);
    }
    if !axioms.is_empty() {
        kinds.push(Mutation::SchemeRename);
    }
    let kind = *kinds.choose(rng).expect("non-empty");
    let mut out = proof.clone();
    match kind {
        Mutation::PremiseSwap => {
            let i = *mps.choose(rng).expect("non-empty");
            if let Justification::ModusPonens(a, b) = out.steps[i].justification {
                out.steps[i].justification = Justification::ModusPonens(b, a);
            }
        }
        Mutation::FormulaEdit => {
            let i = rng.gen_range(0..out.steps.len());
            let f = &out.steps[i].formula;
            out.steps[i].formula = match f {
                Formula::Impl(a, b) if a != b && rng.gen_bool(0.5) => Formula::Impl(b.clone(), a.clone()),
                _ => Formula::neg(f.clone()),
            };
        }
        Mutation::SchemeRename => {
            let i = *axioms.choose(rng).expect("non-empty");
            if let Justification::Axiom { scheme, .. } = &mut out.steps[i].justification {
                let others: Vec<&str> =
                    AxiomScheme::all().iter().map(|s| s.name).filter(|n| n != scheme).collect();
                *scheme = others.choose(rng).expect("several schemes").to_string();
            }
        }
    }
    Some((kind, out))
}

fn steps_where(proof: &Proof, pred: impl Fn(&Justification) -> bool) -> Vec<usize> {
    (0..proof.steps.len()).filter(|&i| pred(&proof.steps[i].justification)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_deterministic() {
        let vars = variable_names(3);
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| pl_formula(&mut rng, &vars, 4, 8).to_string()).collect::<Vec<_>>()
        };
        assert_eq!(run(5), run(5));
        assert_ne!(run(5), run(6));
    }

    #[test]
    fn corpora_respect_their_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let vars = variable_names(3);
        for _ in 0..100 {
            let f = pl_formula(&mut rng, &vars, 4, 8);
            assert!(truncation_nodes(&f).unwrap() <= 8);
            assert!(f.profile_violation(&pl_profile()).is_none());
            assert!(ground_formula(&mut rng, 4).is_ground());
        }
        assert_eq!(variable_names(5), vec!["p", "q", "r", "s", "x4"]);
    }
}
