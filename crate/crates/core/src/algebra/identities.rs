//! Equational suites for the varieties: MV-algebras, their product and
//! divisible expansions, and the negation fixpoint.

use super::chain::{check_identity, FiniteChain, IdentityModel, IdentityReport};
use super::eval::{value, Valuation};
use crate::error::EvalError;
use crate::rational::Rational01;
use crate::syntax::{expand_multiple, parse, Formula, LogicProfile};

/// One equation `lhs = rhs`, tagged with the axiom group it belongs to.
#[derive(Clone, Debug)]
pub struct NamedIdentity {
    pub name: String,
    pub lhs: Formula,
    pub rhs: Formula,
}

fn identity(name: impl Into<String>, lhs: &str, rhs: &str) -> NamedIdentity {
    NamedIdentity {
        name: name.into(),
        lhs: parse(lhs, &LogicProfile::ALL).expect("built-in identity parses"),
        rhs: parse(rhs, &LogicProfile::ALL).expect("built-in identity parses"),
    }
}

/// The eight MV-algebra axioms over `⟨∧, ∨, ⊙, →, 0, 1⟩`. Groups 1 and 2
/// (monoid, bounded lattice) expand into several equations each.
pub fn mv_identities() -> Vec<NamedIdentity> {
    vec![
        identity("mv1.comm", "x & y", "y & x"),
        identity("mv1.assoc", "(x & y) & z", "x & (y & z)"),
        identity("mv1.unit", "x & 1", "x"),
        identity("mv2.meet-comm", "x /\\ y", "y /\\ x"),
        identity("mv2.join-comm", "x \\/ y", "y \\/ x"),
        identity("mv2.meet-assoc", "(x /\\ y) /\\ z", "x /\\ (y /\\ z)"),
        identity("mv2.join-assoc", "(x \\/ y) \\/ z", "x \\/ (y \\/ z)"),
        identity("mv2.absorb-meet", "x /\\ (x \\/ y)", "x"),
        identity("mv2.absorb-join", "x \\/ (x /\\ y)", "x"),
        identity("mv2.top", "x /\\ 1", "x"),
        identity("mv2.bottom", "x \\/ 0", "x"),
        identity("mv3", "(x & y) -> z", "x -> (y -> z)"),
        identity("mv4", "((x -> y) & x) /\\ y", "(x -> y) & x"),
        identity("mv5", "(x /\\ y) -> y", "1"),
        identity("mv6", "x & (x -> y)", "x /\\ y"),
        identity("mv7", "(x -> y) \\/ (y -> x)", "1"),
        identity("mv8", "(x -> 0) -> 0", "x"),
    ]
}

/// Product MV-algebra: `•` is a commutative monoid with unit 1 that
/// distributes over `y ⊙ ¬z` in the stated form.
pub fn pmv_identities() -> Vec<NamedIdentity> {
    vec![
        identity("pmv.comm", "x * y", "y * x"),
        identity("pmv.assoc", "(x * y) * z", "x * (y * z)"),
        identity("pmv.unit", "x * 1", "x"),
        identity("pmv.dist", "x * (y & !z)", "(x * y) & !(x * z)"),
    ]
}

/// Divisibility equations for `δ_n`: `n·δ_n x = x` and
/// `δ_n x ⊙ (n−1)·δ_n x = 0`.
pub fn dmv_identities(n: u32) -> Vec<NamedIdentity> {
    let x = Formula::var("x");
    let d = Formula::div(n, x.clone());
    vec![
        NamedIdentity {
            name: format!("dmv.mult[{n}]"),
            lhs: expand_multiple(n, &d),
            rhs: x,
        },
        NamedIdentity {
            name: format!("dmv.disj[{n}]"),
            lhs: Formula::odot(d.clone(), expand_multiple(n - 1, &d)),
            rhs: Formula::Zero,
        },
    ]
}

/// Outcome of one identity on one model.
#[derive(Clone, Debug)]
pub struct SuiteLine {
    pub identity: String,
    pub model: String,
    pub report: IdentityReport,
}

impl SuiteLine {
    /// `PASS name model` or `FAIL name model assignment lhs rhs` lines.
    pub fn lines(&self) -> Vec<String> {
        self.report
            .lines()
            .into_iter()
            .map(|l| match l.strip_prefix("FAIL ") {
                Some(rest) => format!("FAIL {} {} {rest}", self.identity, self.model),
                None => format!("{l} {} {}", self.identity, self.model),
            })
            .collect()
    }
}

/// Runs `identities` on each model.
pub fn run_suite(
    identities: &[NamedIdentity],
    models: &[IdentityModel],
) -> Result<Vec<SuiteLine>, EvalError> {
    let mut out = Vec::new();
    for id in identities {
        for m in models {
            out.push(SuiteLine {
                identity: id.name.clone(),
                model: m.to_string(),
                report: check_identity(&id.lhs, &id.rhs, m)?,
            });
        }
    }
    Ok(out)
}

/// The models used for the MV suite: chains `Ł2 … Ł6` plus a seeded sample.
pub fn mv_models(seed: u64, trials: usize) -> Vec<IdentityModel> {
    let mut models: Vec<IdentityModel> = (2..=6)
        .map(|m| IdentityModel::Chain(FiniteChain::with_elements(m)))
        .collect();
    models.push(IdentityModel::Sampled {
        seed,
        trials,
        max_denominator: 1000,
    });
    models
}

/// Checks `¬K = K = 1/2` in the standard fixpoint algebra.
pub fn fixpoint_line() -> SuiteLine {
    let empty = Valuation::new();
    let k = value(&Formula::FixK, &empty).expect("closed formula");
    let neg_k = value(&Formula::neg(Formula::FixK), &empty).expect("closed formula");
    let mut counterexamples = Vec::new();
    if k != neg_k || k != Rational01::half() {
        counterexamples.push(super::chain::Counterexample {
            assignment: empty,
            lhs: neg_k,
            rhs: k,
        });
    }
    SuiteLine {
        identity: "fix.negk".into(),
        model: "[0,1]".into(),
        report: IdentityReport {
            cases: 1,
            counterexamples,
        },
    }
}

/// The full equational suite for `profile`: MV always, PMV/DMV/fixpoint when
/// enabled. Expansions are only tested on the sampled model since they do
/// not close on finite chains.
pub fn profile_suite(
    profile: &LogicProfile,
    seed: u64,
    trials: usize,
    division_max: u32,
) -> Result<Vec<SuiteLine>, EvalError> {
    let mut lines = run_suite(&mv_identities(), &mv_models(seed, trials))?;
    let sampled = |salt: u64, trials: usize| IdentityModel::Sampled {
        seed: seed.wrapping_add(salt),
        trials,
        max_denominator: 1000,
    };
    if profile.product {
        lines.extend(run_suite(&pmv_identities(), &[sampled(1, trials)])?);
    }
    if profile.division {
        for n in 1..=division_max {
            let per_n = (trials / 10).max(1);
            lines.extend(run_suite(&dmv_identities(n), &[sampled(100 + n as u64, per_n)])?);
        }
    }
    if profile.fixpoint {
        lines.push(fixpoint_line());
    }
    Ok(lines)
}
