//! Incremental proof construction with derived rules.
//!
//! Every rule below expands into axiom instances and modus ponens, so proofs
//! built without [`ProofBuilder::lemma`] rely on axioms alone.

use std::collections::HashMap;

use super::lemma::{IMP_NEG_ODOT, NEG_ODOT_IMP};
use super::proof::{Justification, Proof, ProofStep};
use super::scheme::{
    division_residual, division_unfold, match_scheme, AxiomScheme, Instantiation,
};
use crate::syntax::{to_core, Bindings, Formula, Theory};

/// Splits an implication, looking through `¬`, `1` and other derived forms.
pub(crate) fn split_impl(f: &Formula) -> Option<(Formula, Formula)> {
    match f {
        Formula::Impl(a, b) => Some(((**a).clone(), (**b).clone())),
        Formula::Neg(a) => Some(((**a).clone(), Formula::Zero)),
        Formula::One => Some((Formula::Zero, Formula::Zero)),
        _ => match to_core(f) {
            Formula::Impl(a, b) => Some((*a, *b)),
            _ => None,
        },
    }
}

fn bindings(pairs: &[(&str, Formula)]) -> Bindings {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Builds a proof step by step. Steps whose core form is already present
/// are not repeated; every method returns the 1-based index of its result.
#[derive(Clone, Debug)]
pub struct ProofBuilder {
    proof: Proof,
    seen: HashMap<Formula, usize>,
}

impl ProofBuilder {
    pub fn new(theory: Theory) -> Self {
        ProofBuilder {
            proof: Proof::new(theory),
            seen: HashMap::new(),
        }
    }

    /// Continues an existing proof.
    pub fn from_proof(proof: Proof) -> Self {
        let mut seen = HashMap::new();
        for (k, s) in proof.steps.iter().enumerate() {
            seen.entry(to_core(&s.formula)).or_insert(k + 1);
        }
        ProofBuilder { proof, seen }
    }

    pub fn len(&self) -> usize {
        self.proof.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proof.steps.is_empty()
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.proof.steps[i - 1].formula
    }

    /// Index of an existing step with the same core form.
    pub fn find(&self, f: &Formula) -> Option<usize> {
        self.seen.get(&to_core(f)).copied()
    }

    fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        let core = to_core(&formula);
        if let Some(&i) = self.seen.get(&core) {
            return i;
        }
        self.proof.steps.push(ProofStep {
            formula,
            justification,
            comment: None,
        });
        let i = self.proof.steps.len();
        self.seen.insert(core, i);
        i
    }

    /// Attaches a comment to step `i` unless it already has one.
    pub fn note(&mut self, i: usize, comment: &str) {
        let step = &mut self.proof.steps[i - 1];
        if step.comment.is_none() {
            step.comment = Some(comment.to_string());
        }
    }

    pub fn hyp(&mut self, i: usize) -> usize {
        let f = self
            .proof
            .theory
            .generator(i)
            .expect("generator index in range")
            .clone();
        self.push(f, Justification::Hypothesis(i))
    }

    /// An axiom step for `f`, with bindings recovered by matching.
    /// Panics if `f` is not an instance of `scheme`.
    pub fn axiom(&mut self, scheme: &str, f: Formula) -> usize {
        let s = AxiomScheme::by_name(scheme).expect("known scheme");
        let inst = match_scheme(s, &f)
            .unwrap_or_else(|| panic!("`{f}` is not an instance of {scheme}"));
        self.push(
            f,
            Justification::Axiom {
                scheme: scheme.into(),
                bindings: inst,
            },
        )
    }

    /// Direction `direction` of a pattern scheme under `pairs`.
    pub fn axiom_pattern(&mut self, scheme: &str, direction: usize, pairs: &[(&str, Formula)]) -> usize {
        let s = AxiomScheme::by_name(scheme).expect("known scheme");
        let b = bindings(pairs);
        let f = s.instance(direction, &b);
        self.push(
            f,
            Justification::Axiom {
                scheme: scheme.into(),
                bindings: Instantiation {
                    formulas: b,
                    params: Default::default(),
                },
            },
        )
    }

    /// A registered-lemma step. The caller supplies the instance formula.
    pub fn lemma(&mut self, name: &str, f: Formula, pairs: &[(&str, Formula)]) -> usize {
        self.push(
            f,
            Justification::Lemma {
                name: name.into(),
                bindings: Instantiation {
                    formulas: bindings(pairs),
                    params: Default::default(),
                },
            },
        )
    }

    /// Modus ponens: from `minor` and `major = minor → C`, derive `C`.
    pub fn mp(&mut self, minor: usize, major: usize) -> usize {
        let (ante, cons) = split_impl(self.formula(major)).expect("major premise is an implication");
        debug_assert!(ante.core_eq(self.formula(minor)), "minor premise mismatch");
        self.push(cons, Justification::ModusPonens(minor, major))
    }

    /// Modus ponens writing the conclusion as `conclusion` (core-equal).
    pub fn mp_to(&mut self, minor: usize, major: usize, conclusion: Formula) -> usize {
        debug_assert!(split_impl(self.formula(major)).is_some_and(|(_, c)| c.core_eq(&conclusion)));
        self.push(conclusion, Justification::ModusPonens(minor, major))
    }

    /// From `X → Y` and `Y → Z`, derive `X → Z`.
    pub fn syllogism(&mut self, xy: usize, yz: usize) -> usize {
        let (x, _) = split_impl(self.formula(xy)).expect("implication");
        let (_, z) = split_impl(self.formula(yz)).expect("implication");
        self.syllogism_to(xy, yz, Formula::imp(x, z))
    }

    /// [`Self::syllogism`] with the result written as `out`.
    pub fn syllogism_to(&mut self, xy: usize, yz: usize, out: Formula) -> usize {
        let (x, y) = split_impl(self.formula(xy)).expect("implication");
        let (y2, z) = split_impl(self.formula(yz)).expect("implication");
        debug_assert!(y.core_eq(&y2), "syllogism middle terms differ");
        let l2 = self.axiom_pattern("L2", 0, &[("alpha", x), ("beta", y), ("gamma", z)]);
        let step = self.mp(xy, l2);
        self.mp_to(yz, step, out)
    }

    /// From `a' → a`, derive `(a → b) → (a' → b)`.
    pub fn suffix(&mut self, i: usize, b: Formula) -> usize {
        let (a1, a) = split_impl(self.formula(i)).expect("implication");
        let l2 = self.axiom_pattern("L2", 0, &[("alpha", a1), ("beta", a), ("gamma", b)]);
        self.mp(i, l2)
    }

    /// From `a → b`, derive `¬b → ¬a`.
    pub fn contrapose(&mut self, i: usize) -> usize {
        let (a, b) = split_impl(self.formula(i)).expect("implication");
        let l2 = self.axiom(
            "L2",
            Formula::imp(
                Formula::imp(a.clone(), b.clone()),
                Formula::imp(Formula::neg(b), Formula::neg(a)),
            ),
        );
        self.mp(i, l2)
    }

    /// From `A → (X → C)` and `X`, derive `A → C`.
    pub fn discharge(&mut self, i: usize, x: usize) -> usize {
        let (a, xc) = split_impl(self.formula(i)).expect("implication");
        let (xf, c) = split_impl(&xc).expect("nested implication");
        let cx = Formula::imp(c.clone(), xf.clone());
        let l1 = self.axiom_pattern("L1", 0, &[("alpha", xf.clone()), ("beta", cx.clone())]);
        let cx_x = self.mp(x, l1);
        let l4 = self.axiom_pattern("L4", 0, &[("alpha", c.clone()), ("beta", xf)]);
        let xc_c = self.mp(cx_x, l4);
        self.syllogism_to(i, xc_c, Formula::imp(a, c))
    }

    /// From `b → b'`, derive `(a → b) → (a → b')`.
    pub fn prefix(&mut self, a: Formula, i: usize) -> usize {
        let (b, b1) = split_impl(self.formula(i)).expect("implication");
        let l2 = self.axiom_pattern("L2", 0, &[("alpha", a), ("beta", b), ("gamma", b1)]);
        self.discharge(l2, i)
    }

    /// From `a' → a` and `b → b'` (either may be absent, meaning identity),
    /// derive `(a → b) → (a' → b')`.
    pub fn impl_mono(&mut self, a: &Formula, b: &Formula, anti: Option<usize>, mono: Option<usize>) -> usize {
        match (anti, mono) {
            (None, None) => self.identity(Formula::imp(a.clone(), b.clone())),
            (None, Some(m)) => self.prefix(a.clone(), m),
            (Some(x), None) => self.suffix(x, b.clone()),
            (Some(x), Some(m)) => {
                let first = self.suffix(x, b.clone());
                let (a1, _) = split_impl(self.formula(x)).expect("implication");
                let second = self.prefix(a1, m);
                self.syllogism(first, second)
            }
        }
    }

    /// `⊢ a → a`.
    pub fn identity(&mut self, a: Formula) -> usize {
        let target = Formula::imp(a.clone(), a.clone());
        if let Some(i) = self.find(&target) {
            return i;
        }
        let t = Formula::imp(a.clone(), Formula::imp(a.clone(), a.clone()));
        let t_step = self.axiom_pattern("L1", 0, &[("alpha", a.clone()), ("beta", a.clone())]);
        let weak = self.axiom_pattern("L1", 0, &[("alpha", a), ("beta", t)]);
        self.discharge(weak, t_step)
    }

    /// `⊢ 0 → a`.
    pub fn ex_falso(&mut self, a: Formula) -> usize {
        let not_zero = Formula::neg(Formula::Zero);
        let id0 = self.identity(Formula::Zero);
        let l1 = self.axiom_pattern("L1", 0, &[("alpha", not_zero), ("beta", Formula::neg(a.clone()))]);
        let step = self.mp(id0, l1);
        let l3 = self.axiom_pattern("L3", 0, &[("alpha", a), ("beta", Formula::Zero)]);
        self.mp(step, l3)
    }

    /// `⊢ ¬¬a → a`.
    pub fn dne(&mut self, a: Formula) -> usize {
        let l4 = self.axiom(
            "L4",
            Formula::imp(
                Formula::neg(Formula::neg(a.clone())),
                Formula::imp(Formula::imp(Formula::Zero, a.clone()), a.clone()),
            ),
        );
        let ef = self.ex_falso(a);
        self.discharge(l4, ef)
    }

    /// `⊢ a → ¬¬a`.
    pub fn dni(&mut self, a: Formula) -> usize {
        let na = Formula::neg(a.clone());
        let triple = self.dne(na);
        let l3 = self.axiom_pattern("L3", 0, &[("alpha", Formula::neg(Formula::neg(a.clone()))), ("beta", a)]);
        self.mp(triple, l3)
    }

    /// From `φ`, derive `ante → φ`.
    pub fn weaken(&mut self, i: usize, ante: Formula) -> usize {
        let phi = self.formula(i).clone();
        let l1 = self.axiom_pattern("L1", 0, &[("alpha", phi), ("beta", ante)]);
        self.mp(i, l1)
    }

    /// `⊢ (a → b) → ¬(a ⊙ ¬b)` from the base axioms.
    pub fn derive_imp_neg_odot(&mut self, a: Formula, b: Formula) -> usize {
        let nnb = Formula::neg(Formula::neg(b.clone()));
        let dni_b = self.dni(b.clone());
        let first = self.prefix(a.clone(), dni_b);
        let second = self.dni(Formula::imp(a.clone(), nnb));
        let out = Formula::imp(
            Formula::imp(a.clone(), b.clone()),
            Formula::neg(Formula::odot(a, Formula::neg(b))),
        );
        self.syllogism_to(first, second, out)
    }

    /// `⊢ ¬(a ⊙ ¬b) → (a → b)` from the base axioms.
    pub fn derive_neg_odot_imp(&mut self, a: Formula, b: Formula) -> usize {
        let nnb = Formula::neg(Formula::neg(b.clone()));
        let first = self.dne(Formula::imp(a.clone(), nnb));
        let dne_b = self.dne(b.clone());
        let second = self.prefix(a.clone(), dne_b);
        let out = Formula::imp(
            Formula::neg(Formula::odot(a.clone(), Formula::neg(b.clone()))),
            Formula::imp(a, b),
        );
        self.syllogism_to(first, second, out)
    }

    /// `⊢ (α → β) → ((γ • α) → (γ • β))`. With `admitted`, the two links
    /// between `→` and `¬(· ⊙ ¬·)` are cited as registered lemmas; otherwise
    /// they are derived. Steps are tagged `stage 1` to `stage 9`.
    pub fn bullet_monotonicity(&mut self, alpha: &Formula, beta: &Formula, gamma: &Formula, admitted: bool) -> usize {
        let q = Formula::odot(alpha.clone(), Formula::neg(beta.clone()));
        let ga = Formula::bullet(gamma.clone(), alpha.clone());
        let gb = Formula::bullet(gamma.clone(), beta.clone());
        let p = Formula::odot(ga.clone(), Formula::neg(gb.clone()));

        let s1 = self.axiom_pattern("PL3", 0, &[("alpha", gamma.clone()), ("beta", q.clone())]);
        self.note(s1, "stage 1");
        let s2 = self.axiom_pattern(
            "PL5",
            1,
            &[("alpha", gamma.clone()), ("beta", alpha.clone()), ("gamma", beta.clone())],
        );
        self.note(s2, "stage 2");
        let s3 = self.syllogism(s2, s1);
        self.note(s3, "stage 3");
        let s4 = self.axiom(
            "L2",
            Formula::imp(
                Formula::imp(p.clone(), q.clone()),
                Formula::imp(Formula::neg(q.clone()), Formula::neg(p.clone())),
            ),
        );
        self.note(s4, "stage 4");
        let s5 = self.mp(s3, s4);
        self.note(s5, "stage 5");
        let ab = Formula::imp(alpha.clone(), beta.clone());
        let s6 = if admitted {
            let f = Formula::imp(ab.clone(), Formula::neg(q.clone()));
            self.lemma(IMP_NEG_ODOT, f, &[("alpha", alpha.clone()), ("beta", beta.clone())])
        } else {
            self.derive_imp_neg_odot(alpha.clone(), beta.clone())
        };
        self.note(s6, "stage 6");
        let s7 = self.syllogism(s6, s5);
        self.note(s7, "stage 7");
        let s8 = if admitted {
            let f = Formula::imp(Formula::neg(p), Formula::imp(ga.clone(), gb.clone()));
            self.lemma(NEG_ODOT_IMP, f, &[("alpha", ga), ("beta", gb)])
        } else {
            self.derive_neg_odot_imp(ga, gb)
        };
        self.note(s8, "stage 8");
        let s9 = self.syllogism(s7, s8);
        self.note(s9, "stage 9");
        s9
    }

    /// From `α → β`, derive `(γ • α) → (γ • β)`.
    pub fn bullet_right(&mut self, gamma: &Formula, i: usize) -> usize {
        let (a, b) = split_impl(self.formula(i)).expect("implication");
        let thm = self.bullet_monotonicity(&a, &b, gamma, false);
        self.mp(i, thm)
    }

    /// From `α → β`, derive `(α • γ) → (β • γ)`.
    pub fn bullet_left(&mut self, gamma: &Formula, i: usize) -> usize {
        let (a, b) = split_impl(self.formula(i)).expect("implication");
        let right = self.bullet_right(gamma, i);
        let c1 = self.axiom_pattern("PL1", 0, &[("alpha", a), ("beta", gamma.clone())]);
        let c2 = self.axiom_pattern("PL1", 0, &[("alpha", gamma.clone()), ("beta", b)]);
        let first = self.syllogism(c1, right);
        self.syllogism(first, c2)
    }

    /// From `α → β`, derive `δ_n α → δ_n β`.
    pub fn div_mono(&mut self, n: u32, i: usize) -> usize {
        let (a, b) = split_impl(self.formula(i)).expect("implication");
        let unfold = self.axiom("DL1", division_unfold(n, &b, true));
        let to_multiple = self.syllogism(i, unfold);
        let residual = self.axiom("DL2", division_residual(n, &a, &Formula::div(n, b)));
        self.mp(to_multiple, residual)
    }

    /// The proof so far.
    pub fn into_proof(self) -> Proof {
        self.proof
    }

    /// The proof, arranged so its last step is `target` written verbatim.
    /// Panics if no step is core-equal to `target`.
    pub fn finish(mut self, target: &Formula) -> Proof {
        let i = self.find(target).expect("target was derived");
        if i != self.len() {
            // Restate via `target → target` so the conclusion comes last.
            let id = self.identity(target.clone());
            self.proof.steps.push(ProofStep {
                formula: target.clone(),
                justification: Justification::ModusPonens(i, id),
                comment: None,
            });
        }
        let last = self.proof.steps.last_mut().expect("non-empty");
        last.formula = target.clone();
        self.proof
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::check_proof;
    use crate::syntax::{parse, LogicProfile};

    fn f(s: &str) -> Formula {
        parse(s, &LogicProfile::ALL).unwrap()
    }

    fn checked(b: ProofBuilder, target: &str) -> Proof {
        let p = b.finish(&f(target));
        let v = check_proof(&p);
        assert!(v.accepted(), "{:?}\n{}", v.issues, p.to_file());
        assert!(p.conclusion().unwrap().core_eq(&f(target)));
        assert!(p.lemmas_used().is_empty());
        p
    }

    fn base() -> ProofBuilder {
        ProofBuilder::new(Theory::empty(LogicProfile::ALL))
    }

    #[test]
    fn identity_and_negations() {
        let mut b = base();
        b.identity(f("p"));
        checked(b, "p -> p");
        let mut b = base();
        b.ex_falso(f("q"));
        checked(b, "0 -> q");
        let mut b = base();
        b.dne(f("p"));
        checked(b, "!!p -> p");
        let mut b = base();
        b.dni(f("p & q"));
        checked(b, "(p & q) -> !!(p & q)");
    }

    #[test]
    fn transport_rules() {
        let t = Theory::new(LogicProfile::ALL, vec![f("p -> q")]);
        let mut b = ProofBuilder::new(t.clone());
        let h = b.hyp(1);
        b.prefix(f("r"), h);
        checked(b, "(r -> p) -> (r -> q)");
        let mut b = ProofBuilder::new(t.clone());
        let h = b.hyp(1);
        b.contrapose(h);
        checked(b, "!q -> !p");
        let mut b = ProofBuilder::new(t.clone());
        let h = b.hyp(1);
        b.div_mono(3, h);
        checked(b, "d3(p) -> d3(q)");
        let mut b = ProofBuilder::new(t.clone());
        let h = b.hyp(1);
        b.bullet_left(&f("r"), h);
        checked(b, "(p * r) -> (q * r)");
        let mut b = ProofBuilder::new(t);
        let h = b.hyp(1);
        b.weaken(h, f("[1]"));
        checked(b, "[1] -> (p -> q)");
    }

    #[test]
    fn derived_lemmas() {
        let mut b = base();
        b.derive_imp_neg_odot(f("p"), f("q"));
        checked(b, "(p -> q) -> !(p & !q)");
        let mut b = base();
        b.derive_neg_odot_imp(f("p"), f("q"));
        checked(b, "!(p & !q) -> (p -> q)");
    }

    #[test]
    fn finish_restates_early_conclusion() {
        let mut b = base();
        b.identity(f("p"));
        b.ex_falso(f("p"));
        let p = b.finish(&f("p -> p"));
        assert!(check_proof(&p).accepted());
        assert_eq!(p.conclusion().unwrap(), &f("p -> p"));
    }
}
