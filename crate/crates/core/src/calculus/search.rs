//! Bounded forward proof search by condensed detachment.
//!
//! Clauses are core formulas whose `?`-prefixed variables are
//! metavariables. Modus ponens between two clauses unifies the antecedent of
//! the major premise with the minor premise, so axiom instances are chosen
//! lazily by unification. A given-clause loop processes clauses smallest
//! first, dropping variants and clauses subsumed by an active one. A found
//! derivation is concretized into an ordinary proof, grounding leftover
//! metavariables to `0`.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

use super::builder::ProofBuilder;
use super::proof::Proof;
use super::scheme::{const_impl, division_residual, division_unfold, match_core, AxiomScheme, METAVARIABLES};
use crate::error::SearchError;
use crate::rational::Rational01;
use crate::syntax::{substitute, to_core, Bindings, Formula, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Given clauses processed before giving up.
    pub max_steps: usize,
    /// Clauses larger than this (core AST nodes) are discarded.
    pub max_formula_size: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_steps: 400,
            max_formula_size: 40,
        }
    }
}

fn is_meta(name: &str) -> bool {
    name.starts_with('?')
}

type Subst = HashMap<String, Formula>;

fn resolve<'a>(mut f: &'a Formula, s: &'a Subst) -> &'a Formula {
    while let Formula::Var(n) = f {
        match s.get(n) {
            Some(t) if is_meta(n) => f = t,
            _ => break,
        }
    }
    f
}

fn occurs(v: &str, f: &Formula, s: &Subst) -> bool {
    match resolve(f, s) {
        Formula::Var(n) => n == v,
        g => g.children().into_iter().any(|c| occurs(v, c, s)),
    }
}

fn unify(a: &Formula, b: &Formula, s: &mut Subst) -> bool {
    use Formula::*;
    let (a, b) = (resolve(a, s).clone(), resolve(b, s).clone());
    match (&a, &b) {
        (Var(x), Var(y)) if x == y => true,
        (Var(x), _) if is_meta(x) => {
            if occurs(x, &b, s) {
                return false;
            }
            s.insert(x.clone(), b);
            true
        }
        (_, Var(y)) if is_meta(y) => {
            if occurs(y, &a, s) {
                return false;
            }
            s.insert(y.clone(), a);
            true
        }
        (Impl(a1, a2), Impl(b1, b2)) | (Bullet(a1, a2), Bullet(b1, b2)) => {
            unify(a1, b1, s) && unify(a2, b2, s)
        }
        (Div(m, x), Div(n, y)) => m == n && unify(x, y, s),
        _ => a == b,
    }
}

fn apply(f: &Formula, s: &Subst) -> Formula {
    use Formula::*;
    match resolve(f, s) {
        Impl(a, b) => Formula::imp(apply(a, s), apply(b, s)),
        Bullet(a, b) => Formula::bullet(apply(a, s), apply(b, s)),
        Div(n, a) => Formula::div(*n, apply(a, s)),
        g => g.clone(),
    }
}

/// Renames metavariables by first occurrence: `?0`, `?1`, …
fn canonical_map(f: &Formula) -> Bindings {
    let mut map = Bindings::new();
    f.visit(&mut |g| {
        if let Formula::Var(n) = g {
            if is_meta(n) && !map.contains_key(n) {
                let fresh = Formula::Var(format!("?{}", map.len()));
                map.insert(n.clone(), fresh);
            }
        }
    });
    map
}

fn retag(f: &Formula, tag: char) -> Formula {
    let mut map = Bindings::new();
    f.visit(&mut |g| {
        if let Formula::Var(n) = g {
            if is_meta(n) {
                map.insert(n.clone(), Formula::Var(format!("?{tag}{}", &n[1..])));
            }
        }
    });
    substitute(f, &map)
}

fn ground(f: &Formula) -> Formula {
    let mut map = Bindings::new();
    f.visit(&mut |g| {
        if let Formula::Var(n) = g {
            if is_meta(n) {
                map.insert(n.clone(), Formula::Zero);
            }
        }
    });
    substitute(f, &map)
}

fn matches(general: &Formula, specific: &Formula) -> Option<Bindings> {
    let mut b = Bindings::new();
    match_core(general, specific, &is_meta, &mut b).then_some(b)
}

#[derive(Clone, Debug)]
enum Origin {
    Axiom(&'static str),
    Hyp(usize),
    Detach {
        minor: usize,
        major: usize,
        minor_inst: Formula,
        major_inst: Formula,
    },
}

#[derive(Clone, Debug)]
struct Clause {
    formula: Formula,
    origin: Origin,
}

/// Axiom clauses available for `theory` and `target`.
fn axiom_pool(target: &Formula, theory: &Theory) -> Vec<(&'static str, Formula)> {
    let metas: Bindings = METAVARIABLES
        .iter()
        .enumerate()
        .map(|(i, m)| (m.to_string(), Formula::Var(format!("?{i}"))))
        .collect();
    let mut divisions = BTreeSet::new();
    let mut constants: BTreeSet<Rational01> = [Rational01::zero(), Rational01::one()].into();
    // Schemes for connectives absent from the problem are left out.
    let mut used = target.required_profile();
    for f in theory.generators.iter().chain(std::iter::once(target)) {
        divisions.extend(f.division_indices());
        constants.extend(f.constants());
        used = used.union(&f.required_profile());
    }
    let (a, b) = (Formula::Var("?0".into()), Formula::Var("?1".into()));
    let mut out = Vec::new();
    for s in AxiomScheme::for_profile(&used).filter(|s| theory.profile.includes(&s.requires)) {
        match s.name {
            "DL1" => {
                for &k in &divisions {
                    out.push((s.name, division_unfold(k, &a, true)));
                    out.push((s.name, division_unfold(k, &a, false)));
                }
            }
            "DL2" => {
                for &k in &divisions {
                    out.push((s.name, division_residual(k, &a, &b)));
                }
            }
            "BK2" => {
                for r in &constants {
                    for t in &constants {
                        out.push((s.name, const_impl(r, t, true)));
                        out.push((s.name, const_impl(r, t, false)));
                    }
                }
            }
            "BK3" => {}
            _ => {
                for p in s.patterns() {
                    out.push((s.name, substitute(p, &metas)));
                }
            }
        }
    }
    out.into_iter().map(|(n, f)| (n, to_core(&f))).collect()
}

struct Search<'a> {
    clauses: Vec<Clause>,
    seen: HashSet<Formula>,
    target: Formula,
    theory: &'a Theory,
}

impl Search<'_> {
    /// Adds a clause unless it is a variant of a known one. Returns its id.
    fn add(&mut self, formula: Formula, origin: Origin) -> Option<usize> {
        if !self.seen.insert(formula.clone()) {
            return None;
        }
        self.clauses.push(Clause { formula, origin });
        Some(self.clauses.len() - 1)
    }

    fn detach(&self, major: usize, minor: usize) -> Option<(Formula, Origin)> {
        let maj = retag(&self.clauses[major].formula, 'M');
        let min = retag(&self.clauses[minor].formula, 'm');
        let Formula::Impl(ante, cons) = &maj else { return None };
        let mut s = Subst::new();
        if !unify(ante, &min, &mut s) {
            return None;
        }
        let raw = apply(cons, &s);
        let canon = canonical_map(&raw);
        Some((
            substitute(&raw, &canon),
            Origin::Detach {
                minor,
                major,
                minor_inst: substitute(&apply(&min, &s), &canon),
                major_inst: substitute(&apply(&maj, &s), &canon),
            },
        ))
    }

    /// Emits proof steps for the ground instance `g` of clause `id`.
    fn concretize(&self, id: usize, g: &Formula, b: &mut ProofBuilder) -> usize {
        if let Some(i) = b.find(g) {
            return i;
        }
        let clause = &self.clauses[id];
        match &clause.origin {
            Origin::Axiom(name) => b.axiom(name, g.clone()),
            Origin::Hyp(i) => b.hyp(*i),
            Origin::Detach {
                minor,
                major,
                minor_inst,
                major_inst,
            } => {
                let theta = matches(&clause.formula, g).expect("instance of derived clause");
                let mi = ground(&substitute(minor_inst, &theta));
                let ma = ground(&substitute(major_inst, &theta));
                let i = self.concretize(*minor, &mi, b);
                let j = self.concretize(*major, &ma, b);
                b.mp_to(i, j, g.clone())
            }
        }
    }

    fn finish(&self, id: usize) -> Proof {
        let mut b = ProofBuilder::new(self.theory.clone());
        self.concretize(id, &self.target, &mut b);
        b.finish(&self.target)
    }
}

/// Looks for a proof of `target` from the generators of `theory`.
///
/// A returned proof always passes the checker. Running out of budget says
/// nothing about provability.
pub fn search_proof(target: &Formula, theory: &Theory, budget: &SearchBudget) -> Result<Proof, SearchError> {
    let target_core = to_core(target);
    let mut search = Search {
        clauses: Vec::new(),
        seen: HashSet::new(),
        target: target_core.clone(),
        theory,
    };
    let mut passive = BinaryHeap::new();
    let initial = theory
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| (to_core(g), Origin::Hyp(i + 1)))
        .chain(axiom_pool(target, theory).into_iter().map(|(n, f)| (f, Origin::Axiom(n))));
    for (f, origin) in initial {
        let found = matches(&f, &target_core).is_some();
        if let Some(id) = search.add(f, origin) {
            if found {
                return Ok(retarget(search.finish(id), target));
            }
            passive.push(Reverse((search.clauses[id].formula.size(), id)));
        }
    }
    let mut active: Vec<usize> = Vec::new();
    let mut steps = 0;
    while let Some(Reverse((_, given))) = passive.pop() {
        if steps >= budget.max_steps {
            return Err(SearchError::BudgetExhausted { steps });
        }
        steps += 1;
        let gf = &search.clauses[given].formula;
        if active.iter().any(|&a| matches(&search.clauses[a].formula, gf).is_some()) {
            continue;
        }
        active.push(given);
        for k in 0..active.len() {
            let other = active[k];
            let pairs = if other == given {
                vec![(given, given)]
            } else {
                vec![(given, other), (other, given)]
            };
            for (major, minor) in pairs {
                let Some((f, origin)) = search.detach(major, minor) else { continue };
                if f.size() > budget.max_formula_size {
                    continue;
                }
                let found = matches(&f, &target_core).is_some();
                if let Some(id) = search.add(f, origin) {
                    if found {
                        return Ok(retarget(search.finish(id), target));
                    }
                    passive.push(Reverse((search.clauses[id].formula.size(), id)));
                }
            }
        }
    }
    Err(SearchError::BudgetExhausted { steps })
}

/// Writes the conclusion in the caller's surface syntax.
fn retarget(mut p: Proof, target: &Formula) -> Proof {
    if let Some(last) = p.steps.last_mut() {
        last.formula = target.clone();
    }
    p
}
