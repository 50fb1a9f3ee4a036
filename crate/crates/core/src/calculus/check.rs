//! The proof checker.

use std::fmt;

use super::lemma::LemmaRegistry;
use super::proof::{Justification, Proof};
use super::scheme::{match_pattern, match_scheme_all, AxiomScheme, Instantiation};
use crate::syntax::{to_core, Formula};

/// Why a step fails to validate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepIssue {
    ProfileViolation(&'static str),
    UnknownScheme(String),
    SchemeNotInProfile(String),
    NoMatch(String),
    BindingMismatch(String),
    DanglingReference(usize),
    HypothesisMismatch(usize),
    /// Step `j` is not `step i → this`.
    MpShape(usize, usize),
    UnknownLemma(String),
}

impl fmt::Display for StepIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepIssue::ProfileViolation(c) => write!(f, "connective `{c}` not in profile"),
            StepIssue::UnknownScheme(s) => write!(f, "unknown axiom scheme `{s}`"),
            StepIssue::SchemeNotInProfile(s) => write!(f, "scheme `{s}` not in profile"),
            StepIssue::NoMatch(s) => write!(f, "formula is not an instance of `{s}`"),
            StepIssue::BindingMismatch(s) => write!(f, "stated bindings disagree with `{s}`"),
            StepIssue::DanglingReference(i) => write!(f, "reference to unavailable step or generator {i}"),
            StepIssue::HypothesisMismatch(i) => write!(f, "formula differs from generator {i}"),
            StepIssue::MpShape(i, j) => write!(f, "step {j} is not step {i} -> this formula"),
            StepIssue::UnknownLemma(s) => write!(f, "unknown lemma `{s}`"),
        }
    }
}

/// Outcome of checking a proof. Steps count from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub steps: usize,
    pub issues: Vec<(usize, StepIssue)>,
    /// Semantically admitted lemmas the proof relies on.
    pub lemmas_used: Vec<String>,
}

impl Verdict {
    /// Accepted iff the proof is non-empty and no step failed.
    pub fn accepted(&self) -> bool {
        self.steps > 0 && self.issues.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "{} steps {}",
            if self.accepted() { "accepted" } else { "rejected" },
            self.steps
        )];
        if !self.lemmas_used.is_empty() {
            out.push(format!("admitted-lemmas {}", self.lemmas_used.join(",")));
        }
        for (i, issue) in &self.issues {
            out.push(format!("step {i}: {issue}"));
        }
        if self.steps == 0 {
            out.push("empty proof".into());
        }
        out
    }
}

fn check_instance(
    label: &str,
    found: Vec<Instantiation>,
    stated: &Instantiation,
) -> Option<StepIssue> {
    if found.is_empty() {
        Some(StepIssue::NoMatch(label.into()))
    } else if !found.iter().any(|m| stated.agrees_with(m)) {
        Some(StepIssue::BindingMismatch(label.into()))
    } else {
        None
    }
}

/// Checks `proof` against the standard lemma registry.
pub fn check_proof(proof: &Proof) -> Verdict {
    check_proof_with(proof, LemmaRegistry::standard())
}

pub fn check_proof_with(proof: &Proof, lemmas: &LemmaRegistry) -> Verdict {
    let profile = proof.theory.profile;
    let cores: Vec<Formula> = proof.steps.iter().map(|s| to_core(&s.formula)).collect();
    let mut issues = Vec::new();
    for (k, step) in proof.steps.iter().enumerate() {
        let index = k + 1;
        if let Some(c) = step.formula.profile_violation(&profile) {
            issues.push((index, StepIssue::ProfileViolation(c)));
            continue;
        }
        let issue = match &step.justification {
            Justification::Axiom { scheme, bindings } => match AxiomScheme::by_name(scheme) {
                None => Some(StepIssue::UnknownScheme(scheme.clone())),
                Some(s) if !profile.includes(&s.requires) => {
                    Some(StepIssue::SchemeNotInProfile(scheme.clone()))
                }
                Some(s) => check_instance(scheme, match_scheme_all(s, &step.formula), bindings),
            },
            Justification::Hypothesis(i) => match proof.theory.generator(*i) {
                None => Some(StepIssue::DanglingReference(*i)),
                Some(g) if to_core(g) != cores[k] => Some(StepIssue::HypothesisMismatch(*i)),
                Some(_) => None,
            },
            Justification::ModusPonens(i, j) => {
                if let Some(&bad) = [i, j].into_iter().find(|&&r| r == 0 || r >= index) {
                    Some(StepIssue::DanglingReference(bad))
                } else {
                    let expected = Formula::imp(cores[i - 1].clone(), cores[k].clone());
                    (cores[j - 1] != expected).then_some(StepIssue::MpShape(*i, *j))
                }
            }
            Justification::Lemma { name, bindings } => match lemmas.get(name) {
                None => Some(StepIssue::UnknownLemma(name.clone())),
                Some(rec) => {
                    let found = match_pattern(&rec.pattern, &step.formula, &|_| true)
                        .map(|formulas| Instantiation {
                            formulas,
                            params: Default::default(),
                        })
                        .into_iter()
                        .collect();
                    check_instance(name, found, bindings)
                }
            },
        };
        if let Some(issue) = issue {
            issues.push((index, issue));
        }
    }
    Verdict {
        steps: proof.steps.len(),
        issues,
        lemmas_used: proof.lemmas_used(),
    }
}
