//! Lemmas admitted by semantic validation rather than derivation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{value, Valuation};
use crate::error::LemmaError;
use crate::rational::Rational01;
use crate::syntax::{parse, variables, Formula, LogicProfile};

pub const IMP_NEG_ODOT: &str = "imp_neg_odot";
pub const NEG_ODOT_IMP: &str = "neg_odot_imp";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaStatus {
    /// Valid on every model tested; not derived inside the calculus.
    SemanticallyAdmitted,
    Derived,
}

impl fmt::Display for LemmaStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaStatus::SemanticallyAdmitted => "semantically admitted",
            LemmaStatus::Derived => "derived",
        })
    }
}

/// How hard a candidate lemma is tested before admission.
#[derive(Clone, Copy, Debug)]
pub struct ValidationBudget {
    /// Every assignment on `Ł2 … Łmax_chain`.
    pub max_chain: u32,
    pub samples: usize,
    pub max_denominator: u32,
    pub seed: u64,
}

impl Default for ValidationBudget {
    fn default() -> Self {
        ValidationBudget {
            max_chain: 6,
            samples: 10_000,
            max_denominator: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaRecord {
    pub name: String,
    /// Pattern over metavariables (its variables).
    pub pattern: Formula,
    pub status: LemmaStatus,
    pub cases_checked: usize,
}

#[derive(Clone, Debug, Default)]
pub struct LemmaRegistry {
    lemmas: BTreeMap<String, LemmaRecord>,
}

fn check_case(name: &str, pattern: &Formula, v: &Valuation) -> Result<(), LemmaError> {
    let x = value(pattern, v).map_err(|e| LemmaError::Counterexample {
        name: name.into(),
        assignment: v.to_string(),
        value: e.to_string(),
    })?;
    if x.is_one() {
        Ok(())
    } else {
        Err(LemmaError::Counterexample {
            name: name.into(),
            assignment: v.to_string(),
            value: x.to_string(),
        })
    }
}

/// Tests that `pattern` takes value 1 everywhere in the budget. Since the
/// semantics is truth-functional, valuations of the metavariables cover all
/// instantiations.
pub fn validate_lemma(
    name: &str,
    pattern: &Formula,
    budget: &ValidationBudget,
) -> Result<usize, LemmaError> {
    let names: Vec<String> = variables(pattern).into_iter().collect();
    let mut cases = 0;
    for m in 2..=budget.max_chain.max(1) {
        let n = m - 1;
        let total = (m as usize).pow(names.len() as u32);
        for idx in 0..total {
            let mut rest = idx;
            let mut v = Valuation::new();
            for name in names.iter().rev() {
                v.set(name.clone(), Rational01::grid((rest % m as usize) as u32, n));
                rest /= m as usize;
            }
            check_case(name, pattern, &v)?;
            cases += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.samples {
        let v = Valuation::sample(&mut rng, &names, budget.max_denominator);
        check_case(name, pattern, &v)?;
        cases += 1;
    }
    Ok(cases)
}

impl LemmaRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The two lemmas linking `→` with `¬(α ⊙ ¬β)`, validated once with
    /// the default budget.
    pub fn standard() -> &'static LemmaRegistry {
        static STANDARD: OnceLock<LemmaRegistry> = OnceLock::new();
        STANDARD.get_or_init(|| {
            let mut reg = LemmaRegistry::new();
            for (name, text) in standard_lemmas() {
                let pattern = parse(text, &LogicProfile::BASE).expect("built-in lemma parses");
                register_lemma(&mut reg, name, pattern, &ValidationBudget::default())
                    .expect("built-in lemma is valid");
            }
            reg
        })
    }

    pub fn get(&self, name: &str) -> Option<&LemmaRecord> {
        self.lemmas.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LemmaRecord> {
        self.lemmas.values()
    }
}

/// Names and patterns of the standard lemmas.
pub fn standard_lemmas() -> [(&'static str, &'static str); 2] {
    [
        (IMP_NEG_ODOT, "(alpha -> beta) -> !(alpha & !beta)"),
        (NEG_ODOT_IMP, "!(alpha & !beta) -> (alpha -> beta)"),
    ]
}

/// Admits `pattern` under `name` if validation finds no counterexample.
pub fn register_lemma<'r>(
    registry: &'r mut LemmaRegistry,
    name: &str,
    pattern: Formula,
    budget: &ValidationBudget,
) -> Result<&'r LemmaRecord, LemmaError> {
    if registry.lemmas.contains_key(name) {
        return Err(LemmaError::Duplicate(name.into()));
    }
    let cases_checked = validate_lemma(name, &pattern, budget)?;
    let record = LemmaRecord {
        name: name.into(),
        pattern,
        status: LemmaStatus::SemanticallyAdmitted,
        cases_checked,
    };
    Ok(registry.lemmas.entry(name.into()).or_insert(record))
}
