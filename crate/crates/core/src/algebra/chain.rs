//! Finite MV-chains and identity checking.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::eval::{value, Valuation};
use crate::error::EvalError;
use crate::rational::Rational01;
use crate::syntax::{variables, Formula};

/// The chain `{0, 1/n, …, 1}` with the standard operations; as an MV-chain
/// it has `n + 1` elements. Elements are represented by their numerators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteChain {
    denominator: u32,
}

impl FiniteChain {
    pub fn new(denominator: u32) -> Self {
        assert!(denominator >= 1, "chain denominator must be positive");
        FiniteChain { denominator }
    }

    /// `Łm`: the chain with `m ≥ 2` elements.
    pub fn with_elements(m: u32) -> Self {
        assert!(m >= 2, "a chain has at least two elements");
        Self::new(m - 1)
    }

    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    pub fn elements(&self) -> u32 {
        self.denominator + 1
    }

    pub fn value_of(&self, k: u32) -> Rational01 {
        Rational01::grid(k, self.denominator)
    }

    /// Grid index of `r`, if it lies on the chain.
    pub fn index_of(&self, r: &Rational01) -> Option<u32> {
        let n = self.denominator;
        let scaled = r.value() * num_rational::BigRational::from_integer(n.into());
        scaled
            .is_integer()
            .then(|| scaled.to_integer().try_into().ok())
            .flatten()
    }

    /// All assignments of chain elements to `names`, in lexicographic order.
    pub fn assignments(&self, names: &[String]) -> Vec<BTreeMap<String, u32>> {
        let mut out = vec![BTreeMap::new()];
        for name in names {
            let mut next = Vec::with_capacity(out.len() * self.elements() as usize);
            for partial in &out {
                for k in 0..=self.denominator {
                    let mut a = partial.clone();
                    a.insert(name.clone(), k);
                    next.push(a);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FiniteChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.elements())
    }
}

/// Evaluates `f` on a finite chain. Only base connectives are allowed, plus
/// truth constants and `K` when their value lies on the grid.
pub fn eval_chain(
    f: &Formula,
    chain: &FiniteChain,
    v: &BTreeMap<String, u32>,
) -> Result<u32, EvalError> {
    use Formula::*;
    let n = chain.denominator;
    let at = |g: &Formula| eval_chain(g, chain, v);
    Ok(match f {
        Var(name) => {
            let k = *v
                .get(name)
                .ok_or_else(|| EvalError::MissingVariable(name.clone()))?;
            if k > n {
                return Err(EvalError::OffGrid(format!("{k}/{n}")));
            }
            k
        }
        Zero => 0,
        One => n,
        FixK => chain
            .index_of(&Rational01::half())
            .ok_or_else(|| EvalError::OffGrid("1/2".into()))?,
        Const(r) => chain
            .index_of(r)
            .ok_or_else(|| EvalError::OffGrid(r.to_string()))?,
        Impl(a, b) => (n + at(b)?).saturating_sub(at(a)?).min(n),
        Neg(a) => n - at(a)?,
        Odot(a, b) => (at(a)? + at(b)?).saturating_sub(n),
        Oplus(a, b) => (at(a)? + at(b)?).min(n),
        Meet(a, b) => at(a)?.min(at(b)?),
        Join(a, b) => at(a)?.max(at(b)?),
        Bullet(..) => return Err(EvalError::ProfileViolation("*")),
        Div(..) => return Err(EvalError::ProfileViolation("dN")),
    })
}

/// Where an identity is tested.
#[derive(Clone, Debug)]
pub enum IdentityModel {
    /// Every assignment on the chain.
    Chain(FiniteChain),
    /// Seeded random rational assignments on `[0,1]`.
    Sampled {
        seed: u64,
        trials: usize,
        max_denominator: u32,
    },
}

impl fmt::Display for IdentityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityModel::Chain(c) => write!(f, "{c}"),
            IdentityModel::Sampled { seed, trials, .. } => {
                write!(f, "random(seed={seed},trials={trials})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: Valuation,
    pub lhs: Rational01,
    pub rhs: Rational01,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub cases: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// `PASS`, or one `FAIL assignment lhs rhs` line per counterexample.
    pub fn lines(&self) -> Vec<String> {
        if self.passed() {
            return vec!["PASS".into()];
        }
        self.counterexamples
            .iter()
            .map(|c| format!("FAIL {} {} {}", c.assignment, c.lhs, c.rhs))
            .collect()
    }
}

/// Compares `lhs` and `rhs` on the model: exhaustively on chains, by seeded
/// sampling on `[0,1]`. Lists every counterexample found.
pub fn check_identity(
    lhs: &Formula,
    rhs: &Formula,
    model: &IdentityModel,
) -> Result<IdentityReport, EvalError> {
    let names: Vec<String> = variables(lhs)
        .union(&variables(rhs))
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut report = IdentityReport {
        cases: 0,
        counterexamples: Vec::new(),
    };
    match model {
        IdentityModel::Chain(chain) => {
            for a in chain.assignments(&names) {
                let l = eval_chain(lhs, chain, &a)?;
                let r = eval_chain(rhs, chain, &a)?;
                report.cases += 1;
                if l != r {
                    report.counterexamples.push(Counterexample {
                        assignment: a
                            .iter()
                            .map(|(k, &x)| (k.clone(), chain.value_of(x)))
                            .collect(),
                        lhs: chain.value_of(l),
                        rhs: chain.value_of(r),
                    });
                }
            }
        }
        IdentityModel::Sampled {
            seed,
            trials,
            max_denominator,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*trials {
                let v = Valuation::sample(&mut rng, &names, *max_denominator);
                let l = value(lhs, &v)?;
                let r = value(rhs, &v)?;
                report.cases += 1;
                if l != r {
                    report.counterexamples.push(Counterexample {
                        assignment: v,
                        lhs: l,
                        rhs: r,
                    });
                }
            }
        }
    }
    Ok(report)
}
