use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;

use super::exact::truth_degree_exact_with;
use super::grid::{truth_degree_grid, GridOptions};
use super::regions::truncation_nodes;
use super::DegreeBounds;
use crate::algebra::{value, Valuation};
use crate::calculus::{search_proof, synthesize_ground_proof, Proof, ProofBuilder, SearchBudget};
use crate::error::DegreeError;
use crate::rational::Rational01;
use crate::syntax::{Formula, Theory};

/// How the stored proof of `r̄ → φ` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofSource {
    /// `0̄ → 0 → φ`, available for every formula.
    Trivial,
    /// Book-keeping synthesis for a ground formula.
    Ground,
    /// A search proof of `φ`, weakened to `1̄ → φ`.
    Search,
    /// A search proof of `r̄ → φ` for a constant `r` of the input.
    GradedSearch,
}

impl fmt::Display for ProofSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofSource::Trivial => "trivial",
            ProofSource::Ground => "ground",
            ProofSource::Search => "search",
            ProofSource::GradedSearch => "graded-search",
        })
    }
}

/// A lower bound `lo` on the proof degree, backed by a proof of `lō → φ`.
#[derive(Clone, Debug)]
pub struct ProofDegree {
    pub lo: Rational01,
    pub proof: Proof,
    pub source: ProofSource,
}

impl ProofDegree {
    /// As an interval with trivial upper end.
    pub fn bounds(&self) -> DegreeBounds {
        DegreeBounds {
            lo: self.lo.clone(),
            hi: Rational01::one(),
            exact: false,
            witness: None,
            vacuous: false,
            relaxation: None,
        }
    }
}

fn trivial_proof(phi: &Formula, theory: &Theory) -> Proof {
    let mut b = ProofBuilder::new(theory.clone());
    let bk1 = b.axiom_pattern("BK1", 0, &[]);
    let ef = b.ex_falso(phi.clone());
    b.syllogism(bk1, ef);
    b.finish(&Formula::imp(Formula::Const(Rational01::zero()), phi.clone()))
}

fn weakened(proof: Proof, phi: &Formula) -> Proof {
    let mut b = ProofBuilder::from_proof(proof);
    let i = b.find(phi).expect("proof derives its target");
    let one = Formula::Const(Rational01::one());
    b.weaken(i, one.clone());
    b.finish(&Formula::imp(one, phi.clone()))
}

/// The largest `r` for which a proof of `r̄ → φ` from the theory was found.
///
/// Candidates, best kept: the trivial `r = 0`; exact synthesis when `φ` is
/// ground; a search proof of `φ` itself (`r = 1`); search proofs of `r̄ → φ`
/// for the constants occurring in `φ` or the theory, largest first.
pub fn proof_degree_lower(
    phi: &Formula,
    theory: &Theory,
    budget: &SearchBudget,
) -> Result<ProofDegree, DegreeError> {
    if !theory.profile.constants {
        return Err(DegreeError::Precondition("truth constants are disabled".into()));
    }
    let mut best = ProofDegree {
        lo: Rational01::zero(),
        proof: trivial_proof(phi, theory),
        source: ProofSource::Trivial,
    };
    if phi.is_ground() {
        let v = value(phi, &Valuation::new())?;
        if let Ok(proof) = synthesize_ground_proof(phi, &v, &theory.profile) {
            if v > best.lo {
                best = ProofDegree {
                    lo: v,
                    proof,
                    source: ProofSource::Ground,
                };
            }
        }
        return Ok(best);
    }
    if let Ok(proof) = search_proof(phi, theory, budget) {
        return Ok(ProofDegree {
            lo: Rational01::one(),
            proof: weakened(proof, phi),
            source: ProofSource::Search,
        });
    }
    let mut constants: BTreeSet<Rational01> = phi.constants().into_iter().collect();
    for g in &theory.generators {
        constants.extend(g.constants());
    }
    for r in constants.into_iter().rev().filter(|r| r > &best.lo && !r.is_one()) {
        let target = Formula::imp(Formula::Const(r.clone()), phi.clone());
        if let Ok(proof) = search_proof(&target, theory, budget) {
            best = ProofDegree {
                lo: r,
                proof,
                source: ProofSource::GradedSearch,
            };
            break;
        }
    }
    Ok(best)
}

/// Exact degree on the piecewise-linear fragment, grid bounds otherwise.
pub fn truth_degree(
    phi: &Formula,
    theory: &Theory,
    region_cap: usize,
    grid: &GridOptions,
) -> Result<DegreeBounds, DegreeError> {
    let has_product = std::iter::once(phi)
        .chain(&theory.generators)
        .any(|f| truncation_nodes(f) == Err(DegreeError::ProductNode));
    if has_product {
        Ok(truth_degree_grid(phi, theory, grid))
    } else {
        truth_degree_exact_with(phi, theory, region_cap)
    }
}

/// Proof degree against truth degree for one formula and theory.
#[derive(Clone, Debug)]
pub struct GapReport {
    pub proof: ProofDegree,
    pub truth: DegreeBounds,
    /// `truth.hi − proof.lo`.
    pub gap: BigRational,
    /// `proof.lo ≤ truth.hi`.
    pub sound: bool,
    /// The truth degree is exact and equals `proof.lo`.
    pub equal: bool,
}

impl GapReport {
    pub fn lines(&self) -> Vec<String> {
        let truth = if self.truth.exact {
            self.truth.lo.to_string()
        } else {
            format!("[{}, {}]", self.truth.lo, self.truth.hi)
        };
        let yn = |b: bool| if b { "yes" } else { "no" };
        vec![
            format!("proof_lower {}", self.proof.lo),
            format!("proof_source {}", self.proof.source),
            format!("truth {truth}"),
            format!("engine {}", self.truth.engine()),
            format!("gap {}", self.gap),
            format!("sound {}", yn(self.sound)),
            format!("equal {}", yn(self.equal)),
        ]
    }
}

/// Runs both sides and compares them. A sound pair always has
/// `proof.lo ≤ truth.hi`.
pub fn pavelka_gap(
    phi: &Formula,
    theory: &Theory,
    budget: &SearchBudget,
    region_cap: usize,
    grid: &GridOptions,
) -> Result<GapReport, DegreeError> {
    let proof = proof_degree_lower(phi, theory, budget)?;
    let truth = truth_degree(phi, theory, region_cap, grid)?;
    let gap = truth.hi.value() - proof.lo.value();
    Ok(GapReport {
        sound: proof.lo <= truth.hi,
        equal: truth.exact && proof.lo == truth.lo,
        gap,
        proof,
        truth,
    })
}
