//! Truth degrees, proof degrees and the completeness/compactness harnesses.
//!
//! The truth degree of `φ` over a theory is the infimum of `v(φ)` over
//! valuations giving every generator value 1. On the piecewise-linear
//! fragment (no `•`) it is computed exactly by region enumeration and exact
//! LP; with `•` a certified grid search brackets it.

mod compact;
mod exact;
mod grid;
pub mod lp;
mod proof_degree;
mod regions;

use std::fmt::Write as _;

use num_rational::BigRational;

use crate::algebra::Valuation;
use crate::rational::Rational01;

pub use compact::{compactness_probe, CompactnessReport, DEFAULT_SUBSET_BOUND};
pub use exact::{truth_degree_exact, truth_degree_exact_with};
pub use grid::{lipschitz_bound, truth_degree_grid, GridOptions};
pub use proof_degree::{pavelka_gap, proof_degree_lower, truth_degree, GapReport, ProofDegree, ProofSource};
pub use regions::{
    compile_pl, compile_pl_in, truncation_nodes, BranchLabel, Region, RegionSystem,
    DEFAULT_REGION_CAP,
};

/// Parameters of the relaxed problem behind a grid lower bound: the bound
/// holds for valuations with every generator `≥ 1 − delta`, with at most
/// `eps` discretization slack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relaxation {
    pub eps: BigRational,
    pub delta: BigRational,
}

/// An interval `[lo, hi]` containing a degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBounds {
    pub lo: Rational01,
    pub hi: Rational01,
    /// `lo = hi` is the degree itself.
    pub exact: bool,
    /// A valuation satisfying the theory with value `hi`.
    pub witness: Option<Valuation>,
    /// No valuation satisfies the theory; the degree is the empty infimum 1.
    pub vacuous: bool,
    /// Present for grid bounds.
    pub relaxation: Option<Relaxation>,
}

impl DegreeBounds {
    pub fn engine(&self) -> &'static str {
        if self.relaxation.is_some() {
            "grid"
        } else if self.exact {
            "exact"
        } else {
            "bound"
        }
    }

    /// One line: `exact lo 1/2 hi 1/2 witness p=1/2`.
    pub fn summary(&self) -> String {
        let mut out = format!("{} lo {} hi {}", self.engine(), self.lo, self.hi);
        if let Some(w) = self.witness.as_ref().filter(|w| !w.is_empty()) {
            let _ = write!(out, " witness {w}");
        }
        if let Some(r) = &self.relaxation {
            let _ = write!(out, " eps {} delta {}", r.eps, r.delta);
        }
        if self.vacuous {
            out.push_str(" vacuous");
        }
        out
    }

    /// Machine-readable lines in a fixed order.
    pub fn lines(&self) -> Vec<String> {
        let witness = match &self.witness {
            Some(w) => {
                let pairs: Vec<String> = w.iter().map(|(x, v)| format!("{x}: {v}")).collect();
                format!("{{{}}}", pairs.join(", "))
            }
            None => "none".to_string(),
        };
        let mut out = vec![
            self.engine().to_string(),
            format!("lo {}", self.lo),
            format!("hi {}", self.hi),
            format!("witness {witness}"),
            format!("vacuous: {}", if self.vacuous { "yes" } else { "no" }),
        ];
        if let Some(r) = &self.relaxation {
            out.push(format!("eps {}", r.eps));
            out.push(format!("delta {}", r.delta));
        }
        out
    }
}
