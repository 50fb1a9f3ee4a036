use super::exact::truth_degree_exact_with;
use super::regions::DEFAULT_REGION_CAP;
use crate::error::DegreeError;
use crate::rational::Rational01;
use crate::syntax::{Formula, Theory};

pub const DEFAULT_SUBSET_BOUND: usize = 12;

/// A smallest sub-theory preserving a required truth degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactnessReport {
    /// 0-based generator indices, ascending.
    pub subset: Vec<usize>,
    /// Exact degree of `φ` over the subset.
    pub subset_degree: Rational01,
    /// Exact degree of `φ` over the whole theory.
    pub full_degree: Rational01,
    /// Subsets evaluated before the answer, the answer included.
    pub evaluated: usize,
}

impl CompactnessReport {
    pub fn lines(&self, theory: &Theory) -> Vec<String> {
        let mut out = vec![
            format!("subset_size {}", self.subset.len()),
            format!("subset_degree {}", self.subset_degree),
            format!("full_degree {}", self.full_degree),
            format!("evaluated {}", self.evaluated),
        ];
        out.extend(self.subset.iter().map(|&i| format!("keep {} {}", i + 1, theory.generators[i])));
        out
    }
}

/// Next `k`-combination of `0..n` in lexicographic order.
fn advance(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The first subset `S0`, by size and then lexicographically, with
/// `r ≤ ∥φ∥_{S0}`. No smaller subset qualifies, so `S0` is
/// inclusion-minimal.
///
/// Requires `r ≤ ∥φ∥_S` and at most `bound` generators.
pub fn compactness_probe(
    phi: &Formula,
    theory: &Theory,
    r: &Rational01,
    bound: usize,
) -> Result<CompactnessReport, DegreeError> {
    let n = theory.generators.len();
    if n > bound {
        return Err(DegreeError::Precondition(format!("{n} generators exceed the bound {bound}")));
    }
    let degree = |idx: &[usize]| -> Result<Rational01, DegreeError> {
        Ok(truth_degree_exact_with(phi, &theory.subset(idx), DEFAULT_REGION_CAP)?.lo)
    };
    let all: Vec<usize> = (0..n).collect();
    let full_degree = degree(&all)?;
    if r > &full_degree {
        return Err(DegreeError::Precondition(format!(
            "required degree {r} exceeds the theory's degree {full_degree}"
        )));
    }
    let mut evaluated = 0;
    for k in 0..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            evaluated += 1;
            let d = degree(&combo)?;
            if &d >= r {
                return Ok(CompactnessReport {
                    subset: combo,
                    subset_degree: d,
                    full_degree,
                    evaluated,
                });
            }
            if !advance(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("the full theory qualifies")
}
