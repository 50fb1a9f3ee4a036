use num_rational::BigRational;
use num_traits::One;

use super::lp::{feasible_point, minimize, AffineExpr, LinearConstraint, LpOutcome};
use super::regions::{compile_pl_in, DEFAULT_REGION_CAP};
use super::DegreeBounds;
use crate::algebra::Valuation;
use crate::error::DegreeError;
use crate::rational::Rational01;
use crate::syntax::{variables, Formula, Theory};

pub(crate) fn scope(phi: &Formula, theory: &Theory) -> Vec<String> {
    let mut vars = variables(phi);
    for g in &theory.generators {
        vars.extend(variables(g));
    }
    vars.into_iter().collect()
}

pub(crate) fn valuation(vars: &[String], point: &[BigRational]) -> Valuation {
    vars.iter()
        .zip(point)
        .map(|(x, v)| (x.clone(), Rational01::try_from_big(v.clone()).expect("point in the cube")))
        .collect()
}

struct Solver<'a> {
    phi: &'a Formula,
    generators: &'a [Formula],
    vars: Vec<String>,
    cap: usize,
    best: Option<(BigRational, Vec<BigRational>)>,
}

impl Solver<'_> {
    fn dfs(&mut self, i: usize, ctx: &[LinearConstraint]) -> Result<(), DegreeError> {
        if self.best.as_ref().is_some_and(|(v, _)| v == &BigRational::from_integer(0.into())) {
            return Ok(());
        }
        let one = AffineExpr::constant(self.vars.len(), BigRational::one());
        if i == self.generators.len() {
            let sys = compile_pl_in(self.phi, &self.vars, ctx, self.cap)?;
            for r in sys.regions {
                if let LpOutcome::Optimal { value, point } = minimize(&r.constraints, &r.objective) {
                    if self.best.as_ref().is_none_or(|(b, _)| &value < b) {
                        self.best = Some((value, point));
                    }
                }
            }
            return Ok(());
        }
        let sys = compile_pl_in(&self.generators[i], &self.vars, ctx, self.cap)?;
        for r in sys.regions {
            let mut cons = r.constraints;
            if r.objective != one {
                if r.objective.is_constant() {
                    continue;
                }
                cons.push(LinearConstraint::eq(&r.objective, &one));
                if feasible_point(&cons, self.vars.len()).is_none() {
                    continue;
                }
            }
            self.dfs(i + 1, &cons)?;
        }
        Ok(())
    }
}

/// Exact truth degree with the default region cap.
pub fn truth_degree_exact(phi: &Formula, theory: &Theory) -> Result<DegreeBounds, DegreeError> {
    truth_degree_exact_with(phi, theory, DEFAULT_REGION_CAP)
}

/// Minimum of `v(φ)` over `{v : v(τ) = 1 for every generator τ}`.
///
/// Regions of each generator are enumerated depth-first with its objective
/// forced to 1, pruning infeasible combinations; `φ` is then minimized by
/// exact LP on each surviving region. The feasible set is a finite union of
/// closed polyhedra, so the minimum is attained and a witness is returned.
/// With no feasible valuation the result is 1, flagged `vacuous`.
pub fn truth_degree_exact_with(
    phi: &Formula,
    theory: &Theory,
    cap: usize,
) -> Result<DegreeBounds, DegreeError> {
    let mut solver = Solver {
        phi,
        generators: &theory.generators,
        vars: scope(phi, theory),
        cap,
        best: None,
    };
    solver.dfs(0, &[])?;
    Ok(match solver.best {
        Some((value, point)) => {
            let v = Rational01::try_from_big(value).expect("formula values lie in [0,1]");
            DegreeBounds {
                lo: v.clone(),
                hi: v,
                exact: true,
                witness: Some(valuation(&solver.vars, &point)),
                vacuous: false,
                relaxation: None,
            }
        }
        None => DegreeBounds {
            lo: Rational01::one(),
            hi: Rational01::one(),
            exact: true,
            witness: None,
            vacuous: true,
            relaxation: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, LogicProfile};

    fn f(s: &str) -> Formula {
        parse(s, &LogicProfile::ALL).unwrap()
    }

    fn degree(phi: &str, theory: &[&str]) -> DegreeBounds {
        let t = Theory::new(LogicProfile::ALL, theory.iter().map(|s| f(s)).collect());
        truth_degree_exact(&f(phi), &t).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational01 {
        Rational01::new(n, d).unwrap()
    }

    #[test]
    fn spot_values() {
        assert_eq!(degree("p", &["p"]).lo, Rational01::one());
        let d = degree("p -> (p & p)", &[]);
        assert_eq!(d.lo, q(1, 2));
        assert_eq!(d.summary(), "exact lo 1/2 hi 1/2 witness p=1/2");
        assert_eq!(degree("[3/4]", &[]).lo, q(3, 4));
        assert_eq!(degree("q", &["p -> q", "p"]).lo, Rational01::one());
        assert_eq!(degree("q", &[]).lo, Rational01::zero());
        assert_eq!(degree("d3(p) + K", &["p"]).lo, q(5, 6));
    }

    #[test]
    fn vacuous_theories() {
        let d = degree("q", &["p", "!p"]);
        assert!(d.vacuous);
        assert_eq!(d.lo, Rational01::one());
        assert!(d.witness.is_none());
        assert!(degree("q", &["[1/2]"]).vacuous);
    }

    #[test]
    fn witness_satisfies_theory() {
        let t = ["p + q", "p -> !q"];
        let d = degree("p & q", &t);
        let w = d.witness.unwrap();
        for g in t {
            assert!(crate::algebra::value(&f(g), &w).unwrap().is_one());
        }
        assert_eq!(crate::algebra::value(&f("p & q"), &w).unwrap(), d.lo);
    }

    #[test]
    fn product_is_rejected() {
        let t = Theory::empty(LogicProfile::ALL);
        assert_eq!(truth_degree_exact(&f("p * p"), &t), Err(DegreeError::ProductNode));
    }
}
