//! Compilation of piecewise-linear formulas into linear regions.
//!
//! In core form the only truncation is `x → y = min(1, 1 − x + y)`; `⊙`,
//! `⊕`, `∧`, `∨` reduce to it. Each truncation node splits a region into a
//! saturated part (value 1) and a linear part, unless the region lies
//! entirely on one side.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lp::{maximize, minimize, AffineExpr, LinearConstraint, LpOutcome};
use crate::algebra::{value, Valuation};
use crate::error::DegreeError;
use crate::syntax::{to_core, variables, Formula};

pub const DEFAULT_REGION_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchLabel {
    /// `1 − x + y ≥ 1`: the node evaluates to 1.
    Saturated,
    /// `1 − x + y ≤ 1`: the node evaluates to `1 − x + y`.
    Linear,
}

impl fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchLabel::Saturated => "S",
            BranchLabel::Linear => "L",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// One label per truncation node, in post-order.
    pub labels: Vec<BranchLabel>,
    /// Includes any context constraints the compilation started from.
    pub constraints: Vec<LinearConstraint>,
    pub objective: AffineExpr,
}

impl Region {
    pub fn contains(&self, point: &[BigRational]) -> bool {
        self.constraints.iter().all(|c| c.holds(point))
    }
}

/// The formula's value as an affine function on each of finitely many
/// polyhedral regions covering the cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSystem {
    pub variables: Vec<String>,
    pub regions: Vec<Region>,
}

/// Counts truncation nodes of the core form outside ground subformulas,
/// which fold to constants; errors on `•` over variables.
pub fn truncation_nodes(f: &Formula) -> Result<usize, DegreeError> {
    fn go(f: &Formula) -> Result<usize, DegreeError> {
        use Formula::*;
        if f.is_ground() {
            return Ok(0);
        }
        match f {
            Var(_) | Zero | FixK | Const(_) => Ok(0),
            Div(_, a) => go(a),
            Bullet(..) => Err(DegreeError::ProductNode),
            Impl(a, b) => match (&**a, &**b) {
                (Zero, _) => Ok(0),
                (_, Zero) => go(a),
                _ => Ok(go(a)? + go(b)? + 1),
            },
            _ => unreachable!("core form"),
        }
    }
    go(&to_core(f))
}

struct Partial {
    labels: Vec<BranchLabel>,
    constraints: Vec<LinearConstraint>,
    objective: AffineExpr,
}

struct Compiler<'a> {
    vars: &'a [String],
}

impl Compiler<'_> {
    fn dim(&self) -> usize {
        self.vars.len()
    }

    fn constant(&self, c: BigRational) -> AffineExpr {
        AffineExpr::constant(self.dim(), c)
    }

    /// Regions of `f` refining the (feasible) context `ctx`.
    fn go(&self, f: &Formula, ctx: &[LinearConstraint]) -> Vec<Partial> {
        use Formula::*;
        let leaf = |objective| {
            vec![Partial {
                labels: vec![],
                constraints: ctx.to_vec(),
                objective,
            }]
        };
        if f.is_ground() {
            let v = value(f, &Valuation::new()).expect("ground formula evaluates");
            return leaf(self.constant(v.into_inner()));
        }
        match f {
            Var(x) => {
                let i = self.vars.iter().position(|v| v == x).expect("variable in scope");
                leaf(AffineExpr::variable(self.dim(), i))
            }
            Zero => leaf(self.constant(BigRational::zero())),
            FixK => leaf(self.constant(BigRational::new(1.into(), 2.into()))),
            Const(r) => leaf(self.constant(r.value().clone())),
            Div(n, a) => {
                let k = BigRational::new(1.into(), (*n).into());
                self.go(a, ctx)
                    .into_iter()
                    .map(|p| Partial {
                        objective: p.objective.scale(&k),
                        ..p
                    })
                    .collect()
            }
            Impl(a, _) if **a == Zero => leaf(self.constant(BigRational::one())),
            Impl(a, b) if **b == Zero => {
                let one = self.constant(BigRational::one());
                self.go(a, ctx)
                    .into_iter()
                    .map(|p| Partial {
                        objective: &one - &p.objective,
                        ..p
                    })
                    .collect()
            }
            Impl(a, b) => {
                let one = self.constant(BigRational::one());
                let mut out = Vec::new();
                for pa in self.go(a, ctx) {
                    for pb in self.go(b, &pa.constraints) {
                        let e = &(&one - &pa.objective) + &pb.objective;
                        let mut labels = pa.labels.clone();
                        labels.extend(pb.labels.iter().copied());
                        let hi = maximize(&pb.constraints, &e).expect("region is feasible");
                        if hi <= BigRational::one() {
                            labels.push(BranchLabel::Linear);
                            out.push(Partial {
                                labels,
                                constraints: pb.constraints,
                                objective: e,
                            });
                            continue;
                        }
                        let lo = match minimize(&pb.constraints, &e) {
                            LpOutcome::Optimal { value, .. } => value,
                            LpOutcome::Infeasible => unreachable!("region is feasible"),
                        };
                        if lo >= BigRational::one() {
                            labels.push(BranchLabel::Saturated);
                            out.push(Partial {
                                labels,
                                constraints: pb.constraints,
                                objective: one.clone(),
                            });
                            continue;
                        }
                        let mut sat = pb.constraints.clone();
                        sat.push(LinearConstraint::ge(&e, &one));
                        let mut sat_labels = labels.clone();
                        sat_labels.push(BranchLabel::Saturated);
                        out.push(Partial {
                            labels: sat_labels,
                            constraints: sat,
                            objective: one.clone(),
                        });
                        let mut lin = pb.constraints;
                        lin.push(LinearConstraint::le(&e, &one));
                        labels.push(BranchLabel::Linear);
                        out.push(Partial {
                            labels,
                            constraints: lin,
                            objective: e,
                        });
                    }
                }
                out
            }
            Bullet(..) => unreachable!("rejected before compilation"),
            _ => unreachable!("core form"),
        }
    }
}

/// Compiles `f` over its own variables, in sorted order.
pub fn compile_pl(f: &Formula) -> Result<RegionSystem, DegreeError> {
    let vars: Vec<String> = variables(f).into_iter().collect();
    compile_pl_in(f, &vars, &[], DEFAULT_REGION_CAP)
}

/// Compiles `f` over `vars` (a superset of its variables) inside the
/// feasible context `ctx`. Fails on `•` or when the formula has more than
/// `cap` truncation nodes.
pub fn compile_pl_in(
    f: &Formula,
    vars: &[String],
    ctx: &[LinearConstraint],
    cap: usize,
) -> Result<RegionSystem, DegreeError> {
    let count = truncation_nodes(f)?;
    if count > cap {
        return Err(DegreeError::RegionCap { count, cap });
    }
    let compiler = Compiler { vars };
    let regions = compiler
        .go(&to_core(f), ctx)
        .into_iter()
        .map(|p| Region {
            labels: p.labels,
            constraints: p.constraints,
            objective: p.objective,
        })
        .collect();
    Ok(RegionSystem {
        variables: vars.to_vec(),
        regions,
    })
}
