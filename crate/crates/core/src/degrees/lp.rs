//! Exact linear programming over the unit cube.
//!
//! Two-phase primal simplex on a dense tableau of `BigRational`s with
//! Bland's rule, so it terminates on degenerate problems without
//! tolerances.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs · x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineExpr {
    pub coeffs: Vec<BigRational>,
    pub constant: BigRational,
}

impl AffineExpr {
    pub fn constant(dim: usize, c: BigRational) -> Self {
        AffineExpr {
            coeffs: vec![BigRational::zero(); dim],
            constant: c,
        }
    }

    pub fn variable(dim: usize, i: usize) -> Self {
        let mut e = Self::constant(dim, BigRational::zero());
        e.coeffs[i] = BigRational::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        AffineExpr {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            constant: &self.constant * k,
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .zip(point)
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }
}

impl Add for &AffineExpr {
    type Output = AffineExpr;
    fn add(self, rhs: &AffineExpr) -> AffineExpr {
        AffineExpr {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &rhs.constant,
        }
    }
}

impl Sub for &AffineExpr {
    type Output = AffineExpr;
    fn sub(self, rhs: &AffineExpr) -> AffineExpr {
        AffineExpr {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
            constant: &self.constant - &rhs.constant,
        }
    }
}

impl Neg for &AffineExpr {
    type Output = AffineExpr;
    fn neg(self) -> AffineExpr {
        self.scale(&-BigRational::one())
    }
}

impl Mul<&BigRational> for &AffineExpr {
    type Output = AffineExpr;
    fn mul(self, k: &BigRational) -> AffineExpr {
        self.scale(k)
    }
}

impl AffineExpr {
    /// Renders with variable names, e.g. `1 - p + q`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a AffineExpr, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut first = true;
                if !self.0.constant.is_zero() || self.0.is_constant() {
                    write!(f, "{}", self.0.constant)?;
                    first = false;
                }
                for (c, name) in self.0.coeffs.iter().zip(self.1) {
                    if c.is_zero() {
                        continue;
                    }
                    let sign = if c.is_negative() { "-" } else { "+" };
                    let mag = c.abs();
                    let coef = if mag.is_one() { String::new() } else { format!("{mag}*") };
                    if first {
                        let lead = if c.is_negative() { "-" } else { "" };
                        write!(f, "{lead}{coef}{name}")?;
                        first = false;
                    } else {
                        write!(f, " {sign} {coef}{name}")?;
                    }
                }
                Ok(())
            }
        }
        D(self, names)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// `expr (≤ | = | ≥) 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub expr: AffineExpr,
    pub relation: Relation,
}

impl LinearConstraint {
    pub fn le(lhs: &AffineExpr, rhs: &AffineExpr) -> Self {
        LinearConstraint {
            expr: lhs - rhs,
            relation: Relation::Le,
        }
    }

    pub fn ge(lhs: &AffineExpr, rhs: &AffineExpr) -> Self {
        LinearConstraint {
            expr: lhs - rhs,
            relation: Relation::Ge,
        }
    }

    pub fn eq(lhs: &AffineExpr, rhs: &AffineExpr) -> Self {
        LinearConstraint {
            expr: lhs - rhs,
            relation: Relation::Eq,
        }
    }

    pub fn holds(&self, point: &[BigRational]) -> bool {
        let v = self.expr.eval(point);
        match self.relation {
            Relation::Le => !v.is_positive(),
            Relation::Eq => v.is_zero(),
            Relation::Ge => !v.is_negative(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    /// Reduced costs; the last entry is minus the objective value.
    obj: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<BigRational>| {
            let k = row[c].clone();
            if !k.is_zero() {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &k * y;
                    }
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Bland's rule over columns `< allowed`.
    fn run(&mut self, allowed: usize) {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else { return };
            let mut best: Option<(BigRational, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((r0, _, b0)) => ratio < *r0 || (ratio == *r0 && self.basis[i] < *b0),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            let (_, r, _) = best.expect("box constraints keep the program bounded");
            self.pivot(r, c);
        }
    }
}

/// Minimizes `objective` over `{x ∈ [0,1]^n : constraints}`.
pub fn minimize(constraints: &[LinearConstraint], objective: &AffineExpr) -> LpOutcome {
    let n = objective.dim();
    // Columns: x (n), one slack per inequality (box rows included), then
    // one artificial per row.
    let mut specs: Vec<(Vec<BigRational>, Relation, BigRational)> = Vec::new();
    for i in 0..n {
        let mut a = vec![BigRational::zero(); n];
        a[i] = BigRational::one();
        specs.push((a, Relation::Le, BigRational::one()));
    }
    for c in constraints {
        debug_assert_eq!(c.expr.dim(), n);
        specs.push((c.expr.coeffs.clone(), c.relation, -c.expr.constant.clone()));
    }
    let m = specs.len();
    let slacks = specs.iter().filter(|s| s.1 != Relation::Eq).count();
    let real = n + slacks;
    let width = real + m + 1;
    let mut rows = Vec::with_capacity(m);
    let mut next_slack = n;
    for (i, (a, rel, b)) in specs.into_iter().enumerate() {
        let mut row = vec![BigRational::zero(); width];
        row[..n].clone_from_slice(&a);
        match rel {
            Relation::Le => {
                row[next_slack] = BigRational::one();
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -BigRational::one();
                next_slack += 1;
            }
            Relation::Eq => {}
        }
        row[width - 1] = b;
        if row[width - 1].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[real + i] = BigRational::one();
        rows.push(row);
    }
    // Phase 1: minimize the sum of artificials.
    let mut obj = vec![BigRational::zero(); width];
    for row in &rows {
        for j in 0..real {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (real..real + m).collect(),
    };
    t.run(real);
    if !t.obj[width - 1].is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= real {
            match (0..real).find(|&j| !t.rows[r][j].is_zero()) {
                Some(c) => t.pivot(r, c),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    // Phase 2.
    let mut obj = vec![BigRational::zero(); width];
    obj[..n].clone_from_slice(&objective.coeffs);
    for (i, &b) in t.basis.iter().enumerate() {
        let cb = obj[b].clone();
        if !cb.is_zero() {
            let row = t.rows[i].clone();
            for (x, y) in obj.iter_mut().zip(&row) {
                *x = &*x - &cb * y;
            }
        }
    }
    t.obj = obj;
    t.run(real);
    let mut point = vec![BigRational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            point[b] = t.rows[i][width - 1].clone();
        }
    }
    LpOutcome::Optimal {
        value: objective.eval(&point),
        point,
    }
}

/// A point of `{x ∈ [0,1]^n : constraints}`, if any.
pub fn feasible_point(constraints: &[LinearConstraint], dim: usize) -> Option<Vec<BigRational>> {
    match minimize(constraints, &AffineExpr::constant(dim, BigRational::zero())) {
        LpOutcome::Infeasible => None,
        LpOutcome::Optimal { point, .. } => Some(point),
    }
}

/// Maximum of `objective`, if feasible.
pub fn maximize(constraints: &[LinearConstraint], objective: &AffineExpr) -> Option<BigRational> {
    match minimize(constraints, &-objective) {
        LpOutcome::Infeasible => None,
        LpOutcome::Optimal { value, .. } => Some(-value),
    }
}
