use std::collections::{BTreeMap, BTreeSet};

use super::Formula;
use super::Formula::*;

/// Simultaneous substitution map from variable names to formulas.
pub type Bindings = BTreeMap<String, Formula>;

/// Rewrites derived connectives into `{Var, Zero, Impl, Bullet, Div, FixK,
/// Const}`:
///
/// * `!a` is `a -> 0`, `1` is `0 -> 0`, `a & b` is `!(a -> !b)`;
/// * `a + b` is `!(!a & !b)`;
/// * `a /\ b` is `a & (a -> b)` and `a \/ b` is `(a -> b) -> b`.
pub fn to_core(f: &Formula) -> Formula {
    match f {
        Var(_) | Zero | FixK | Const(_) => f.clone(),
        One => Formula::imp(Zero, Zero),
        Impl(a, b) => Formula::imp(to_core(a), to_core(b)),
        Neg(a) => Formula::core_neg(to_core(a)),
        Odot(a, b) => core_odot(to_core(a), to_core(b)),
        Oplus(a, b) => {
            let na = Formula::core_neg(to_core(a));
            let nb = Formula::core_neg(to_core(b));
            Formula::core_neg(core_odot(na, nb))
        }
        Meet(a, b) => {
            let a = to_core(a);
            let b = to_core(b);
            let ab = Formula::imp(a.clone(), b);
            core_odot(a, ab)
        }
        Join(a, b) => {
            let b = to_core(b);
            Formula::imp(Formula::imp(to_core(a), b.clone()), b)
        }
        Bullet(a, b) => Formula::bullet(to_core(a), to_core(b)),
        Div(n, a) => Formula::div(*n, to_core(a)),
    }
}

fn core_odot(a: Formula, b: Formula) -> Formula {
    Formula::core_neg(Formula::imp(a, Formula::core_neg(b)))
}

/// The `n`-fold multiple `nα`: `0α = 0`, `1α = α`, `(k+1)α = ¬α → kα`.
pub fn expand_multiple(n: u32, f: &Formula) -> Formula {
    match n {
        0 => Zero,
        1 => f.clone(),
        _ => Formula::imp(Formula::neg(f.clone()), expand_multiple(n - 1, f)),
    }
}

/// Simultaneous substitution; unbound variables are left in place.
pub fn substitute(f: &Formula, bindings: &Bindings) -> Formula {
    match f {
        Var(name) => bindings.get(name).cloned().unwrap_or_else(|| f.clone()),
        Zero | One | FixK | Const(_) => f.clone(),
        Neg(a) => Formula::neg(substitute(a, bindings)),
        Div(n, a) => Formula::div(*n, substitute(a, bindings)),
        Impl(a, b) => Formula::imp(substitute(a, bindings), substitute(b, bindings)),
        Odot(a, b) => Formula::odot(substitute(a, bindings), substitute(b, bindings)),
        Oplus(a, b) => Formula::oplus(substitute(a, bindings), substitute(b, bindings)),
        Meet(a, b) => Formula::meet(substitute(a, bindings), substitute(b, bindings)),
        Join(a, b) => Formula::join(substitute(a, bindings), substitute(b, bindings)),
        Bullet(a, b) => Formula::bullet(substitute(a, bindings), substitute(b, bindings)),
    }
}

pub fn variables(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    f.visit(&mut |g| {
        if let Var(name) = g {
            out.insert(name.clone());
        }
    });
    out
}
