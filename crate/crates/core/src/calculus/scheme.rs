//! Axiom schemes for every profile and instance matching.
//!
//! Matching always happens on core forms. Equivalence schemes (`⟺`) carry
//! both implication directions under one name.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::rational::Rational01;
use crate::syntax::{expand_multiple, parse, to_core, Bindings, Formula, LogicProfile};

/// Numeric side data of a parametric scheme instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Param {
    /// Multiple or division index (`k`, `n`).
    Nat(u32),
    /// Truth-constant value (`r`, `s`).
    Rat(Rational01),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Nat(n) => write!(f, "{n}"),
            Param::Rat(r) => write!(f, "{r}"),
        }
    }
}

/// Metavariable bindings and parameters of a scheme or lemma instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instantiation {
    pub formulas: Bindings,
    pub params: BTreeMap<String, Param>,
}

impl Instantiation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, f: Formula) -> Self {
        self.formulas.insert(name.to_string(), f);
        self
    }

    pub fn with_param(mut self, name: &str, p: Param) -> Self {
        self.params.insert(name.to_string(), p);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty() && self.params.is_empty()
    }

    /// Whether every binding stated here agrees with `other`, up to core
    /// equality of formulas.
    pub fn agrees_with(&self, other: &Instantiation) -> bool {
        self.formulas
            .iter()
            .all(|(k, f)| other.formulas.get(k).is_some_and(|g| f.core_eq(g)))
            && self
                .params
                .iter()
                .all(|(k, p)| other.params.get(k) == Some(p))
    }

    /// Parses `{alpha=p -> q, k=3, r=1/2}`. Keys `k` and `n` take naturals,
    /// `r` and `s` take rationals; all other keys take formulas.
    pub fn parse(text: &str, profile: &LogicProfile) -> Result<Self, String> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| format!("bindings must be enclosed in braces: `{text}`"))?;
        let mut out = Instantiation::new();
        for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("binding `{item}` lacks `=`"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "k" | "n" => {
                    let n: u32 = value
                        .parse()
                        .map_err(|_| format!("`{key}` needs a natural number"))?;
                    out.params.insert(key.into(), Param::Nat(n));
                }
                "r" | "s" => {
                    let r: Rational01 = value.parse().map_err(|e| format!("`{key}`: {e}"))?;
                    out.params.insert(key.into(), Param::Rat(r));
                }
                _ => {
                    let f = parse(value, profile).map_err(|e| format!("`{key}`: {e}"))?;
                    out.formulas.insert(key.into(), f);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Instantiation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .formulas
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .chain(self.params.iter().map(|(k, v)| format!("{k}={v}")))
            .collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

#[derive(Clone, Debug)]
enum Shape {
    /// Implication patterns over the metavariables `alpha`, `beta`, `gamma`.
    Pattern(Vec<Formula>),
    /// `α ⟺ k(δ_k α)`.
    DivisionUnfold,
    /// `(α → kβ) → (δ_k α → β)`.
    DivisionResidual,
    /// `r̄ → s̄ ⟺ overline(r → s)`.
    ConstImpl,
    /// `f(r̄ …) ⟺ overline(f(r …))` for `•`, `δ_n` and `k`.
    ConstOp,
}

#[derive(Clone, Debug)]
pub struct AxiomScheme {
    pub name: &'static str,
    pub requires: LogicProfile,
    shape: Shape,
}

pub const METAVARIABLES: [&str; 3] = ["alpha", "beta", "gamma"];

fn pat(text: &str) -> Formula {
    parse(text, &LogicProfile::ALL).expect("built-in scheme parses")
}

fn both(lhs: &str, rhs: &str) -> Vec<Formula> {
    let (l, r) = (pat(lhs), pat(rhs));
    vec![Formula::imp(l.clone(), r.clone()), Formula::imp(r, l)]
}

fn build_all() -> Vec<AxiomScheme> {
    let base = LogicProfile::BASE;
    let product = LogicProfile::BASE.with_product();
    let division = LogicProfile::BASE.with_division();
    let fixpoint = LogicProfile::BASE.with_fixpoint();
    let constants = LogicProfile::BASE.with_constants();
    let one = |name, requires, text: &str| AxiomScheme {
        name,
        requires,
        shape: Shape::Pattern(vec![pat(text)]),
    };
    let two = |name, requires, lhs: &str, rhs: &str| AxiomScheme {
        name,
        requires,
        shape: Shape::Pattern(both(lhs, rhs)),
    };
    vec![
        one("L1", base, "alpha -> (beta -> alpha)"),
        one(
            "L2",
            base,
            "(alpha -> beta) -> ((beta -> gamma) -> (alpha -> gamma))",
        ),
        one("L3", base, "(!alpha -> !beta) -> (beta -> alpha)"),
        one(
            "L4",
            base,
            "((alpha -> beta) -> beta) -> ((beta -> alpha) -> alpha)",
        ),
        one("PL1", product, "(alpha * beta) -> (beta * alpha)"),
        two("PL2", product, "1 * alpha", "alpha"),
        one("PL3", product, "(alpha * beta) -> beta"),
        two("PL4", product, "(alpha * beta) * gamma", "alpha * (beta * gamma)"),
        two(
            "PL5",
            product,
            "alpha * (beta & !gamma)",
            "(alpha * beta) & !(alpha * gamma)",
        ),
        AxiomScheme {
            name: "DL1",
            requires: division,
            shape: Shape::DivisionUnfold,
        },
        AxiomScheme {
            name: "DL2",
            requires: division,
            shape: Shape::DivisionResidual,
        },
        two("FIX", fixpoint, "!K", "K"),
        two("BK1", constants, "[0]", "0"),
        AxiomScheme {
            name: "BK2",
            requires: constants,
            shape: Shape::ConstImpl,
        },
        AxiomScheme {
            name: "BK3",
            requires: constants,
            shape: Shape::ConstOp,
        },
    ]
}

impl AxiomScheme {
    /// Every scheme, in canonical order.
    pub fn all() -> &'static [AxiomScheme] {
        static ALL: OnceLock<Vec<AxiomScheme>> = OnceLock::new();
        ALL.get_or_init(build_all)
    }

    pub fn by_name(name: &str) -> Option<&'static AxiomScheme> {
        Self::all().iter().find(|s| s.name == name)
    }

    /// Schemes available under `profile`.
    pub fn for_profile(profile: &LogicProfile) -> impl Iterator<Item = &'static AxiomScheme> + '_ {
        Self::all().iter().filter(move |s| profile.includes(&s.requires))
    }

    /// Surface patterns of a non-parametric scheme (one per direction).
    pub fn patterns(&self) -> &[Formula] {
        match &self.shape {
            Shape::Pattern(p) => p,
            _ => &[],
        }
    }

    pub fn is_parametric(&self) -> bool {
        !matches!(self.shape, Shape::Pattern(_))
    }

    /// Instance of direction `direction` of a pattern scheme.
    pub fn instance(&self, direction: usize, bindings: &Bindings) -> Formula {
        crate::syntax::substitute(&self.patterns()[direction], bindings)
    }
}

/// `DL1`: `α → k(δ_k α)` when `forward`, else the converse.
pub fn division_unfold(k: u32, alpha: &Formula, forward: bool) -> Formula {
    let unfolded = expand_multiple(k, &Formula::div(k, alpha.clone()));
    if forward {
        Formula::imp(alpha.clone(), unfolded)
    } else {
        Formula::imp(unfolded, alpha.clone())
    }
}

/// `DL2`: `(α → kβ) → (δ_k α → β)`.
pub fn division_residual(k: u32, alpha: &Formula, beta: &Formula) -> Formula {
    Formula::imp(
        Formula::imp(alpha.clone(), expand_multiple(k, beta)),
        Formula::imp(Formula::div(k, alpha.clone()), beta.clone()),
    )
}

/// `BK2`: `(r̄ → s̄) → overline(r→s)` when `forward`, else the converse.
pub fn const_impl(r: &Rational01, s: &Rational01, forward: bool) -> Formula {
    let lhs = Formula::imp(Formula::Const(r.clone()), Formula::Const(s.clone()));
    let rhs = Formula::Const(r.implies(s));
    if forward {
        Formula::imp(lhs, rhs)
    } else {
        Formula::imp(rhs, lhs)
    }
}

/// Value of `•`, `δ_n` or `k` applied directly to truth constants.
pub fn const_op_value(f: &Formula) -> Option<Rational01> {
    match f {
        Formula::Bullet(a, b) => match (&**a, &**b) {
            (Formula::Const(r), Formula::Const(s)) => Some(r.product(s)),
            _ => None,
        },
        Formula::Div(n, a) => match &**a {
            Formula::Const(r) => Some(r.divide(*n)),
            _ => None,
        },
        Formula::FixK => Some(Rational01::half()),
        _ => None,
    }
}

/// `BK3`: `f(r̄ …) → overline(f(r …))` when `forward`, else the converse.
/// `None` if `op` is not such an application.
pub fn const_op(op: &Formula, forward: bool) -> Option<Formula> {
    let c = Formula::Const(const_op_value(op)?);
    Some(if forward {
        Formula::imp(op.clone(), c)
    } else {
        Formula::imp(c, op.clone())
    })
}

/// One-way matching of a core pattern against a core formula. Variables of
/// the pattern accepted by `is_meta` bind; everything else is rigid.
pub(crate) fn match_core(
    pattern: &Formula,
    f: &Formula,
    is_meta: &dyn Fn(&str) -> bool,
    bindings: &mut Bindings,
) -> bool {
    use Formula::*;
    match (pattern, f) {
        (Var(name), _) if is_meta(name) => match bindings.get(name) {
            Some(bound) => bound == f,
            None => {
                bindings.insert(name.clone(), f.clone());
                true
            }
        },
        (Impl(p1, p2), Impl(f1, f2)) | (Bullet(p1, p2), Bullet(f1, f2)) => {
            match_core(p1, f1, is_meta, bindings) && match_core(p2, f2, is_meta, bindings)
        }
        (Div(m, p), Div(n, g)) => m == n && match_core(p, g, is_meta, bindings),
        _ => pattern == f,
    }
}

fn is_scheme_meta(name: &str) -> bool {
    METAVARIABLES.contains(&name)
}

/// Matches a surface pattern over `alpha`/`beta`/`gamma` (or any `is_meta`
/// variables) against `f`.
pub(crate) fn match_pattern(
    pattern: &Formula,
    f: &Formula,
    is_meta: &dyn Fn(&str) -> bool,
) -> Option<Bindings> {
    let mut b = Bindings::new();
    match_core(&to_core(pattern), &to_core(f), is_meta, &mut b).then_some(b)
}

fn as_impl(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Impl(a, b) => Some((a, b)),
        _ => None,
    }
}

fn as_const(f: &Formula) -> Option<&Rational01> {
    match f {
        Formula::Const(r) => Some(r),
        _ => None,
    }
}

fn op_params(op: &Formula) -> Instantiation {
    match op {
        Formula::Bullet(a, b) => {
            let (r, s) = (as_const(a).unwrap(), as_const(b).unwrap());
            Instantiation::new()
                .with_param("r", Param::Rat(r.clone()))
                .with_param("s", Param::Rat(s.clone()))
        }
        Formula::Div(n, a) => Instantiation::new()
            .with_param("n", Param::Nat(*n))
            .with_param("r", Param::Rat(as_const(a).unwrap().clone())),
        _ => Instantiation::new(),
    }
}

/// Every way `f` instantiates `s`.
pub fn match_scheme_all(s: &AxiomScheme, f: &Formula) -> Vec<Instantiation> {
    let core = to_core(f);
    let mut out = Vec::new();
    match &s.shape {
        Shape::Pattern(patterns) => {
            for p in patterns {
                let mut b = Bindings::new();
                if match_core(&to_core(p), &core, &is_scheme_meta, &mut b) {
                    let inst = Instantiation {
                        formulas: b,
                        params: BTreeMap::new(),
                    };
                    if !out.contains(&inst) {
                        out.push(inst);
                    }
                }
            }
        }
        Shape::DivisionUnfold => {
            if let Some((a, b)) = as_impl(&core) {
                for (alpha, other) in [(a, b), (b, a)] {
                    for k in other.division_indices() {
                        let want = to_core(&expand_multiple(k, &Formula::div(k, alpha.clone())));
                        if &want == other {
                            let inst = Instantiation::new()
                                .with("alpha", alpha.clone())
                                .with_param("k", Param::Nat(k));
                            if !out.contains(&inst) {
                                out.push(inst);
                            }
                        }
                    }
                }
            }
        }
        Shape::DivisionResidual => {
            let parts = as_impl(&core).and_then(|(l, r)| Some((as_impl(l)?, as_impl(r)?)));
            if let Some(((alpha, kbeta), (dalpha, beta))) = parts {
                if let Formula::Div(k, inner) = dalpha {
                    if &**inner == alpha && to_core(&expand_multiple(*k, beta)) == *kbeta {
                        out.push(
                            Instantiation::new()
                                .with("alpha", alpha.clone())
                                .with("beta", beta.clone())
                                .with_param("k", Param::Nat(*k)),
                        );
                    }
                }
            }
        }
        Shape::ConstImpl => {
            if let Some((a, b)) = as_impl(&core) {
                for (pair, t) in [(a, b), (b, a)] {
                    let Some((r, s)) = as_impl(pair) else { continue };
                    if let (Some(r), Some(s), Some(t)) = (as_const(r), as_const(s), as_const(t)) {
                        if &r.implies(s) == t {
                            out.push(
                                Instantiation::new()
                                    .with_param("r", Param::Rat(r.clone()))
                                    .with_param("s", Param::Rat(s.clone())),
                            );
                        }
                    }
                }
            }
        }
        Shape::ConstOp => {
            if let Some((a, b)) = as_impl(&core) {
                for (op, t) in [(a, b), (b, a)] {
                    if let (Some(v), Some(t)) = (const_op_value(op), as_const(t)) {
                        if &v == t {
                            out.push(op_params(op));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Bindings under which `s` yields `f` (core-equal), if any.
pub fn match_scheme(s: &AxiomScheme, f: &Formula) -> Option<Instantiation> {
    match_scheme_all(s, f).into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s, &LogicProfile::ALL).unwrap()
    }

    fn scheme(name: &str) -> &'static AxiomScheme {
        AxiomScheme::by_name(name).unwrap()
    }

    #[test]
    fn l1_binds_and_rejects() {
        let m = match_scheme(scheme("L1"), &f("p -> (q -> p)")).unwrap();
        assert_eq!(m.formulas["alpha"], f("p"));
        assert_eq!(m.formulas["beta"], f("q"));
        assert!(match_scheme(scheme("L1"), &f("p -> (q -> q)")).is_none());
    }

    #[test]
    fn matching_is_on_core_forms() {
        // !p -> (q -> !p) written with an explicit implication into 0.
        assert!(match_scheme(scheme("L1"), &f("(p -> 0) -> (q -> !p)")).is_some());
        let l3 = match_scheme(scheme("L3"), &f("(!p -> !q) -> (q -> p)")).unwrap();
        assert_eq!(l3.formulas["alpha"], f("p"));
    }

    #[test]
    fn bk2_reads_rationals() {
        let m = match_scheme(scheme("BK2"), &f("([1/2] -> [3/4]) -> [1]")).unwrap();
        assert_eq!(m.params["r"], Param::Rat(Rational01::new(1, 2).unwrap()));
        assert_eq!(m.params["s"], Param::Rat(Rational01::new(3, 4).unwrap()));
        assert!(match_scheme(scheme("BK2"), &f("[1] -> ([1/2] -> [3/4])")).is_some());
        assert!(match_scheme(scheme("BK2"), &f("([3/4] -> [1/2]) -> [1]")).is_none());
    }

    #[test]
    fn bk3_and_fix() {
        assert!(match_scheme(scheme("BK3"), &f("([1/2] * [1/3]) -> [1/6]")).is_some());
        assert!(match_scheme(scheme("BK3"), &f("[1/4] -> d2([1/2])")).is_some());
        assert!(match_scheme(scheme("BK3"), &f("K -> [1/2]")).is_some());
        assert!(match_scheme(scheme("BK3"), &f("K -> [1/3]")).is_none());
        assert!(match_scheme(scheme("FIX"), &f("!K -> K")).is_some());
        assert!(match_scheme(scheme("BK1"), &f("0 -> [0]")).is_some());
    }

    #[test]
    fn division_schemes() {
        let p = f("p");
        for k in 1..=4 {
            for fwd in [true, false] {
                let m = match_scheme(scheme("DL1"), &division_unfold(k, &p, fwd)).unwrap();
                assert_eq!(m.params["k"], Param::Nat(k));
            }
            let m = match_scheme(scheme("DL2"), &division_residual(k, &p, &f("q"))).unwrap();
            assert_eq!(m.formulas["beta"], f("q"));
        }
        assert!(match_scheme(scheme("DL2"), &f("(p -> q) -> (d2(p) -> q)")).is_none());
        assert!(match_scheme(scheme("DL1"), &f("p -> d2(p)")).is_none());
    }

    #[test]
    fn product_schemes_both_directions() {
        assert!(match_scheme(scheme("PL2"), &f("(1 * p) -> p")).is_some());
        assert!(match_scheme(scheme("PL2"), &f("p -> (1 * p)")).is_some());
        assert!(match_scheme(scheme("PL5"), &f("((x * y) & !(x * z)) -> (x * (y & !z))")).is_some());
    }

    #[test]
    fn bindings_round_trip() {
        let text = "{alpha=p -> q, beta=q, k=3, r=1/2}";
        let inst = Instantiation::parse(text, &LogicProfile::ALL).unwrap();
        assert_eq!(inst.to_string(), text);
        assert!(Instantiation::parse("alpha=p", &LogicProfile::ALL).is_err());
        assert!(Instantiation::parse("{k=x}", &LogicProfile::ALL).is_err());
    }
}
