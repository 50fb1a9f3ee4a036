//! The formula language: AST, profiles, theories, concrete syntax and the
//! structural transformations used by the rest of the crate.

mod parser;
mod printer;
mod theory;
mod transform;

use std::fmt;

use crate::rational::Rational01;

pub use parser::parse;
pub use theory::Theory;
pub use transform::{expand_multiple, substitute, to_core, variables, Bindings};

/// Which expansion of the base logic is active.
///
/// The base connectives `→` and `0` (and everything definable from them)
/// are always available.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogicProfile {
    pub product: bool,
    pub division: bool,
    pub fixpoint: bool,
    pub constants: bool,
}

impl LogicProfile {
    pub const BASE: LogicProfile = LogicProfile {
        product: false,
        division: false,
        fixpoint: false,
        constants: false,
    };

    pub const ALL: LogicProfile = LogicProfile {
        product: true,
        division: true,
        fixpoint: true,
        constants: true,
    };

    pub fn with_constants(mut self) -> Self {
        self.constants = true;
        self
    }

    pub fn with_product(mut self) -> Self {
        self.product = true;
        self
    }

    pub fn with_division(mut self) -> Self {
        self.division = true;
        self
    }

    pub fn with_fixpoint(mut self) -> Self {
        self.fixpoint = true;
        self
    }

    /// Parses `base[,product][,division][,fixpoint][,constants]`.
    /// `base` may be omitted; `all` enables everything.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut profile = LogicProfile::BASE;
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "base" => {}
                "product" => profile.product = true,
                "division" => profile.division = true,
                "fixpoint" => profile.fixpoint = true,
                "constants" => profile.constants = true,
                "all" => profile = LogicProfile::ALL,
                other => return Err(format!("unknown profile component `{other}`")),
            }
        }
        Ok(profile)
    }

    /// Whether `other` enables nothing beyond `self`.
    pub fn includes(&self, other: &LogicProfile) -> bool {
        (self.product || !other.product)
            && (self.division || !other.division)
            && (self.fixpoint || !other.fixpoint)
            && (self.constants || !other.constants)
    }

    pub fn union(&self, other: &LogicProfile) -> LogicProfile {
        LogicProfile {
            product: self.product || other.product,
            division: self.division || other.division,
            fixpoint: self.fixpoint || other.fixpoint,
            constants: self.constants || other.constants,
        }
    }
}

impl fmt::Display for LogicProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("base")?;
        for (on, name) in [
            (self.product, "product"),
            (self.division, "division"),
            (self.fixpoint, "fixpoint"),
            (self.constants, "constants"),
        ] {
            if on {
                write!(f, ",{name}")?;
            }
        }
        Ok(())
    }
}

/// A propositional formula.
///
/// `Neg`, `Odot`, `Oplus`, `Meet`, `Join` and `One` are derived connectives;
/// [`to_core`] rewrites them into `{Var, Zero, Impl, Bullet, Div, FixK,
/// Const}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Zero,
    One,
    Impl(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
    Odot(Box<Formula>, Box<Formula>),
    Oplus(Box<Formula>, Box<Formula>),
    Meet(Box<Formula>, Box<Formula>),
    Join(Box<Formula>, Box<Formula>),
    Bullet(Box<Formula>, Box<Formula>),
    /// `δ_n`; the index is at least 1.
    Div(u32, Box<Formula>),
    /// The negation fixpoint `k`.
    FixK,
    /// Truth constant `r̄`.
    Const(Rational01),
}

use Formula::*;

impl Formula {
    pub fn var(name: &str) -> Formula {
        Var(name.to_string())
    }

    pub fn imp(lhs: Formula, rhs: Formula) -> Formula {
        Impl(Box::new(lhs), Box::new(rhs))
    }

    pub fn neg(arg: Formula) -> Formula {
        Neg(Box::new(arg))
    }

    pub fn odot(lhs: Formula, rhs: Formula) -> Formula {
        Odot(Box::new(lhs), Box::new(rhs))
    }

    pub fn oplus(lhs: Formula, rhs: Formula) -> Formula {
        Oplus(Box::new(lhs), Box::new(rhs))
    }

    pub fn meet(lhs: Formula, rhs: Formula) -> Formula {
        Meet(Box::new(lhs), Box::new(rhs))
    }

    pub fn join(lhs: Formula, rhs: Formula) -> Formula {
        Join(Box::new(lhs), Box::new(rhs))
    }

    pub fn bullet(lhs: Formula, rhs: Formula) -> Formula {
        Bullet(Box::new(lhs), Box::new(rhs))
    }

    pub fn div(n: u32, arg: Formula) -> Formula {
        assert!(n >= 1, "division index must be positive");
        Div(n, Box::new(arg))
    }

    pub fn constant(r: Rational01) -> Formula {
        Const(r)
    }

    /// `α → 0` in core form.
    pub fn core_neg(arg: Formula) -> Formula {
        Formula::imp(arg, Zero)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Var(_) | Zero | One | FixK | Const(_) => 1,
            Neg(a) | Div(_, a) => 1 + a.size(),
            Impl(a, b) | Odot(a, b) | Oplus(a, b) | Meet(a, b) | Join(a, b) | Bullet(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Children in left-to-right order.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Var(_) | Zero | One | FixK | Const(_) => vec![],
            Neg(a) | Div(_, a) => vec![a],
            Impl(a, b) | Odot(a, b) | Oplus(a, b) | Meet(a, b) | Join(a, b) | Bullet(a, b) => {
                vec![a, b]
            }
        }
    }

    /// The least profile under which this formula is well formed.
    pub fn required_profile(&self) -> LogicProfile {
        let mut profile = LogicProfile::BASE;
        self.visit(&mut |f| match f {
            Bullet(..) => profile.product = true,
            Div(..) => profile.division = true,
            FixK => profile.fixpoint = true,
            Const(_) => profile.constants = true,
            _ => {}
        });
        profile
    }

    /// First connective not permitted by `profile`, if any.
    pub fn profile_violation(&self, profile: &LogicProfile) -> Option<&'static str> {
        let need = self.required_profile();
        if need.product && !profile.product {
            Some("*")
        } else if need.division && !profile.division {
            Some("dN")
        } else if need.fixpoint && !profile.fixpoint {
            Some("K")
        } else if need.constants && !profile.constants {
            Some("[r]")
        } else {
            None
        }
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for child in self.children() {
            child.visit(f);
        }
    }

    /// Whether the formula contains no variables.
    pub fn is_ground(&self) -> bool {
        let mut ground = true;
        self.visit(&mut |f| {
            if matches!(f, Var(_)) {
                ground = false;
            }
        });
        ground
    }

    /// All distinct subformulas, children before parents.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out: Vec<Formula> = Vec::new();
        fn walk(f: &Formula, out: &mut Vec<Formula>) {
            for c in f.children() {
                walk(c, out);
            }
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        walk(self, &mut out);
        out
    }

    /// Truth constants occurring in the formula, sorted and deduplicated.
    pub fn constants(&self) -> Vec<Rational01> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Const(r) = f {
                out.push(r.clone());
            }
        });
        out.sort();
        out.dedup();
        out
    }

    /// Division indices occurring in the formula, sorted and deduplicated.
    pub fn division_indices(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Div(n, _) = f {
                out.push(*n);
            }
        });
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Equality after normalization to the core signature.
    pub fn core_eq(&self, other: &Formula) -> bool {
        self == other || to_core(self) == to_core(other)
    }
}
