use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{EvalError, ValueError};
use crate::rational::Rational01;
use crate::syntax::{Formula, LogicProfile};

/// Total assignment of truth values to variable names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(BTreeMap<String, Rational01>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: Rational01) -> &mut Self {
        self.0.insert(name.into(), value);
        self
    }

    pub fn with(mut self, name: impl Into<String>, value: Rational01) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Rational01> {
        self.0.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational01)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Uniform random rational values for `names`.
    pub fn sample<'a, R: Rng + ?Sized>(
        rng: &mut R,
        names: impl IntoIterator<Item = &'a String>,
        max_denominator: u32,
    ) -> Self {
        let mut v = Valuation::new();
        for name in names {
            v.set(name.clone(), Rational01::sample(rng, max_denominator));
        }
        v
    }

    /// Parses `p=7/10,q=3/5`.
    pub fn parse(text: &str) -> Result<Self, ValueError> {
        let mut v = Valuation::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| ValueError::Malformed(item.to_string()))?;
            v.set(name.trim(), value.trim().parse()?);
        }
        Ok(v)
    }
}

impl fmt::Display for Valuation {
    /// `p=1/2,q=0`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl FromIterator<(String, Rational01)> for Valuation {
    fn from_iter<T: IntoIterator<Item = (String, Rational01)>>(iter: T) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

/// Exact value of `f` in the standard algebra on `[0,1]` expanded by the
/// connectives `profile` enables.
pub fn eval(f: &Formula, v: &Valuation, profile: &LogicProfile) -> Result<Rational01, EvalError> {
    if let Some(op) = f.profile_violation(profile) {
        return Err(EvalError::ProfileViolation(op));
    }
    value(f, v)
}

/// [`eval`] without the profile gate: every connective gets its standard
/// interpretation.
pub fn value(f: &Formula, v: &Valuation) -> Result<Rational01, EvalError> {
    use Formula::*;
    Ok(match f {
        Var(name) => v
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::MissingVariable(name.clone()))?,
        Zero => Rational01::zero(),
        One => Rational01::one(),
        FixK => Rational01::half(),
        Const(r) => r.clone(),
        Impl(a, b) => value(a, v)?.implies(&value(b, v)?),
        Neg(a) => value(a, v)?.neg(),
        Odot(a, b) => value(a, v)?.odot(&value(b, v)?),
        Oplus(a, b) => value(a, v)?.oplus(&value(b, v)?),
        Meet(a, b) => value(a, v)?.meet(&value(b, v)?),
        Join(a, b) => value(a, v)?.join(&value(b, v)?),
        Bullet(a, b) => value(a, v)?.product(&value(b, v)?),
        Div(n, a) => value(a, v)?.divide(*n),
    })
}
