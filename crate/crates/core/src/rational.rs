//! Exact truth values.
//!
//! Every truth value handled by the library is a rational number in the
//! closed unit interval, kept in lowest terms. Arithmetic happens on the
//! underlying [`BigRational`]; [`Rational01`] is the checked boundary type.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::ValueError;

/// A rational number in `[0, 1]`, stored reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational01(BigRational);

impl Rational01 {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, ValueError> {
        if denominator == 0 {
            return Err(ValueError::ZeroDenominator);
        }
        Self::try_from_big(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        ))
    }

    /// Checked conversion; `BigRational` is always normalized on construction.
    pub fn try_from_big(value: BigRational) -> Result<Self, ValueError> {
        if value.is_negative() || value > BigRational::one() {
            return Err(ValueError::OutOfUnitInterval(value.to_string()));
        }
        Ok(Rational01(value))
    }

    /// Clamps an arbitrary rational into `[0, 1]`.
    pub fn clamp(value: BigRational) -> Self {
        if value.is_negative() {
            Self::zero()
        } else if value > BigRational::one() {
            Self::one()
        } else {
            Rational01(value)
        }
    }

    pub fn zero() -> Self {
        Rational01(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational01(BigRational::one())
    }

    pub fn half() -> Self {
        Rational01(BigRational::new(1.into(), 2.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `x → y = min(1, 1 − x + y)`
    pub fn implies(&self, other: &Self) -> Self {
        Self::clamp(BigRational::one() - &self.0 + &other.0)
    }

    /// `¬x = 1 − x`
    pub fn neg(&self) -> Self {
        Rational01(BigRational::one() - &self.0)
    }

    /// `x ⊙ y = max(0, x + y − 1)`
    pub fn odot(&self, other: &Self) -> Self {
        Self::clamp(&self.0 + &other.0 - BigRational::one())
    }

    /// `x ⊕ y = min(1, x + y)`
    pub fn oplus(&self, other: &Self) -> Self {
        Self::clamp(&self.0 + &other.0)
    }

    pub fn meet(&self, other: &Self) -> Self {
        std::cmp::min(self, other).clone()
    }

    pub fn join(&self, other: &Self) -> Self {
        std::cmp::max(self, other).clone()
    }

    pub fn product(&self, other: &Self) -> Self {
        Rational01(&self.0 * &other.0)
    }

    /// `δ_n x = x / n`; `n` must be positive.
    pub fn divide(&self, n: u32) -> Self {
        assert!(n >= 1, "division index must be positive");
        Rational01(&self.0 / BigRational::from_integer(BigInt::from(n)))
    }

    /// `n·x = min(1, n x)`, the `n`-fold truncated sum.
    pub fn multiple(&self, n: u32) -> Self {
        Self::clamp(&self.0 * BigRational::from_integer(BigInt::from(n)))
    }

    /// Draws a rational with denominator uniform in `1..=max_denominator`
    /// and numerator uniform in `0..=denominator`.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, max_denominator: u32) -> Self {
        let den: u32 = rng.gen_range(1..=max_denominator.max(1));
        let num: u32 = rng.gen_range(0..=den);
        Rational01(BigRational::new(num.into(), den.into()))
    }

    /// Grid point `k / n`.
    pub fn grid(k: u32, n: u32) -> Self {
        assert!(n >= 1 && k <= n, "grid point {k}/{n} outside [0,1]");
        Rational01(BigRational::new(k.into(), n.into()))
    }
}

impl fmt::Display for Rational01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational01 {
    type Err = ValueError;

    /// Accepts `n` or `n/d` with non-negative integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let parse = |t: &str| -> Result<BigInt, ValueError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ValueError::Malformed(s.to_string()));
            }
            t.parse::<BigInt>()
                .map_err(|_| ValueError::Malformed(s.to_string()))
        };
        let num = parse(num)?;
        let den = parse(den)?;
        if den.is_zero() {
            return Err(ValueError::ZeroDenominator);
        }
        Self::try_from_big(BigRational::new(num, den))
    }
}

impl From<Rational01> for BigRational {
    fn from(r: Rational01) -> Self {
        r.0
    }
}
