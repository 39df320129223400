//! Exact rational scalars: coefficients and actions.
//!
//! Rationals are rendered canonically as `p/q` with `q > 0` and
//! `gcd(p, q) = 1`, or `p` alone when `q = 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `p/q` or `p` (optional sign on `p`, `q > 0`).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |msg: &str| Error::parse(format!("'{text}'"), msg.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("invalid numerator"))?;
    if den.starts_with('-') || den.starts_with('+') {
        return Err(bad("denominator must be an unsigned positive integer"));
    }
    let den: BigInt = den.parse().map_err(|_| bad("invalid denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(num.into(), den.into())
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(n.into())
}

/// `(-1)^k` for a parity bit.
pub(crate) fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// A symplectic action, i.e. an exponent `s` of a monomial `t^s`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Action(Rational);

impl Action {
    pub fn new(value: Rational) -> Self {
        Action(value)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Action(rat(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Action(int(n))
    }

    pub fn zero() -> Self {
        Action(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `⌊self / unit⌋`; `unit` must be positive.
    pub fn floor_div(&self, unit: &Action) -> BigInt {
        debug_assert!(unit.is_positive());
        (&self.0 / &unit.0).floor().to_integer()
    }

    /// Number of positive multiples `d·unit` that are `<= self`, saturated to `u64`.
    pub fn multiples_below(&self, unit: &Action) -> u64 {
        let q = self.floor_div(unit);
        if q.is_negative() {
            0
        } else {
            q.to_u64().unwrap_or(u64::MAX)
        }
    }

    /// `Some(d)` when `self = d·unit` for a positive integer `d`.
    pub fn as_multiple_of(&self, unit: &Action) -> Option<u64> {
        let q = &self.0 / &unit.0;
        if q.is_integer() && q.is_positive() {
            q.to_integer().to_u64()
        } else {
            None
        }
    }

    pub fn scale(&self, k: u64) -> Action {
        Action(&self.0 * BigRational::from_integer(k.into()))
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Action({self})")
    }
}

impl FromStr for Action {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Action)
    }
}

impl From<Rational> for Action {
    fn from(value: Rational) -> Self {
        Action(value)
    }
}

impl From<i64> for Action {
    fn from(n: i64) -> Self {
        Action::integer(n)
    }
}

impl<'a> Add<&'a Action> for &'a Action {
    type Output = Action;
    fn add(self, rhs: &'a Action) -> Action {
        Action(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a Action> for &'a Action {
    type Output = Action;
    fn sub(self, rhs: &'a Action) -> Action {
        Action(&self.0 - &rhs.0)
    }
}

impl Add for Action {
    type Output = Action;
    fn add(self, rhs: Action) -> Action {
        Action(self.0 + rhs.0)
    }
}

impl Sub for Action {
    type Output = Action;
    fn sub(self, rhs: Action) -> Action {
        Action(self.0 - rhs.0)
    }
}

impl Neg for Action {
    type Output = Action;
    fn neg(self) -> Action {
        Action(-self.0)
    }
}

impl<'a> Mul<&'a Rational> for &'a Action {
    type Output = Action;
    fn mul(self, rhs: &'a Rational) -> Action {
        Action(&self.0 * rhs)
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
