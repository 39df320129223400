//! The Möbius function and the Θ transform.
//!
//! `Θ(a) = Π_A Π_{n≥1} (1 − t^{nA})^{−a(A)·μ(n)}` sends the signed
//! good-orbit series to the zeta function. Exponents are actions, so the
//! `n`-th factor of a term at action `A` sits at `nA`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::novikov::NovikovSeries;
use crate::orbits::{zeta_ch, OrbitSet};
use crate::rational::{format_rational, int, Action, Rational};

/// `μ(n)` by trial division.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined on positive integers");
    let mut n = n;
    let mut value = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            value = -value;
        }
        p += 1;
    }
    if n > 1 {
        value = -value;
    }
    value
}

/// Memoized [`mobius`].
#[derive(Debug, Default, Clone)]
pub struct MobiusCache {
    memo: HashMap<u64, i8>,
}

impl MobiusCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: u64) -> i8 {
        *self.memo.entry(n).or_insert_with(|| mobius(n))
    }
}

/// `Σ_{n | k} μ(n)`.
pub fn mobius_divisor_sum(k: u64, cache: &mut MobiusCache) -> i64 {
    let mut sum = 0i64;
    let mut d = 1u64;
    while d * d <= k {
        if k.is_multiple_of(d) {
            sum += i64::from(cache.get(d));
            let other = k / d;
            if other != d {
                sum += i64::from(cache.get(other));
            }
        }
        d += 1;
    }
    sum
}

fn check_theta_input(a: &NovikovSeries) -> Result<Vec<(Action, i64)>> {
    let mut out = Vec::with_capacity(a.len());
    for (e, c) in a.terms() {
        if !e.is_positive() {
            return Err(Error::NonPositiveSupport {
                exponent: e.to_string(),
            });
        }
        let bad = || Error::NonIntegerCoefficients {
            exponent: e.to_string(),
            coefficient: format_rational(c),
        };
        if !c.is_integer() {
            return Err(bad());
        }
        out.push((e.clone(), c.to_integer().to_i64().ok_or_else(bad)?));
    }
    Ok(out)
}

/// Exponents `(1 − t^σ)^{e_σ}` of the truncated Θ product, with the
/// contributions of all `(A, n)` landing on the same `σ = nA` combined.
pub fn theta_factor_exponents(a: &NovikovSeries, cutoff: &Action) -> Result<BTreeMap<Action, i64>> {
    let cutoff = cutoff.min(a.cutoff());
    let terms = check_theta_input(a)?;
    let mut mu = MobiusCache::new();
    let mut powers: BTreeMap<Action, i64> = BTreeMap::new();
    for (action, coeff) in &terms {
        for n in 1..=cutoff.multiples_below(action) {
            let m = i64::from(mu.get(n));
            if m != 0 {
                *powers.entry(action.scale(n)).or_insert(0) -= coeff * m;
            }
        }
    }
    powers.retain(|_, e| *e != 0);
    Ok(powers)
}

/// Number of pairs `(A, n)` with `A` in the support of `a` and `nA <= cutoff`;
/// every other factor of the product is `1` modulo the cutoff.
pub fn theta_factor_count(a: &NovikovSeries, cutoff: &Action) -> u64 {
    let cutoff = cutoff.min(a.cutoff());
    a.terms()
        .filter(|(e, _)| e.is_positive())
        .map(|(e, _)| cutoff.multiples_below(e))
        .sum()
}

/// Θ transform of an integer series supported on `(0, cutoff]`.
pub fn theta(a: &NovikovSeries, cutoff: &Action) -> Result<NovikovSeries> {
    let powers = theta_factor_exponents(a, cutoff)?;
    let cutoff = cutoff.min(a.cutoff()).clone();
    let mut acc = NovikovSeries::one(cutoff.clone());
    for (sigma, power) in powers {
        let base = NovikovSeries::from_terms(
            [(Action::zero(), Rational::one()), (sigma, int(-1))],
            cutoff.clone(),
        );
        acc = acc.mul(&base.pow(power)?);
    }
    Ok(acc)
}

/// `Θ(ζ_CH)`, which reproduces the zeta function.
pub fn zeta_via_theta(set: &OrbitSet, cutoff: &Action) -> Result<NovikovSeries> {
    theta(&zeta_ch(set, cutoff)?, cutoff)
}
