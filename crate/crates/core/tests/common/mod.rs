//! Independent reference computations for the integration tests.
//!
//! Nothing here calls into the library's series arithmetic: truncated
//! series are plain sorted term lists, multiplied by schoolbook
//! convolution, and exp / inverse are literal power sums.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use zeta_core::{Action, NovikovSeries};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Truncated series as an exponent → coefficient map.
#[derive(Clone, Debug, PartialEq)]
pub struct Naive {
    pub terms: BTreeMap<Q, Q>,
    pub cutoff: Q,
}

impl Naive {
    pub fn new(terms: impl IntoIterator<Item = (Q, Q)>, cutoff: Q) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e <= cutoff {
                *map.entry(e).or_insert_with(Q::zero) += c;
            }
        }
        map.retain(|_, c: &mut Q| !c.is_zero());
        Naive { terms: map, cutoff }
    }

    pub fn one(cutoff: Q) -> Self {
        Naive::new([(Q::zero(), Q::one())], cutoff)
    }

    /// `Σ coeffs[i] t^i`
    pub fn poly(coeffs: &[i64], cutoff: i64) -> Self {
        Naive::new(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (q(i as i64, 1), q(c, 1))),
            q(cutoff, 1),
        )
    }

    pub fn add(&self, other: &Naive) -> Naive {
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        Naive::new(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
            cutoff,
        )
    }

    pub fn scale(&self, k: &Q) -> Naive {
        Naive::new(
            self.terms.iter().map(|(e, c)| (e.clone(), c * k)),
            self.cutoff.clone(),
        )
    }

    pub fn mul(&self, other: &Naive) -> Naive {
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let mut out = Vec::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.push((ea + eb, ca * cb));
            }
        }
        Naive::new(out, cutoff)
    }

    pub fn min_positive_exponent(&self) -> Option<Q> {
        self.terms.keys().find(|e| **e > Q::zero()).cloned()
    }

    /// Largest `k` for which `a^k` can be nonzero below the cutoff.
    fn power_bound(&self) -> u64 {
        match self.min_positive_exponent() {
            None => 0,
            Some(m) => (&self.cutoff / m).floor().to_integer().try_into().unwrap(),
        }
    }

    /// `Σ_k a^k / k!` by explicit powers; `a` must be positively supported.
    pub fn exp(&self) -> Naive {
        let mut total = Naive::one(self.cutoff.clone());
        let mut power = Naive::one(self.cutoff.clone());
        let mut factorial = Q::one();
        for k in 1..=self.power_bound() {
            power = power.mul(self);
            factorial *= Q::from_integer(k.into());
            total = total.add(&power.scale(&factorial.recip()));
        }
        total
    }

    /// `(1 − r)^{−1} = Σ_k r^k` for `self = 1 − r`, `r` positively supported.
    pub fn geometric_inverse(&self) -> Naive {
        assert_eq!(self.terms.get(&Q::zero()), Some(&Q::one()));
        let r = Naive::new(
            self.terms
                .iter()
                .filter(|(e, _)| **e > Q::zero())
                .map(|(e, c)| (e.clone(), -c.clone())),
            self.cutoff.clone(),
        );
        let mut total = Naive::one(self.cutoff.clone());
        let mut power = Naive::one(self.cutoff.clone());
        for _ in 1..=r.power_bound() {
            power = power.mul(&r);
            total = total.add(&power);
        }
        total
    }

    /// `Σ_{k≥1} (−1)^{k+1} r^k / k` for `self = 1 + r`.
    pub fn log(&self) -> Naive {
        let r = Naive::new(
            self.terms
                .iter()
                .filter(|(e, _)| **e > Q::zero())
                .map(|(e, c)| (e.clone(), c.clone())),
            self.cutoff.clone(),
        );
        let mut total = Naive::new([], self.cutoff.clone());
        let mut power = Naive::one(self.cutoff.clone());
        for k in 1..=r.power_bound() {
            power = power.mul(&r);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total = total.add(&power.scale(&q(sign, k as i64)));
        }
        total
    }

    pub fn to_series(&self) -> NovikovSeries {
        NovikovSeries::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (Action::new(e.clone()), c.clone())),
            Action::new(self.cutoff.clone()),
        )
    }

    pub fn from_series(s: &NovikovSeries) -> Naive {
        Naive::new(
            s.terms().map(|(e, c)| (e.value().clone(), c.clone())),
            s.cutoff().value().clone(),
        )
    }
}
