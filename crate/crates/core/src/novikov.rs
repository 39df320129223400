//! Truncated series in the universal Novikov ring over the rationals.
//!
//! A [`NovikovSeries`] is a finite sum `Σ c_s t^s` with exact rational
//! exponents and coefficients together with a cutoff `L`: it stands for
//! an element of the Novikov ring modulo all terms `t^s` with `s > L`.
//! Terms are kept sorted by exponent with zero coefficients pruned, so
//! two series are equal exactly when they are structurally equal.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Action, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NovikovSeries {
    terms: BTreeMap<Action, Rational>,
    cutoff: Action,
}

impl NovikovSeries {
    pub fn zero(cutoff: Action) -> Self {
        NovikovSeries {
            terms: BTreeMap::new(),
            cutoff,
        }
    }

    pub fn one(cutoff: Action) -> Self {
        Self::constant(Rational::one(), cutoff)
    }

    pub fn constant(coefficient: Rational, cutoff: Action) -> Self {
        Self::monomial(coefficient, Action::zero(), cutoff)
    }

    /// `c·t^s`, or zero when `s` lies beyond the cutoff.
    pub fn monomial(coefficient: Rational, exponent: Action, cutoff: Action) -> Self {
        Self::from_terms([(exponent, coefficient)], cutoff)
    }

    /// Builds a series from arbitrary terms: repeated exponents are summed,
    /// zero coefficients and exponents above the cutoff are dropped.
    pub fn from_terms<I>(terms: I, cutoff: Action) -> Self
    where
        I: IntoIterator<Item = (Action, Rational)>,
    {
        let mut map: BTreeMap<Action, Rational> = BTreeMap::new();
        for (exponent, coefficient) in terms {
            if exponent > cutoff || coefficient.is_zero() {
                continue;
            }
            *map.entry(exponent).or_insert_with(Rational::zero) += coefficient;
        }
        map.retain(|_, c| !c.is_zero());
        NovikovSeries { terms: map, cutoff }
    }

    pub fn cutoff(&self) -> &Action {
        &self.cutoff
    }

    /// Terms in ascending exponent order; coefficients are nonzero.
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Action, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No stored terms; the same as [`NovikovSeries::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: &Action) -> Rational {
        self.terms
            .get(exponent)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Action::zero())
    }

    /// Lowest-exponent term.
    pub fn leading_term(&self) -> Option<(&Action, &Rational)> {
        self.terms.iter().next()
    }

    pub fn min_exponent(&self) -> Option<&Action> {
        self.terms.keys().next()
    }

    /// Supported on `(0, ∞)`.
    pub fn is_positively_supported(&self) -> bool {
        self.min_exponent().is_none_or(Action::is_positive)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Reduces modulo `t^{>cutoff}`; the resulting cutoff never exceeds the current one.
    pub fn truncate(&self, cutoff: &Action) -> Self {
        let cutoff = cutoff.min(&self.cutoff).clone();
        let terms = self
            .terms
            .range(..=cutoff.clone())
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        NovikovSeries { terms, cutoff }
    }

    /// Multiplies by `t^delta`, moving the cutoff along with the terms.
    pub fn shift(&self, delta: &Action) -> Self {
        NovikovSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + delta, c.clone()))
                .collect(),
            cutoff: &self.cutoff + delta,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.cutoff.clone());
        }
        NovikovSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(e, c)| (e.clone(), c.clone()));
        Self::from_terms(terms, cutoff)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Cutoff of a product: the lowest exponent at which either factor's
    /// unknown tail can reach. For nonnegatively supported factors this is
    /// simply the smaller of the two cutoffs.
    fn product_cutoff(&self, other: &Self) -> Action {
        let low = |s: &Self| {
            s.min_exponent()
                .cloned()
                .unwrap_or_default()
                .min(Action::zero())
        };
        let a = &self.cutoff + &low(other);
        let b = &other.cutoff + &low(self);
        a.min(b)
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        let cutoff = self.product_cutoff(other);
        let mut acc: BTreeMap<Action, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if e > cutoff {
                    break;
                }
                *acc.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        NovikovSeries { terms: acc, cutoff }
    }

    /// Multiplicative inverse of a unit.
    ///
    /// Writing `a = c·t^{s₀}·(1 − r)` with `r` positively supported, the
    /// inverse is `c⁻¹·t^{−s₀}·Σ_k r^k`. The geometric sum is evaluated
    /// coefficientwise by `g_s = Σ_{0<v≤s} r_v g_{s−v}` over the exponents
    /// reachable as sums of exponents of `r`. The tail of `a` beyond its
    /// cutoff `L` influences the inverse from `L − 2s₀` on, which becomes
    /// the result's cutoff.
    pub fn invert(&self) -> Result<Self> {
        let (s0, c) = match self.leading_term() {
            Some((s0, c)) => (s0.clone(), c.clone()),
            None => return Err(Error::NotAUnit),
        };
        let c_inv = c.recip();
        // r = 1 − a/(c t^{s0}), supported on (0, L − s0].
        let inner_cutoff = &self.cutoff - &s0;
        let r: Vec<(Action, Rational)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(e, coeff)| (e - &s0, -(coeff * &c_inv)))
            .collect();
        let gens: Vec<Action> = r.iter().map(|(e, _)| e.clone()).collect();
        let exponents = monoid_exponents(&gens, &inner_cutoff);

        let mut g: HashMap<Action, Rational> = HashMap::with_capacity(exponents.len());
        g.insert(Action::zero(), Rational::one());
        for s in exponents.iter().skip(1) {
            let mut sum = Rational::zero();
            for (v, rv) in &r {
                if v > s {
                    break;
                }
                if let Some(prev) = g.get(&(s - v)) {
                    sum += rv * prev;
                }
            }
            if !sum.is_zero() {
                g.insert(s.clone(), sum);
            }
        }

        let result_cutoff = &inner_cutoff - &s0;
        let neg_s0 = -s0;
        let terms = g
            .into_iter()
            .map(|(e, coeff)| (&e + &neg_s0, coeff * &c_inv));
        Ok(Self::from_terms(terms, result_cutoff))
    }

    /// Integer power; negative powers go through [`NovikovSeries::invert`].
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.invert()?.pow(-k);
        }
        let mut result = Self::one(self.cutoff.clone());
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// `exp(a) = Σ_k a^k / k!` for positively supported `a`.
    ///
    /// Uses the derivation `D(t^s) = s·t^s`: `D(exp a) = D(a)·exp(a)`
    /// gives `s·E_s = Σ_{0<u≤s} u·a_u·E_{s−u}`.
    pub fn exp(&self) -> Result<Self> {
        if let Some(e) = self.min_exponent() {
            if !e.is_positive() {
                return Err(Error::NotPositivelySupported {
                    exponent: e.to_string(),
                });
            }
        }
        let gens: Vec<Action> = self.terms.keys().cloned().collect();
        let exponents = monoid_exponents(&gens, &self.cutoff);

        let weighted: Vec<(&Action, Rational)> = self
            .terms
            .iter()
            .map(|(u, au)| (u, u.value() * au))
            .collect();
        let mut values: HashMap<Action, Rational> = HashMap::with_capacity(exponents.len());
        values.insert(Action::zero(), Rational::one());
        for s in exponents.iter().skip(1) {
            let mut sum = Rational::zero();
            for (u, uau) in &weighted {
                if *u > s {
                    break;
                }
                if let Some(prev) = values.get(&(s - u)) {
                    sum += uau * prev;
                }
            }
            if !sum.is_zero() {
                values.insert(s.clone(), sum / s.value());
            }
        }
        Ok(Self::from_terms(values, self.cutoff.clone()))
    }

    /// Formal logarithm of `1 + r` with `r` positively supported.
    ///
    /// From `D(f) = f·D(log f)`: `s·ℓ_s = s·f_s − Σ_{0<v<s} (s−v)·ℓ_{s−v}·f_v`.
    pub fn log(&self) -> Result<Self> {
        if let Some(e) = self.min_exponent() {
            if e.value().is_negative() {
                return Err(Error::BadLeadingTerm {
                    reason: format!("term at negative exponent {e}"),
                });
            }
        }
        if !self.constant_term().is_one() {
            return Err(Error::BadLeadingTerm {
                reason: format!(
                    "constant term is {}",
                    format_rational(&self.constant_term())
                ),
            });
        }
        let r: Vec<(&Action, &Rational)> = self.terms.iter().skip(1).collect();
        let gens: Vec<Action> = r.iter().map(|(e, _)| (*e).clone()).collect();
        let exponents = monoid_exponents(&gens, &self.cutoff);

        let mut values: HashMap<Action, Rational> = HashMap::with_capacity(exponents.len());
        for s in exponents.iter().skip(1) {
            let mut sum = Rational::zero();
            for (v, fv) in &r {
                if *v >= s {
                    break;
                }
                let rest = s - *v;
                if let Some(prev) = values.get(&rest) {
                    sum += rest.value() * prev * *fv;
                }
            }
            let value = self.coeff(s) - sum / s.value();
            if !value.is_zero() {
                values.insert(s.clone(), value);
            }
        }
        Ok(Self::from_terms(values, self.cutoff.clone()))
    }
}

/// All finite sums of the (positive) generators that are `<= limit`,
/// including the empty sum, in ascending order.
pub(crate) fn monoid_exponents(generators: &[Action], limit: &Action) -> Vec<Action> {
    let gens: BTreeSet<&Action> = generators.iter().filter(|g| *g <= limit).collect();
    debug_assert!(gens.iter().all(|g| g.is_positive()));
    let mut out = Vec::new();
    if limit.value().is_negative() {
        return out;
    }
    let mut pending: BTreeSet<Action> = BTreeSet::new();
    pending.insert(Action::zero());
    while let Some(x) = pending.pop_first() {
        for g in &gens {
            let y = &x + *g;
            if &y > limit {
                break;
            }
            pending.insert(y);
        }
        out.push(x);
    }
    out
}

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let sep = match (i, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let c = c.abs();
            f.write_str(sep)?;
            if e.is_zero() {
                f.write_str(&format_rational(&c))?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{} ", format_rational(&c))?;
            }
            if e.value().is_integer() {
                write!(f, "t^{e}")?;
            } else {
                write!(f, "t^({e})")?;
            }
        }
        write!(f, "  (mod t^>{})", self.cutoff)
    }
}

impl fmt::Debug for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NovikovSeries[{self}]")
    }
}

impl<'a> Add<&'a NovikovSeries> for &'a NovikovSeries {
    type Output = NovikovSeries;
    fn add(self, rhs: &'a NovikovSeries) -> NovikovSeries {
        NovikovSeries::add(self, rhs)
    }
}

impl<'a> Sub<&'a NovikovSeries> for &'a NovikovSeries {
    type Output = NovikovSeries;
    fn sub(self, rhs: &'a NovikovSeries) -> NovikovSeries {
        NovikovSeries::sub(self, rhs)
    }
}

impl<'a> Mul<&'a NovikovSeries> for &'a NovikovSeries {
    type Output = NovikovSeries;
    fn mul(self, rhs: &'a NovikovSeries) -> NovikovSeries {
        NovikovSeries::mul(self, rhs)
    }
}

impl Neg for &NovikovSeries {
    type Output = NovikovSeries;
    fn neg(self) -> NovikovSeries {
        NovikovSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn a(n: i64, d: i64) -> Action {
        Action::ratio(n, d)
    }

    type Fraction = (i64, i64);

    fn series(terms: &[(Fraction, Fraction)], cutoff: Fraction) -> NovikovSeries {
        NovikovSeries::from_terms(
            terms
                .iter()
                .map(|&((en, ed), (cn, cd))| (a(en, ed), rat(cn, cd))),
            a(cutoff.0, cutoff.1),
        )
    }

    /// Polynomial in t with integer exponents 0, 1, 2, ...
    fn poly(coeffs: &[i64], cutoff: i64) -> NovikovSeries {
        NovikovSeries::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Action::integer(i as i64), int(c))),
            Action::integer(cutoff),
        )
    }

    #[test]
    fn add_examples() {
        assert_eq!(
            poly(&[1, 1], 3).add(&poly(&[-1, 0, 1], 3)),
            poly(&[0, 1, 1], 3)
        );
        let x = poly(&[3, 0, -2], 4);
        assert_eq!(x.add(&NovikovSeries::zero(a(4, 1))), x);
        let half = series(&[((1, 2), (1, 1))], (5, 1));
        let half2 = series(&[((1, 2), (1, 1))], (2, 1));
        assert_eq!(half.add(&half2), series(&[((1, 2), (2, 1))], (2, 1)));
    }

    #[test]
    fn from_terms_prunes_and_truncates() {
        let s = series(
            &[((1, 1), (1, 1)), ((1, 1), (-1, 1)), ((4, 1), (1, 1))],
            (3, 1),
        );
        assert!(s.is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            poly(&[1, 1], 3).mul(&poly(&[1, -1], 3)),
            poly(&[1, 0, -1], 3)
        );
        let x = poly(&[2, -1, 5], 4);
        assert_eq!(x.mul(&NovikovSeries::one(a(4, 1))), x);
        // (1 + t^{1/2} + t)(1 + t^{1/2}) = 1 + 2t^{1/2} + 2t + t^{3/2}; cut at 1.
        let lhs = series(
            &[((0, 1), (1, 1)), ((1, 2), (1, 1)), ((1, 1), (1, 1))],
            (1, 1),
        );
        let rhs = series(&[((0, 1), (1, 1)), ((1, 2), (1, 1))], (1, 1));
        let want = series(
            &[((0, 1), (1, 1)), ((1, 2), (2, 1)), ((1, 1), (2, 1))],
            (1, 1),
        );
        assert_eq!(lhs.mul(&rhs), want);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(poly(&[1, -1], 3).invert().unwrap(), poly(&[1, 1, 1, 1], 3));
        assert_eq!(
            NovikovSeries::one(a(3, 1)).invert().unwrap(),
            NovikovSeries::one(a(3, 1))
        );
        let want = series(
            &[((0, 1), (1, 2)), ((1, 1), (-1, 2)), ((2, 1), (1, 2))],
            (2, 1),
        );
        let got = poly(&[2, 2], 2).invert().unwrap();
        assert_eq!(got, want);
        assert_eq!(got.mul(&poly(&[2, 2], 2)), NovikovSeries::one(a(2, 1)));
    }

    #[test]
    fn invert_zero_is_not_a_unit() {
        assert_eq!(NovikovSeries::zero(a(2, 1)).invert(), Err(Error::NotAUnit));
        assert_eq!(poly(&[0, 0, 0, 1], 2).invert(), Err(Error::NotAUnit));
    }

    #[test]
    fn invert_with_shifted_leading_term() {
        // t(1 - t), known mod t^{>5}: inverse t^{-1}(1 + t + t^2 + t^3), known mod t^{>3}.
        let x = poly(&[0, 1, -1], 5);
        let inv = x.invert().unwrap();
        assert_eq!(inv.cutoff(), &a(3, 1));
        let want =
            NovikovSeries::from_terms((-1..=3).map(|e| (Action::integer(e), int(1))), a(3, 1));
        assert_eq!(inv, want);
        assert_eq!(x.mul(&inv), NovikovSeries::one(a(3, 1)));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(poly(&[1, -1], 2).pow(-1).unwrap(), poly(&[1, 1, 1], 2));
        assert_eq!(
            poly(&[4, 7], 2).pow(0).unwrap(),
            NovikovSeries::one(a(2, 1))
        );
        assert_eq!(poly(&[1, 1], 2).pow(2).unwrap(), poly(&[1, 2, 1], 2));
        assert_eq!(NovikovSeries::zero(a(1, 1)).pow(-2), Err(Error::NotAUnit));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(
            NovikovSeries::zero(a(2, 1)).exp().unwrap(),
            NovikovSeries::one(a(2, 1))
        );
        let t = NovikovSeries::monomial(int(1), a(1, 1), a(2, 1));
        assert_eq!(
            t.exp().unwrap(),
            series(
                &[((0, 1), (1, 1)), ((1, 1), (1, 1)), ((2, 1), (1, 2))],
                (2, 1)
            )
        );
        let x = series(&[((1, 2), (1, 1)), ((1, 1), (1, 1))], (1, 1));
        assert_eq!(
            x.exp().unwrap(),
            series(
                &[((0, 1), (1, 1)), ((1, 2), (1, 1)), ((1, 1), (3, 2))],
                (1, 1)
            )
        );
    }

    #[test]
    fn exp_rejects_nonpositive_support() {
        assert!(matches!(
            poly(&[1, 1], 2).exp(),
            Err(Error::NotPositivelySupported { .. })
        ));
    }

    #[test]
    fn log_examples() {
        assert!(NovikovSeries::one(a(2, 1)).log().unwrap().is_zero());
        assert_eq!(
            poly(&[1, 1], 2).log().unwrap(),
            series(&[((1, 1), (1, 1)), ((2, 1), (-1, 2))], (2, 1))
        );
        let x = NovikovSeries::monomial(int(1), a(1, 3), a(1, 1));
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
    }

    #[test]
    fn log_rejects_bad_leading_term() {
        assert!(matches!(
            poly(&[2, 1], 2).log(),
            Err(Error::BadLeadingTerm { .. })
        ));
        let neg = series(&[((-1, 1), (1, 1)), ((0, 1), (1, 1))], (2, 1));
        assert!(matches!(neg.log(), Err(Error::BadLeadingTerm { .. })));
    }

    #[test]
    fn monoid_enumeration() {
        let got = monoid_exponents(&[a(1, 1), a(3, 2)], &a(3, 1));
        let want: Vec<Action> = [(0, 1), (1, 1), (3, 2), (2, 1), (5, 2), (3, 1)]
            .iter()
            .map(|&(n, d)| a(n, d))
            .collect();
        let mut want = want;
        want.sort();
        assert_eq!(got, want);
        assert!(monoid_exponents(&[], &a(-1, 1)).is_empty());
    }

    #[test]
    fn display_is_readable() {
        let x = series(
            &[((0, 1), (1, 1)), ((1, 2), (-2, 1)), ((2, 1), (1, 3))],
            (3, 1),
        );
        assert_eq!(x.to_string(), "1 - 2 t^(1/2) + 1/3 t^2  (mod t^>3)");
    }
}
