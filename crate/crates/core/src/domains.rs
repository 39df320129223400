//! Closed-form zeta functions of star-shaped toric domains and
//! S¹-invariant domains, and the nonnegativity test that separates
//! other domains from toric ones.

use std::collections::HashSet;

use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::novikov::NovikovSeries;
use crate::rational::{gcd_u64, int, Action, Rational};

fn positive(what: &str, action: &Action) -> Result<()> {
    if action.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveAction {
            what: what.to_string(),
            action: action.to_string(),
        })
    }
}

/// `1 − t^s`
fn one_minus(s: &Action, cutoff: &Action) -> NovikovSeries {
    NovikovSeries::from_terms(
        [(Action::zero(), Rational::one()), (s.clone(), int(-1))],
        cutoff.clone(),
    )
}

/// Star-shaped toric domain whose boundary curve runs from `(a, 0)` to `(0, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricDomain {
    a: Action,
    b: Action,
}

impl ToricDomain {
    pub fn new(a: Action, b: Action) -> Result<Self> {
        positive("toric intercept a", &a)?;
        positive("toric intercept b", &b)?;
        Ok(ToricDomain { a, b })
    }

    pub fn a(&self) -> &Action {
        &self.a
    }

    pub fn b(&self) -> &Action {
        &self.b
    }
}

/// `1 / ((1 − t^a)(1 − t^b))`
pub fn toric_zeta(d: &ToricDomain, cutoff: &Action) -> Result<NovikovSeries> {
    one_minus(&d.a, cutoff)
        .mul(&one_minus(&d.b, cutoff))
        .invert()
}

/// `⌊T/a⌋ + ⌊T/b⌋` for a level `T` off the action spectrum.
pub fn toric_euler(d: &ToricDomain, at: &Action) -> Result<i64> {
    positive("level", at)?;
    for unit in [&d.a, &d.b] {
        if at.as_multiple_of(unit).is_some() {
            return Err(Error::OnSpectrum {
                at: at.to_string(),
                action: unit.to_string(),
            });
        }
    }
    let count = |unit: &Action| at.floor_div(unit).to_i64().unwrap_or(i64::MAX);
    Ok(count(&d.a).saturating_add(count(&d.b)))
}

/// A point `w` on the boundary curve with primitive outward normal `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentProfilePoint {
    w: (Rational, Rational),
    v: (u64, u64),
}

impl MomentProfilePoint {
    pub fn new(w: (Rational, Rational), v: (u64, u64)) -> Result<Self> {
        if !w.0.is_positive() || !w.1.is_positive() {
            return Err(Error::NonPositiveProfile {
                w1: crate::rational::format_rational(&w.0),
                w2: crate::rational::format_rational(&w.1),
            });
        }
        if v.0 == 0 || v.1 == 0 || gcd_u64(v.0, v.1) != 1 {
            return Err(Error::NotCoprime {
                v1: v.0.to_string(),
                v2: v.1.to_string(),
            });
        }
        Ok(MomentProfilePoint { w, v })
    }
}

/// Action `v₁w₁ + v₂w₂` of the orbit family over a profile point.
pub fn toric_family_action(p: &MomentProfilePoint) -> Action {
    let v1 = Rational::from_integer(p.v.0.into());
    let v2 = Rational::from_integer(p.v.1.into());
    Action::new(v1 * &p.w.0 + v2 * &p.w.1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPoint {
    pub label: String,
    /// `e^{f(p)}`
    pub action: Action,
    pub index: u8,
}

/// Critical points of a Morse function on the 2-sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseData {
    points: Vec<CriticalPoint>,
}

impl MorseData {
    pub fn new(points: Vec<CriticalPoint>) -> Result<Self> {
        let mut labels = HashSet::new();
        let mut counts = [0i64; 3];
        for p in &points {
            if !labels.insert(p.label.as_str()) {
                return Err(Error::DuplicateLabel(p.label.clone()));
            }
            positive(&format!("critical point '{}'", p.label), &p.action)?;
            match counts.get_mut(usize::from(p.index)) {
                Some(c) => *c += 1,
                None => {
                    return Err(Error::BadMorseCounts {
                        reason: format!("critical point '{}' has index {}", p.label, p.index),
                    })
                }
            }
        }
        let [min, saddle, max] = counts;
        if min == 0 || max == 0 || min - saddle + max != 2 {
            return Err(Error::BadMorseCounts {
                reason: format!("{min} minima, {saddle} saddles, {max} maxima"),
            });
        }
        Ok(MorseData { points })
    }

    pub fn points(&self) -> &[CriticalPoint] {
        &self.points
    }
}

/// `Π_p (1 − t^{A_p})^{(−1)^{ind(p)−1}}`
pub fn s1_invariant_zeta(m: &MorseData, cutoff: &Action) -> Result<NovikovSeries> {
    let mut acc = NovikovSeries::one(cutoff.clone());
    for p in &m.points {
        if p.action > *cutoff {
            continue;
        }
        let factor = one_minus(&p.action, cutoff);
        acc = if p.index == 1 {
            acc.mul(&factor)
        } else {
            acc.mul(&factor.invert()?)
        };
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A negative coefficient at `witness`: no star-shaped toric domain
    /// has this zeta function.
    NotToricInterior {
        witness: Action,
        coefficient: Rational,
    },
    /// All coefficients up to the cutoff are nonnegative.
    Inconclusive,
}

pub fn distinguish_from_toric(z: &NovikovSeries) -> Verdict {
    z.terms()
        .find(|(_, c)| c.is_negative())
        .map_or(Verdict::Inconclusive, |(e, c)| Verdict::NotToricInterior {
            witness: e.clone(),
            coefficient: c.clone(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{zeta_product_form, OrbitSet, OrbitType3D, SimpleOrbit};
    use crate::rational::rat;

    fn poly(coeffs: &[i64], cutoff: i64) -> NovikovSeries {
        NovikovSeries::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Action::integer(i as i64), int(c))),
            Action::integer(cutoff),
        )
    }

    fn toric(a: Action, b: Action) -> ToricDomain {
        ToricDomain::new(a, b).unwrap()
    }

    fn cp(label: &str, action: Action, index: u8) -> CriticalPoint {
        CriticalPoint {
            label: label.into(),
            action,
            index,
        }
    }

    #[test]
    fn toric_zeta_examples() {
        let one = Action::integer(1);
        assert_eq!(
            toric_zeta(&toric(one.clone(), one.clone()), &Action::integer(3)).unwrap(),
            poly(&[1, 2, 3, 4], 3)
        );
        assert_eq!(
            toric_zeta(&toric(one.clone(), Action::integer(2)), &Action::integer(2)).unwrap(),
            poly(&[1, 1, 2], 2)
        );
        let cut = Action::ratio(1, 2);
        assert_eq!(
            toric_zeta(&toric(one, Action::integer(2)), &cut).unwrap(),
            NovikovSeries::one(cut)
        );
    }

    #[test]
    fn toric_rejects_nonpositive() {
        assert!(matches!(
            ToricDomain::new(Action::zero(), Action::integer(1)),
            Err(Error::NonPositiveAction { .. })
        ));
    }

    #[test]
    fn toric_euler_examples() {
        let one = Action::integer(1);
        assert_eq!(
            toric_euler(&toric(one.clone(), one.clone()), &Action::ratio(5, 2)),
            Ok(4)
        );
        assert_eq!(
            toric_euler(&toric(Action::integer(2), Action::integer(3)), &one),
            Ok(0)
        );
        let d = toric(one, Action::ratio(3, 2));
        assert!(matches!(
            toric_euler(&d, &Action::integer(2)),
            Err(Error::OnSpectrum { .. })
        ));
        assert!(matches!(
            toric_euler(&d, &Action::integer(3)),
            Err(Error::OnSpectrum { .. })
        ));
        assert_eq!(toric_euler(&d, &Action::ratio(7, 4)), Ok(2));
    }

    #[test]
    fn family_action_examples() {
        let p = MomentProfilePoint::new((rat(1, 2), rat(1, 2)), (1, 1)).unwrap();
        assert_eq!(toric_family_action(&p), Action::integer(1));
        let q = MomentProfilePoint::new((rat(1, 3), rat(1, 2)), (3, 2)).unwrap();
        assert_eq!(toric_family_action(&q), Action::integer(2));
        assert!(matches!(
            MomentProfilePoint::new((int(1), int(0)), (1, 1)),
            Err(Error::NonPositiveProfile { .. })
        ));
        assert!(matches!(
            MomentProfilePoint::new((int(1), int(1)), (2, 4)),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn morse_validation() {
        let bad = MorseData::new(vec![
            cp("min", Action::integer(1), 0),
            cp("saddle", Action::ratio(3, 2), 1),
            cp("max", Action::integer(3), 2),
        ]);
        assert!(matches!(bad, Err(Error::BadMorseCounts { .. })));
        let bad_index = MorseData::new(vec![cp("p", Action::integer(1), 3)]);
        assert!(matches!(bad_index, Err(Error::BadMorseCounts { .. })));
        assert!(MorseData::new(vec![
            cp("min", Action::integer(1), 0),
            cp("max", Action::integer(2), 2)
        ])
        .is_ok());
    }

    #[test]
    fn s1_zeta_examples() {
        let m = MorseData::new(vec![
            cp("min", Action::integer(1), 0),
            cp("max", Action::integer(3), 2),
        ])
        .unwrap();
        assert_eq!(
            s1_invariant_zeta(&m, &Action::integer(3)).unwrap(),
            poly(&[1, 1, 1, 2], 3)
        );

        let m = MorseData::new(vec![
            cp("min", Action::integer(1), 0),
            cp("saddle", Action::ratio(3, 2), 1),
            cp("max", Action::integer(3), 2),
            cp("max2", Action::integer(3), 2),
        ])
        .unwrap();
        let cut = Action::ratio(3, 2);
        let want = NovikovSeries::from_terms(
            [
                (Action::zero(), int(1)),
                (Action::integer(1), int(1)),
                (Action::ratio(3, 2), int(-1)),
            ],
            cut.clone(),
        );
        assert_eq!(s1_invariant_zeta(&m, &cut).unwrap(), want);

        let high = MorseData::new(vec![
            cp("min", Action::integer(5), 0),
            cp("max", Action::integer(6), 2),
        ])
        .unwrap();
        assert_eq!(
            s1_invariant_zeta(&high, &Action::integer(4)).unwrap(),
            poly(&[1], 4)
        );
    }

    #[test]
    fn distinguish_examples() {
        let z = toric_zeta(
            &toric(Action::integer(1), Action::ratio(3, 2)),
            &Action::integer(6),
        )
        .unwrap();
        assert_eq!(distinguish_from_toric(&z), Verdict::Inconclusive);

        let s = OrbitSet::new(vec![
            SimpleOrbit::typed("h", Action::ratio(3, 2), OrbitType3D::PositiveHyperbolic).unwrap(),
            SimpleOrbit::typed("e", Action::integer(1), OrbitType3D::Elliptic).unwrap(),
        ])
        .unwrap();
        let z = zeta_product_form(&s, &Action::integer(2)).unwrap();
        assert_eq!(
            distinguish_from_toric(&z),
            Verdict::NotToricInterior {
                witness: Action::ratio(3, 2),
                coefficient: int(-1)
            }
        );
        assert_eq!(
            distinguish_from_toric(&NovikovSeries::one(Action::integer(2))),
            Verdict::Inconclusive
        );
    }
}
