//! Reeb-orbit data and the zeta functions built from it.
//!
//! Orbits enter only through their action and the Lefschetz parities of
//! the simple orbit and of its double cover; the parity of every iterate
//! follows from these two (odd covers inherit `eps1`, even covers `eps2`).

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::novikov::NovikovSeries;
use crate::rational::{format_rational, int, sign, Action, Rational};

/// An element of Z/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^self`
    pub fn sign(self) -> i64 {
        sign(self.is_odd())
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if rhs.is_odd() {
            self.flip()
        } else {
            self
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// The three nondegenerate orbit types in dimension three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitType3D {
    Elliptic,
    PositiveHyperbolic,
    NegativeHyperbolic,
}

impl OrbitType3D {
    /// `(eps1, eps2)` of an orbit of this type.
    pub fn parities(self) -> (Parity, Parity) {
        use Parity::*;
        match self {
            OrbitType3D::Elliptic => (Even, Even),
            OrbitType3D::PositiveHyperbolic => (Odd, Odd),
            OrbitType3D::NegativeHyperbolic => (Even, Odd),
        }
    }

    pub fn from_parities(eps1: Parity, eps2: Parity) -> Option<Self> {
        use Parity::*;
        match (eps1, eps2) {
            (Even, Even) => Some(OrbitType3D::Elliptic),
            (Odd, Odd) => Some(OrbitType3D::PositiveHyperbolic),
            (Even, Odd) => Some(OrbitType3D::NegativeHyperbolic),
            (Odd, Even) => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrbitType3D::Elliptic => "elliptic",
            OrbitType3D::PositiveHyperbolic => "pos-hyperbolic",
            OrbitType3D::NegativeHyperbolic => "neg-hyperbolic",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "elliptic" => Some(OrbitType3D::Elliptic),
            "pos-hyperbolic" => Some(OrbitType3D::PositiveHyperbolic),
            "neg-hyperbolic" => Some(OrbitType3D::NegativeHyperbolic),
            _ => None,
        }
    }
}

/// Type of a simple orbit in a 3-manifold from the trace of its linearized
/// return map (a 2×2 symplectic matrix, eigenvalues `μ, 1/μ`).
pub fn classify_orbit_3d(trace: &Rational) -> Result<OrbitType3D> {
    let two = int(2);
    if trace.abs() == two {
        return Err(Error::DegenerateOrbit {
            trace: format_rational(trace),
        });
    }
    Ok(if trace.abs() < two {
        OrbitType3D::Elliptic
    } else if trace.is_positive() {
        OrbitType3D::PositiveHyperbolic
    } else {
        OrbitType3D::NegativeHyperbolic
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleOrbit {
    pub label: String,
    pub action: Action,
    pub eps1: Parity,
    pub eps2: Parity,
}

impl SimpleOrbit {
    pub fn new(
        label: impl Into<String>,
        action: Action,
        eps1: Parity,
        eps2: Parity,
    ) -> Result<Self> {
        let label = label.into();
        if !action.is_positive() {
            return Err(Error::NonPositiveAction {
                what: format!("orbit '{label}'"),
                action: action.to_string(),
            });
        }
        Ok(SimpleOrbit {
            label,
            action,
            eps1,
            eps2,
        })
    }

    pub fn typed(label: impl Into<String>, action: Action, kind: OrbitType3D) -> Result<Self> {
        let (eps1, eps2) = kind.parities();
        Self::new(label, action, eps1, eps2)
    }

    pub fn type_3d(&self) -> Option<OrbitType3D> {
        OrbitType3D::from_parities(self.eps1, self.eps2)
    }

    /// Hyperbolic in the 3-dimensional sense, i.e. its double cover has odd parity.
    pub fn is_hyperbolic(&self) -> bool {
        self.eps2.is_odd()
    }

    pub fn iterate_action(&self, d: u64) -> Action {
        self.action.scale(d)
    }

    /// Covers `d >= 1` with `d·action <= cutoff`.
    pub fn iterates_up_to(&self, cutoff: &Action) -> std::ops::RangeInclusive<u64> {
        1..=cutoff.multiples_below(&self.action)
    }
}

/// Parity of the `d`-fold cover.
pub fn iterate_parity(orbit: &SimpleOrbit, d: u64) -> Parity {
    debug_assert!(d >= 1);
    if d % 2 == 1 {
        orbit.eps1
    } else {
        orbit.eps2
    }
}

/// A cover is bad when it is even and its parity differs from the simple orbit's.
pub fn is_good(orbit: &SimpleOrbit, d: u64) -> bool {
    !(d.is_multiple_of(2) && iterate_parity(orbit, d) != orbit.eps1)
}

/// A finite set of simple orbits with distinct labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrbitSet {
    orbits: Vec<SimpleOrbit>,
}

impl OrbitSet {
    pub fn new(orbits: Vec<SimpleOrbit>) -> Result<Self> {
        let mut seen = HashSet::new();
        for o in &orbits {
            if !seen.insert(o.label.as_str()) {
                return Err(Error::DuplicateLabel(o.label.clone()));
            }
            if !o.action.is_positive() {
                return Err(Error::NonPositiveAction {
                    what: format!("orbit '{}'", o.label),
                    action: o.action.to_string(),
                });
            }
        }
        Ok(OrbitSet { orbits })
    }

    pub fn empty() -> Self {
        OrbitSet::default()
    }

    pub fn orbits(&self) -> &[SimpleOrbit] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Disjoint union; labels of `other` must not collide with ours.
    pub fn union(&self, other: &OrbitSet) -> Result<OrbitSet> {
        OrbitSet::new(self.orbits.iter().chain(&other.orbits).cloned().collect())
    }

    /// Actions of all iterates up to the cutoff, sorted, without repetition.
    pub fn spectrum(&self, cutoff: &Action) -> Vec<Action> {
        let mut out: Vec<Action> = self
            .orbits
            .iter()
            .flat_map(|o| o.iterates_up_to(cutoff).map(move |d| o.iterate_action(d)))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// `exp Σ_γ Σ_d (−1)^{ε(γ^d)}/d · t^{d·A(γ)}`.
pub fn zeta_exp_form(set: &OrbitSet, cutoff: &Action) -> Result<NovikovSeries> {
    let terms = set.orbits.iter().flat_map(|o| {
        o.iterates_up_to(cutoff).map(move |d| {
            let c = Rational::new(iterate_parity(o, d).sign().into(), d.into());
            (o.iterate_action(d), c)
        })
    });
    NovikovSeries::from_terms(terms, cutoff.clone()).exp()
}

/// Product over simple orbits of `(1 − (−1)^{ε₁+ε₂} t^A)^{−(−1)^{ε₂}}`.
pub fn zeta_product_form(set: &OrbitSet, cutoff: &Action) -> Result<NovikovSeries> {
    let mut acc = NovikovSeries::one(cutoff.clone());
    for o in &set.orbits {
        if o.action > *cutoff {
            continue;
        }
        acc = acc.mul(&product_factor(o, cutoff)?);
    }
    Ok(acc)
}

/// The factor contributed by one simple orbit to [`zeta_product_form`].
pub fn product_factor(orbit: &SimpleOrbit, cutoff: &Action) -> Result<NovikovSeries> {
    let sigma = (orbit.eps1 + orbit.eps2).sign();
    let base = NovikovSeries::from_terms(
        [
            (Action::zero(), Rational::one()),
            (orbit.action.clone(), int(-sigma)),
        ],
        cutoff.clone(),
    );
    base.pow(-orbit.eps2.sign())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchPair {
    pub orbit: SimpleOrbit,
    pub multiplicity: u64,
}

/// A finite set of (orbit, multiplicity) pairs, hyperbolic orbits with multiplicity one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchGenerator {
    /// Sorted by label.
    pub pairs: Vec<EchPair>,
    /// Parity of the number of positive hyperbolic orbits.
    pub grading: Parity,
    pub total_action: Action,
}

impl EchGenerator {
    fn from_pairs(mut pairs: Vec<EchPair>) -> Self {
        pairs.sort_by(|a, b| a.orbit.label.cmp(&b.orbit.label));
        let positive_hyperbolic = pairs
            .iter()
            .filter(|p| p.orbit.type_3d() == Some(OrbitType3D::PositiveHyperbolic))
            .count();
        let grading = if positive_hyperbolic % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        };
        let total_action = pairs.iter().fold(Action::zero(), |acc, p| {
            acc + p.orbit.iterate_action(p.multiplicity)
        });
        EchGenerator {
            pairs,
            grading,
            total_action,
        }
    }

    fn sort_key(&self) -> (&Action, Vec<&str>, Vec<u64>) {
        (
            &self.total_action,
            self.pairs.iter().map(|p| p.orbit.label.as_str()).collect(),
            self.pairs.iter().map(|p| p.multiplicity).collect(),
        )
    }
}

impl fmt::Display for EchGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", p.orbit.label, p.multiplicity)?;
        }
        f.write_str("}")
    }
}

fn require_3d(set: &OrbitSet) -> Result<()> {
    match set.orbits.iter().find(|o| o.type_3d().is_none()) {
        Some(o) => Err(Error::NotThreeDimensional {
            label: o.label.clone(),
        }),
        None => Ok(()),
    }
}

/// All ECH generators of total action at most `cutoff`, ordered by
/// (total action, labels, multiplicities).
pub fn ech_generators(set: &OrbitSet, cutoff: &Action) -> Result<Vec<EchGenerator>> {
    require_3d(set)?;
    let mut orbits: Vec<&SimpleOrbit> = set.orbits.iter().filter(|o| o.action <= *cutoff).collect();
    orbits.sort_by(|a, b| a.action.cmp(&b.action).then_with(|| a.label.cmp(&b.label)));

    let mut out = Vec::new();
    let mut chosen = Vec::new();
    ech_search(&orbits, cutoff, Action::zero(), &mut chosen, &mut out);
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

fn ech_search(
    orbits: &[&SimpleOrbit],
    cutoff: &Action,
    total: Action,
    chosen: &mut Vec<EchPair>,
    out: &mut Vec<EchGenerator>,
) {
    let Some((first, rest)) = orbits.split_first() else {
        out.push(EchGenerator::from_pairs(chosen.clone()));
        return;
    };
    ech_search(rest, cutoff, total.clone(), chosen, out);
    let room = cutoff - &total;
    let max_mult = if first.is_hyperbolic() {
        room.multiples_below(&first.action).min(1)
    } else {
        room.multiples_below(&first.action)
    };
    for m in 1..=max_mult {
        chosen.push(EchPair {
            orbit: (*first).clone(),
            multiplicity: m,
        });
        ech_search(rest, cutoff, &total + &first.iterate_action(m), chosen, out);
        chosen.pop();
    }
}

/// `Σ_α (−1)^{|α|} t^{A(α)}` over ECH generators.
pub fn zeta_ech_form(set: &OrbitSet, cutoff: &Action) -> Result<NovikovSeries> {
    let gens = ech_generators(set, cutoff)?;
    Ok(NovikovSeries::from_terms(
        gens.into_iter()
            .map(|g| (g.total_action, int(g.grading.sign()))),
        cutoff.clone(),
    ))
}

/// Signed count of good orbits of action exactly `at`.
pub fn good_orbit_count(set: &OrbitSet, at: &Action) -> i64 {
    set.orbits
        .iter()
        .filter_map(|o| at.as_multiple_of(&o.action).map(|d| (o, d)))
        .filter(|&(o, d)| is_good(o, d))
        .map(|(o, d)| iterate_parity(o, d).sign())
        .sum()
}

/// `Σ_{good γ^d} (−1)^{ε(γ^d)} t^{d·A(γ)}`.
pub fn zeta_ch(set: &OrbitSet, cutoff: &Action) -> Result<NovikovSeries> {
    let terms = set.orbits.iter().flat_map(|o| {
        o.iterates_up_to(cutoff)
            .filter(move |&d| is_good(o, d))
            .map(move |d| (o.iterate_action(d), int(iterate_parity(o, d).sign())))
    });
    Ok(NovikovSeries::from_terms(terms, cutoff.clone()))
}
