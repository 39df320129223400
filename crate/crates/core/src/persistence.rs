//! Z/2-graded persistence modules presented by filtered chain complexes.
//!
//! A [`FilteredComplex`] has a finite basis, each generator carrying a
//! parity and a filtration level, and a rational differential that flips
//! parity and strictly lowers the level. Its sublevel homology is the
//! persistence module; [`barcode_decompose`] computes the barcode by
//! column reduction, and [`homology_dims`] recomputes sublevel homology
//! directly by rank-nullity.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::novikov::NovikovSeries;
use crate::orbits::Parity;
use crate::rational::{format_rational, int, Action, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub eps: Parity,
    pub filtration: Action,
}

impl Generator {
    pub fn new(label: impl Into<String>, eps: Parity, filtration: Action) -> Self {
        Generator {
            label: label.into(),
            eps,
            filtration,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    generators: Vec<Generator>,
    /// `differential[y][x] = <∂x, y>`
    differential: Vec<Vec<Rational>>,
}

impl FilteredComplex {
    /// Builds a complex from `(from, to, coeff)` triples meaning
    /// `<∂ from, to> += coeff`. Labels must be distinct. The result is not
    /// validated; see [`validate_complex`].
    pub fn new(generators: Vec<Generator>, entries: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.label.as_str()) {
                return Err(Error::DuplicateLabel(g.label.clone()));
            }
        }
        let n = generators.len();
        let mut differential = vec![vec![Rational::zero(); n]; n];
        for (from, to, coeff) in entries {
            if *from >= n || *to >= n {
                return Err(Error::parse(
                    "differential",
                    format!("entry ({from}, {to}) out of range for {n} generators"),
                ));
            }
            differential[*to][*from] += coeff;
        }
        Ok(FilteredComplex {
            generators,
            differential,
        })
    }

    /// Same as [`FilteredComplex::new`] with entries addressed by label.
    pub fn from_labels(
        generators: Vec<Generator>,
        entries: &[(&str, &str, Rational)],
    ) -> Result<Self> {
        let index: HashMap<&str, usize> = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.label.as_str(), i))
            .collect();
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let mut resolved = Vec::with_capacity(entries.len());
        for (from, to, c) in entries {
            resolved.push((lookup(from)?, lookup(to)?, c.clone()));
        }
        Self::new(generators, &resolved)
    }

    pub fn empty() -> Self {
        FilteredComplex {
            generators: Vec::new(),
            differential: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `<∂ from, to>`
    pub fn entry(&self, from: usize, to: usize) -> &Rational {
        &self.differential[to][from]
    }

    /// Nonzero entries as `(from, to, coeff)`, row-major by `to`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.differential.iter().enumerate().flat_map(|(to, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(from, c)| (from, to, c))
        })
    }

    /// Distinct filtration levels, ascending.
    pub fn levels(&self) -> Vec<Action> {
        let set: BTreeSet<&Action> = self.generators.iter().map(|g| &g.filtration).collect();
        set.into_iter().cloned().collect()
    }

    /// Adds `delta` to every filtration level.
    pub fn shifted(&self, delta: &Action) -> Self {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.filtration = &g.filtration + delta;
        }
        out
    }
}

/// Checks the grading and strict filtration condition on every entry,
/// then `∂² = 0`.
#[allow(clippy::needless_range_loop)]
pub fn validate_complex(c: &FilteredComplex) -> Result<()> {
    let gens = &c.generators;
    for (from, to, _) in c.entries() {
        let (x, y) = (&gens[from], &gens[to]);
        if x.eps == y.eps {
            return Err(Error::GradingViolation {
                from: x.label.clone(),
                to: y.label.clone(),
            });
        }
        if x.filtration <= y.filtration {
            return Err(Error::FiltrationViolation {
                from: x.label.clone(),
                to: y.label.clone(),
                from_level: x.filtration.to_string(),
                to_level: y.filtration.to_string(),
            });
        }
    }
    let n = gens.len();
    let d = &c.differential;
    for z in 0..n {
        for x in 0..n {
            let mut v = Rational::zero();
            for y in 0..n {
                if !d[y][x].is_zero() && !d[z][y].is_zero() {
                    v += &d[z][y] * &d[y][x];
                }
            }
            if !v.is_zero() {
                return Err(Error::NotSquareZero {
                    from: gens[x].label.clone(),
                    to: gens[z].label.clone(),
                    value: format_rational(&v),
                });
            }
        }
    }
    Ok(())
}

/// Rank of a dense rational matrix by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub(crate) fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].recip();
        for j in col..ncols {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in col..ncols {
                let delta = &factor * &rows[r][j];
                rows[i][j] -= delta;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// `(dim H_0, dim H_1)` of the subcomplex spanned by generators at level `<= level`.
pub fn homology_dims(c: &FilteredComplex, level: &Action) -> (usize, usize) {
    let present: Vec<usize> = (0..c.len())
        .filter(|&i| c.generators[i].filtration <= *level)
        .collect();
    let of_parity = |p: Parity| -> Vec<usize> {
        present
            .iter()
            .copied()
            .filter(|&i| c.generators[i].eps == p)
            .collect()
    };
    let even = of_parity(Parity::Even);
    let odd = of_parity(Parity::Odd);
    // Block of ∂ from `src` generators into `dst` generators.
    let block = |src: &[usize], dst: &[usize]| -> usize {
        if src.is_empty() || dst.is_empty() {
            return 0;
        }
        rank(
            dst.iter()
                .map(|&y| src.iter().map(|&x| c.differential[y][x].clone()).collect())
                .collect(),
        )
    };
    let rank_from_even = block(&even, &odd);
    let rank_from_odd = block(&odd, &even);
    (
        even.len() - rank_from_even - rank_from_odd,
        odd.len() - rank_from_odd - rank_from_even,
    )
}

/// Right end of a bar.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Death {
    Finite(Action),
    Infinite,
}

impl Death {
    pub fn is_after(&self, level: &Action) -> bool {
        match self {
            Death::Finite(d) => d > level,
            Death::Infinite => true,
        }
    }
}

impl fmt::Display for Death {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Death::Finite(a) => write!(f, "{a}"),
            Death::Infinite => f.write_str("inf"),
        }
    }
}

/// A graded interval `[birth, death)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bar {
    birth: Action,
    death: Death,
    eps: Parity,
}

impl Bar {
    pub fn new(birth: Action, death: Death, eps: Parity) -> Result<Self> {
        if let Death::Finite(d) = &death {
            if *d <= birth {
                return Err(Error::EmptyBar {
                    birth: birth.to_string(),
                    death: d.to_string(),
                });
            }
        }
        Ok(Bar { birth, death, eps })
    }

    pub fn finite(birth: Action, death: Action, eps: Parity) -> Result<Self> {
        Self::new(birth, Death::Finite(death), eps)
    }

    pub fn infinite(birth: Action, eps: Parity) -> Self {
        Bar {
            birth,
            death: Death::Infinite,
            eps,
        }
    }

    pub fn birth(&self) -> &Action {
        &self.birth
    }

    pub fn death(&self) -> &Death {
        &self.death
    }

    pub fn eps(&self) -> Parity {
        self.eps
    }

    pub fn contains(&self, level: &Action) -> bool {
        self.birth <= *level && self.death.is_after(level)
    }
}

impl Ord for Bar {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.birth, &self.death, self.eps).cmp(&(&other.birth, &other.death, other.eps))
    }
}

impl PartialOrd for Bar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}) eps={}", self.birth, self.death, self.eps)
    }
}

/// A finite multiset of bars, kept sorted by (birth, death, eps).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Barcode {
    bars: Vec<Bar>,
}

impl Barcode {
    pub fn new(mut bars: Vec<Bar>) -> Self {
        bars.sort();
        Barcode { bars }
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Graded dimensions `(even, odd)` of the module at `level`: the bars alive there.
    pub fn dims_at(&self, level: &Action) -> (usize, usize) {
        self.bars
            .iter()
            .filter(|b| b.contains(level))
            .fold((0, 0), |(e, o), b| match b.eps {
                Parity::Even => (e + 1, o),
                Parity::Odd => (e, o + 1),
            })
    }

    /// All births and finite deaths, ascending.
    pub fn endpoints(&self) -> Vec<Action> {
        let mut set = BTreeSet::new();
        for b in &self.bars {
            set.insert(b.birth.clone());
            if let Death::Finite(d) = &b.death {
                set.insert(d.clone());
            }
        }
        set.into_iter().collect()
    }
}

/// Barcode of the persistence module of a valid complex.
///
/// Generators are ordered by (filtration, input position) and the boundary
/// matrix is column-reduced left to right. A reduced column `x` with
/// lowest nonzero row `y` gives the bar `[F(y), F(x))` of parity `ε(y)`;
/// a zero column that is nobody's pivot gives `[F(z), ∞)`.
pub fn barcode_decompose(c: &FilteredComplex) -> Result<Barcode> {
    validate_complex(c)?;
    let n = c.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        c.generators[a]
            .filtration
            .cmp(&c.generators[b].filtration)
            .then(a.cmp(&b))
    });

    // Sparse columns in the sorted basis: row position -> coefficient.
    let mut columns: Vec<BTreeMap<usize, Rational>> = order
        .iter()
        .map(|&x| {
            order
                .iter()
                .enumerate()
                .filter(|(_, &y)| !c.differential[y][x].is_zero())
                .map(|(pos, &y)| (pos, c.differential[y][x].clone()))
                .collect()
        })
        .collect();

    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    for j in 0..n {
        while let Some((&low, low_coeff)) = columns[j].iter().next_back() {
            let Some(&k) = pivot_of.get(&low) else {
                pivot_of.insert(low, j);
                break;
            };
            let factor = low_coeff / &columns[k][&low];
            let (left, right) = columns.split_at_mut(j);
            let target = &mut right[0];
            for (row, v) in &left[k] {
                let entry = target.entry(*row).or_insert_with(Rational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    target.remove(row);
                }
            }
        }
    }

    let mut bars = Vec::with_capacity(n);
    for j in 0..n {
        if let Some((&low, _)) = columns[j].iter().next_back() {
            let y = &c.generators[order[low]];
            let x = &c.generators[order[j]];
            bars.push(Bar::finite(
                y.filtration.clone(),
                x.filtration.clone(),
                y.eps,
            )?);
        } else if !pivot_of.contains_key(&j) {
            let z = &c.generators[order[j]];
            bars.push(Bar::infinite(z.filtration.clone(), z.eps));
        }
    }
    Ok(Barcode::new(bars))
}

/// Change in graded Euler characteristic across `at`:
/// signed count of bars born there minus those dying there.
pub fn euler_jump(b: &Barcode, at: &Action) -> i64 {
    b.bars
        .iter()
        .map(|bar| {
            let born = i64::from(bar.birth == *at);
            let dies = i64::from(bar.death == Death::Finite(at.clone()));
            (born - dies) * bar.eps.sign()
        })
        .sum()
}

/// `Σ (−1)^ε (t^a − t^b)` over finite bars plus `Σ (−1)^ε t^a` over infinite ones.
pub fn zeta_barcode(b: &Barcode, cutoff: &Action) -> NovikovSeries {
    let terms = b.bars.iter().flat_map(|bar| {
        let s = bar.eps.sign();
        let birth = (bar.birth.clone(), int(s));
        let death = match &bar.death {
            Death::Finite(d) => Some((d.clone(), int(-s))),
            Death::Infinite => None,
        };
        std::iter::once(birth).chain(death)
    });
    NovikovSeries::from_terms(terms, cutoff.clone())
}

/// `Σ_L Δ_L t^L` over the jump levels of the decomposed module.
pub fn zeta_persistence(c: &FilteredComplex, cutoff: &Action) -> Result<NovikovSeries> {
    let barcode = barcode_decompose(c)?;
    let terms = barcode
        .endpoints()
        .into_iter()
        .filter(|level| level <= cutoff)
        .map(|level| {
            let jump = euler_jump(&barcode, &level);
            (level, int(jump))
        });
    Ok(NovikovSeries::from_terms(terms, cutoff.clone()))
}

/// `Σ (−1)^{ε(x)}` over generators sitting exactly at `level`.
pub fn generator_jump(c: &FilteredComplex, level: &Action) -> i64 {
    c.generators
        .iter()
        .filter(|g| g.filtration == *level)
        .map(|g| g.eps.sign())
        .sum()
}

/// Critical levels together with midpoints between consecutive ones and
/// one point on either side; the module is constant between critical levels.
pub fn sample_levels(levels: &[Action]) -> Vec<Action> {
    let mut out = Vec::with_capacity(2 * levels.len() + 1);
    let one = Action::new(Rational::one());
    match levels.first() {
        Some(first) => out.push(first - &one),
        None => return vec![Action::zero()],
    }
    for (i, l) in levels.iter().enumerate() {
        out.push(l.clone());
        let next = match levels.get(i + 1) {
            Some(next) => Action::new((l.value() + next.value()) / int(2)),
            None => l + &one,
        };
        out.push(next);
    }
    out
}
