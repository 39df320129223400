//! Seeded random inputs for sweeps, property checks and benchmarks.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::domains::ToricDomain;
use crate::novikov::NovikovSeries;
use crate::orbits::{OrbitSet, OrbitType3D, Parity, SimpleOrbit};
use crate::persistence::{FilteredComplex, Generator};
use crate::rational::{int, Action, Rational};

pub use rand_chacha::ChaCha8Rng as SampleRng;

pub fn rng(seed: u64) -> SampleRng {
    use rand::SeedableRng;
    SampleRng::seed_from_u64(seed)
}

/// Uniform `p/q` with `1 <= q <= max_den` and `lo <= p/q <= hi`.
pub fn rational_in<R: Rng>(rng: &mut R, max_den: i64, lo: &Rational, hi: &Rational) -> Rational {
    loop {
        let q = rng.gen_range(1..=max_den);
        let qr = Rational::from_integer(q.into());
        let p_lo = (lo * &qr).ceil().to_integer();
        let p_hi = (hi * &qr).floor().to_integer();
        if p_lo > p_hi {
            continue;
        }
        let p_lo: i64 = p_lo.try_into().expect("small bound");
        let p_hi: i64 = p_hi.try_into().expect("small bound");
        return Rational::new(rng.gen_range(p_lo..=p_hi).into(), q.into());
    }
}

pub fn small_nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrbitSetParams {
    pub max_orbits: usize,
    pub max_den: i64,
    pub min_action: Rational,
    pub max_action: Rational,
    /// Restrict to the three 3-dimensional types (no parity pair (1,0)).
    pub three_dimensional: bool,
}

impl Default for OrbitSetParams {
    fn default() -> Self {
        OrbitSetParams {
            max_orbits: 8,
            max_den: 12,
            min_action: int(1),
            max_action: int(6),
            three_dimensional: false,
        }
    }
}

pub fn orbit_set<R: Rng>(rng: &mut R, params: &OrbitSetParams) -> OrbitSet {
    let n = rng.gen_range(0..=params.max_orbits);
    let orbits = (0..n)
        .map(|i| {
            let action = Action::new(rational_in(
                rng,
                params.max_den,
                &params.min_action,
                &params.max_action,
            ));
            let (eps1, eps2) = if params.three_dimensional {
                let kinds = [
                    OrbitType3D::Elliptic,
                    OrbitType3D::PositiveHyperbolic,
                    OrbitType3D::NegativeHyperbolic,
                ];
                kinds.choose(rng).expect("nonempty").parities()
            } else {
                (parity(rng), parity(rng))
            };
            SimpleOrbit::new(format!("g{i}"), action, eps1, eps2).expect("positive action")
        })
        .collect();
    OrbitSet::new(orbits).expect("distinct labels")
}

pub fn parity<R: Rng>(rng: &mut R) -> Parity {
    if rng.gen_bool(0.5) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

#[derive(Debug, Clone)]
pub struct SeriesParams {
    pub max_terms: usize,
    pub max_den: i64,
    pub cutoff: Action,
    /// Smallest allowed exponent; terms are drawn from `[min_exponent, cutoff]`.
    pub min_exponent: Rational,
    pub coefficient_bound: i64,
}

impl SeriesParams {
    pub fn positive(cutoff: Action) -> Self {
        SeriesParams {
            max_terms: 5,
            max_den: 6,
            min_exponent: Rational::new(1.into(), 6.into()),
            cutoff,
            coefficient_bound: 3,
        }
    }
}

pub fn series<R: Rng>(rng: &mut R, params: &SeriesParams) -> NovikovSeries {
    let n = rng.gen_range(0..=params.max_terms);
    let terms: Vec<(Action, Rational)> = (0..n)
        .map(|_| {
            let e = rational_in(
                rng,
                params.max_den,
                &params.min_exponent,
                params.cutoff.value(),
            );
            let c = Rational::new(
                small_nonzero(rng, params.coefficient_bound).into(),
                rng.gen_range(1..=3i64).into(),
            );
            (Action::new(e), c)
        })
        .collect();
    NovikovSeries::from_terms(terms, params.cutoff.clone())
}

/// `c + (positively supported terms)` with `c` a nonzero rational.
pub fn unit<R: Rng>(rng: &mut R, params: &SeriesParams) -> NovikovSeries {
    let c = Rational::new(
        small_nonzero(rng, params.coefficient_bound).into(),
        rng.gen_range(1..=3i64).into(),
    );
    let tail = series(rng, params);
    NovikovSeries::constant(c, params.cutoff.clone()).add(&tail)
}

/// `1 + (positively supported terms)`.
pub fn one_plus<R: Rng>(rng: &mut R, params: &SeriesParams) -> NovikovSeries {
    NovikovSeries::one(params.cutoff.clone()).add(&series(rng, params))
}

pub fn toric_domain<R: Rng>(
    rng: &mut R,
    max_den: i64,
    lo: &Rational,
    hi: &Rational,
) -> ToricDomain {
    let a = Action::new(rational_in(rng, max_den, lo, hi));
    let b = Action::new(rational_in(rng, max_den, lo, hi));
    ToricDomain::new(a, b).expect("positive intercepts")
}

/// A random valid filtered complex with at most `max_generators` generators.
///
/// Starts from a normal form (generators paired by `∂x = c·y` with
/// `F(x) > F(y)` and opposite parity, the rest closed) and then applies
/// random elementary changes of basis `b_i ↦ b_i + λ·b_j` with `b_j` of the
/// same parity and no higher level. Such changes preserve the filtration,
/// so the conjugated differential stays valid while losing its normal form.
pub fn filtered_complex<R: Rng>(rng: &mut R, max_generators: usize) -> FilteredComplex {
    let n = rng.gen_range(0..=max_generators);
    let generators: Vec<Generator> = (0..n)
        .map(|i| {
            // Levels on a coarse grid so that ties occur.
            let level = Rational::new(rng.gen_range(0..=12i64).into(), 2.into());
            Generator::new(format!("c{i}"), parity(rng), Action::new(level))
        })
        .collect();

    let mut d = vec![vec![Rational::zero(); n]; n];
    let mut used = vec![false; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for &x in &order {
        if used[x] || rng.gen_bool(0.25) {
            continue;
        }
        let candidates: Vec<usize> = (0..n)
            .filter(|&y| {
                !used[y]
                    && y != x
                    && generators[y].eps != generators[x].eps
                    && generators[y].filtration < generators[x].filtration
            })
            .collect();
        if let Some(&y) = candidates.choose(rng) {
            used[x] = true;
            used[y] = true;
            d[y][x] = int(small_nonzero(rng, 3));
        }
    }

    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let options: Vec<usize> = (0..n)
            .filter(|&j| {
                j != i
                    && generators[j].eps == generators[i].eps
                    && generators[j].filtration <= generators[i].filtration
            })
            .collect();
        let Some(&j) = options.choose(rng) else {
            continue;
        };
        let lambda = int(small_nonzero(rng, 2));
        // D ← P⁻¹ D P with P = I + λ E_{ji}: column i += λ·column j, then row j −= λ·row i.
        for row in d.iter_mut() {
            let add = &lambda * &row[j];
            row[i] += add;
        }
        let row_i = d[i].clone();
        for (k, v) in row_i.iter().enumerate() {
            d[j][k] -= &lambda * v;
        }
    }

    let entries: Vec<(usize, usize, Rational)> = (0..n)
        .flat_map(|to| (0..n).map(move |from| (from, to)))
        .filter(|&(from, to)| !d[to][from].is_zero())
        .map(|(from, to)| (from, to, d[to][from].clone()))
        .collect();
    FilteredComplex::new(generators, &entries).expect("distinct labels")
}

/// A random positive rational in `[lo, hi]` avoiding multiples of the given units.
pub fn off_spectrum<R: Rng>(
    rng: &mut R,
    units: &[&Action],
    lo: &Rational,
    hi: &Rational,
) -> Action {
    loop {
        let t = Action::new(rational_in(rng, 24, lo, hi));
        if t.is_positive() && units.iter().all(|u| t.as_multiple_of(u).is_none()) {
            return t;
        }
    }
}
