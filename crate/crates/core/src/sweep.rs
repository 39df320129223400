//! Identity checks over batches of inputs.
//!
//! Each `check_*` function evaluates one identity on one input and
//! reports whether both sides agree; the `*_batch` wrappers run a check
//! over a slice through [`crate::parallel::map`].

use crate::error::Result;
use crate::novikov::NovikovSeries;
use crate::orbits::{zeta_ech_form, zeta_exp_form, zeta_product_form, OrbitSet};
use crate::parallel;
use crate::persistence::{
    barcode_decompose, euler_jump, generator_jump, homology_dims, sample_levels, zeta_barcode,
    zeta_persistence, FilteredComplex,
};
use crate::rational::Action;
use crate::theta::{mobius_divisor_sum, zeta_via_theta, MobiusCache};

/// Outcome of comparing two computations of the same series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub left: NovikovSeries,
    pub right: NovikovSeries,
}

impl Comparison {
    pub fn agree(&self) -> bool {
        self.left == self.right
    }

    /// Smallest exponent where the two sides differ.
    pub fn first_difference(&self) -> Option<Action> {
        let diff = self.left.sub(&self.right);
        diff.min_exponent().cloned()
    }
}

/// Exp form against product form; the product form must also be an
/// integer series with constant term one.
pub fn check_product_formula(set: &OrbitSet, cutoff: &Action) -> Result<bool> {
    let exp = zeta_exp_form(set, cutoff)?;
    let product = zeta_product_form(set, cutoff)?;
    Ok(exp == product
        && product.has_integer_coefficients()
        && product.constant_term() == num_traits::One::one())
}

pub fn check_ech_expansion(set: &OrbitSet, cutoff: &Action) -> Result<bool> {
    Ok(zeta_ech_form(set, cutoff)? == zeta_product_form(set, cutoff)?)
}

pub fn check_theta_bridge(set: &OrbitSet, cutoff: &Action) -> Result<bool> {
    Ok(zeta_via_theta(set, cutoff)? == zeta_product_form(set, cutoff)?)
}

/// Barcode against the rank oracle at every critical level and midpoint,
/// jump zeta against barcode zeta, and jumps against signed generator counts.
pub fn check_normal_form(c: &FilteredComplex, cutoff: &Action) -> Result<bool> {
    let barcode = barcode_decompose(c)?;
    let levels = c.levels();
    let dims_agree = sample_levels(&levels)
        .iter()
        .all(|l| barcode.dims_at(l) == homology_dims(c, l));
    let zeta_agree = zeta_persistence(c, cutoff)? == zeta_barcode(&barcode, cutoff);
    let jumps_agree = sample_levels(&levels)
        .iter()
        .all(|l| euler_jump(&barcode, l) == generator_jump(c, l));
    Ok(dims_agree && zeta_agree && jumps_agree)
}

pub fn product_formula_batch(sets: &[OrbitSet], cutoff: &Action) -> Vec<Result<bool>> {
    parallel::map(sets, |s| check_product_formula(s, cutoff))
}

pub fn ech_expansion_batch(sets: &[OrbitSet], cutoff: &Action) -> Vec<Result<bool>> {
    parallel::map(sets, |s| check_ech_expansion(s, cutoff))
}

pub fn theta_bridge_batch(sets: &[OrbitSet], cutoff: &Action) -> Vec<Result<bool>> {
    parallel::map(sets, |s| check_theta_bridge(s, cutoff))
}

pub fn normal_form_batch(complexes: &[FilteredComplex], cutoff: &Action) -> Vec<Result<bool>> {
    parallel::map(complexes, |c| check_normal_form(c, cutoff))
}

/// Values `k <= limit` at which `Σ_{n|k} μ(n)` differs from `[k = 1]`.
pub fn mobius_identity_failures(limit: u64) -> Vec<u64> {
    const CHUNK: u64 = 512;
    let starts: Vec<u64> = (1..=limit).step_by(CHUNK as usize).collect();
    parallel::map(&starts, |&start| {
        let mut cache = MobiusCache::new();
        (start..=(start + CHUNK - 1).min(limit))
            .filter(|&k| mobius_divisor_sum(k, &mut cache) != i64::from(k == 1))
            .collect::<Vec<u64>>()
    })
    .into_iter()
    .flatten()
    .collect()
}
