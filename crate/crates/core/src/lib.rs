//! Exact dynamical zeta functions.
//!
//! The zeta function of a nondegenerate contact form packs the actions,
//! covering multiplicities and Lefschetz signs of its Reeb orbits into a
//! single element of the Novikov ring:
//!
//! ```text
//! ζ = exp Σ_γ (−1)^{ε(γ)} / d(γ) · t^{A(γ)}
//! ```
//!
//! This crate computes it with exact rational arithmetic, modulo a
//! user-chosen action cutoff, from several kinds of input:
//!
//! * [`orbits`]: simple Reeb orbits given by action and two parities, with
//!   the exponential, product and ECH-generator expansions;
//! * [`persistence`]: filtered chain complexes and barcodes, through the
//!   jumps of the graded Euler characteristic;
//! * [`theta`]: the Möbius-weighted transform from signed good-orbit
//!   counts to the zeta function;
//! * [`domains`]: closed forms for star-shaped toric and S¹-invariant
//!   domains, and the nonnegativity test that tells them apart.
//!
//! Series arithmetic lives in [`novikov`]; [`io`] holds the JSON and
//! report formats used by the command-line tool.
//!
//! ```
//! use zeta_core::orbits::{zeta_exp_form, zeta_product_form, OrbitSet, OrbitType3D, SimpleOrbit};
//! use zeta_core::Action;
//!
//! let orbits = OrbitSet::new(vec![
//!     SimpleOrbit::typed("e", Action::integer(1), OrbitType3D::Elliptic).unwrap(),
//!     SimpleOrbit::typed("h", Action::ratio(3, 2), OrbitType3D::PositiveHyperbolic).unwrap(),
//! ]).unwrap();
//! let cutoff = Action::integer(4);
//! assert_eq!(
//!     zeta_exp_form(&orbits, &cutoff).unwrap(),
//!     zeta_product_form(&orbits, &cutoff).unwrap(),
//! );
//! ```

pub mod domains;
pub mod error;
pub mod io;
pub mod novikov;
pub mod orbits;
pub mod parallel;
pub mod persistence;
pub mod rational;
pub mod sample;
pub mod sweep;
pub mod theta;

pub use error::{Error, ErrorKind, Result};
pub use novikov::NovikovSeries;
pub use rational::{Action, Rational};
