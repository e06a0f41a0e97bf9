//! Exact arithmetic on the Néron–Severi lattice of `X = E₁ × E₂`, where `E₁`
//! and `E₂` are isogenous elliptic curves without complex multiplication and
//! `d` is the minimal degree of an isogeny `E₁ → E₂`.
//!
//! Everything here is driven by the single integer `d`:
//!
//! - [`bqf`]: integral binary quadratic forms, Gauss reduction, bounded
//!   enumeration of coprime representations.
//! - [`surface`]: classes `a₁F₁ + a₂F₂ + a₃∇`, the intersection pairing,
//!   ampleness and the class ↔ matrix correspondence.
//! - [`curves`]: numerical classes of the elliptic curves `N_{a,b}`.
//! - [`seshadri`]: the minimal elliptic intersection number `ε*(L)`, the
//!   weakly-submaximal test and the `d ≥ 3` counterexample family.
//! - [`polarizations`]: principally reduced forms, reducibility, idoneal
//!   numbers and the list of `d` without irreducible principal polarizations.
//! - [`acceptance`]: the end-to-end verification checks shared by the test
//!   suite and the `verify` command of the CLI.
//!
//! All arithmetic is on [`num_bigint::BigInt`]; no floating point is used.

pub mod acceptance;
pub mod bqf;
pub mod curves;
mod error;
pub mod numtheory;
pub mod polarizations;
pub mod seshadri;
pub mod surface;

pub use bqf::{QuadForm, Reduction, UnimodularMap};
pub use curves::CurveClass;
pub use error::{Error, Result};
pub use polarizations::{PPClass, PolarizationType};
pub use seshadri::{EpsStar, SeshadriReport, SeshadriValue};
pub use surface::{NSClass, SurfaceContext};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
