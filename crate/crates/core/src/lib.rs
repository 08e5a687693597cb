//! Exact verification toolkit for Liouvillian first integrals of rational
//! three-dimensional vector fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`rat`], [`poly`], [`ratfunc`], [`parser`]: exact rational arithmetic,
//!   sparse multivariate polynomials in x, y, z, reduced rational functions
//!   and an expression parser/printer.
//! - [`unipoly`], [`factor`], [`partfrac`]: dense univariate machinery,
//!   factorisation over the rationals and partial fractions.
//! - [`cyclo`]: exact cyclotomic fields Q(zeta_m).
//! - [`radical`]: radical field extensions K(t) with t^m = g, their
//!   derivation, Galois conjugation, averaging and cyclic descent.
//! - [`forms`]: differential 1-/2-/3-forms over pluggable coefficient
//!   fields, wedge products, exterior derivative and the integrability
//!   checks.
//! - [`families`]: the Schwarz-type potentials q(x), the associated
//!   3D systems and the explicit dihedral example bundle.
//! - [`series`], [`verify`], [`conservation`]: exact Taylor-series
//!   solutions of y'' + q y = 0, series-level verification of the family
//!   identities and a floating-point conservation cross-check.
//! - [`groups`]: finite subgroups of SL(2, C) with exact cyclotomic
//!   entries and the structural queries used by the classification.
//! - [`analysis`]: indicial equations, nonexistence certificates for
//!   rational solutions of xi'' + q xi = 1, and the logarithmic-derivative
//!   decision procedure.

pub mod analysis;
pub mod conservation;
pub mod cyclo;
pub mod factor;
pub mod families;
pub mod forms;
pub mod groups;
pub mod parser;
pub mod partfrac;
pub mod poly;
pub mod radical;
pub mod rat;
pub mod ratfunc;
pub mod report;
pub mod series;
pub mod unipoly;
pub mod verify;

pub use poly::{MultiPolynomial, Scalar, Var};
pub use rat::Rat;
pub use ratfunc::{RatFn, RationalFunction};
pub use report::VerificationReport;
