//! Exact arithmetic substrate: rationals, ℚ-linear algebra, univariate
//! polynomials with real-root isolation, real algebraic numbers and small
//! towers of real number fields.

pub mod algebraic;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod upoly;

pub use algebraic::{formal_resultant, resultant, AlgebraicReal};
pub use field::{NumberField, Tower};
pub use matrix::{image_complement, kernel_basis, QMatrix};
pub use poly::{sturm_isolate, UniPoly};
pub use rational::{int, rat, Field, Interval, Rational, RealField, Ring, Q};
