//! Exact integer toolkit for affine monoids.
//!
//! An affine monoid is a finitely generated submonoid of a lattice `Z^l`.
//! For sharp saturated monoids this crate computes the prime spectrum, the
//! calculus of fractional and divisorial ideals, the divisor class group,
//! the canonical ideal generated by the relative interior, the Gorenstein
//! criterion and the normal form of two-dimensional monoids. Every closed
//! form is backed by a brute-force [`oracle`] that works on bounded boxes.
//!
//! All arithmetic is exact. Matrix normal forms run on [`num_bigint::BigInt`];
//! monoid elements are `i64` vectors, converted with overflow checks at the
//! boundary to the [`lattice`] module.

pub mod canonical;
pub mod cone;
pub mod divisor;
mod error;
pub mod exec;
pub mod ideal;
pub mod lattice;
pub mod monoid;
pub mod oracle;
pub mod polytope;
pub mod vector;

pub use crate::canonical::{
    canonical_module_generators, gorenstein, relint_ideal, two_dim_sweep, two_dim_type,
    CanonicalIdeal, TwoDimType,
};
pub use crate::cone::{Cone, Face};
pub use crate::divisor::{
    class_group, class_of, div_of_element, divisor_of_ideal, is_principal_prime, ClassElement,
    ClassGroupData, Divisor,
};
pub use crate::error::{Error, Result};
pub use crate::exec::Strategy;
pub use crate::ideal::{
    divisorial_generators, valuations, IdealFile, MonoidIdeal, ValuationVector,
};
pub use crate::lattice::{FinAbGroup, IntMatrix};
pub use crate::monoid::{standard_monoid, AffineMonoid, MonoidFile, PrimeIdeal, StandardMonoid};
pub use crate::oracle::Report;
