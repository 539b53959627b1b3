//! Exact-arithmetic toolkit for Coxeter systems and their Davis complexes.
//!
//! Everything here is computed over the rationals (or certified rational
//! intervals for algebraic numbers); no floating point enters any result.
//! The crate is organized around six areas:
//!
//! * [`coxeter`]: Coxeter matrices and systems, ShortLex normal forms, balls,
//!   spherical subsets, minimal coset representatives.
//! * [`series`]: growth polynomials and growth series as exact rational
//!   functions, radius of convergence along rational rays, region membership.
//! * [`complexes`]: simplicial and regular CW complexes, barycentric
//!   subdivision, links/stars/joins, exact homology, order complexes.
//! * [`davis`]: the Davis chamber and its mirror structure, the basic
//!   construction, the coset cellulation with its weighted chain calculus,
//!   ruins, and Hecke idempotent shadows.
//! * [`certify`]: labeled graph automorphisms, star transitivity reports,
//!   vanishing certificates, and the manifold reduction pipeline.
//! * [`fixtures`]: built-in example systems and complexes. The `coxeter v1` /
//!   `simp v1` / `cw v1` text formats live with their owning types.

#![forbid(unsafe_code)]

pub mod certify;
pub mod complexes;
pub mod coxeter;
pub mod davis;
pub mod error;
pub mod fixtures;
pub mod hash;
pub mod poly;
pub mod roots;
pub mod series;

pub use error::{Error, Result};

/// Exact rational scalar used across the crate.
pub type Q = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn q(num: i64, den: i64) -> Q {
    use num_bigint::BigInt;
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for integers as rationals.
pub fn qi(num: i64) -> Q {
    use num_bigint::BigInt;
    Q::from(BigInt::from(num))
}
