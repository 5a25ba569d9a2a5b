//! Exact classification of Artin-Schreier curves y^p − y = f(x) over finite
//! fields of odd characteristic.
//!
//! The crate is organised bottom-up: [`ff`] (finite fields), [`polyrat`]
//! (polynomials and rational functions), [`curve`] (curves, Möbius actions,
//! reduction), [`standard`] (standard forms), [`strata`] (moduli strata),
//! [`invariants`] (reconstructing invariants) and [`iso`] (isomorphism
//! groups, orbits and the census).

pub mod error;
pub mod ff;
pub mod polyrat;
pub mod standard;
pub mod strata;
pub mod curve;
pub mod invariants;
pub mod iso;

pub use error::{Error, Result};
