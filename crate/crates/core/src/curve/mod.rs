//! Artin-Schreier curves y^p − y = f(x): Möbius actions, ℘-reduction,
//! genus and p-rank, strata, and exceptional curves.

mod exceptional;
mod mobius;
mod reduce;

pub use exceptional::{classify_exceptional, ExceptionalClass};
pub(crate) use exceptional::type_a_model;
pub use mobius::{mobius_apply, pole_image, MobiusTransform};
pub use reduce::as_reduce;

use crate::error::{Error, Result};
use crate::ff::{ExtensionMap, Field, FieldElement};
use crate::polyrat::{pole_profile, PoleProfile, Polynomial, RationalFunction};
use crate::standard::IsomorphismRecord;
use crate::strata::{descriptor_for, StratumDescriptor};
use std::fmt;

/// A curve y^p − y = f(x) with f stored ℘-reduced and without a constant
/// term in its polynomial part.
#[derive(Clone)]
pub struct ArtinSchreierCurve {
    p: u32,
    f: RationalFunction,
    // f_input = f + h^p − h + removed_constant
    witness_h: RationalFunction,
    removed_constant: FieldElement,
    orders: Vec<usize>,
}

/// Strips the constant term of the polynomial part of f.
pub(crate) fn split_constant(f: &RationalFunction) -> Result<(RationalFunction, FieldElement)> {
    let (q, _) = f.num().divrem(f.den())?;
    let c = q.coeff(0);
    if c.is_zero() {
        return Ok((f.clone(), c));
    }
    Ok((f.checked_sub(&RationalFunction::constant(&c))?, c))
}

impl ArtinSchreierCurve {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> &RationalFunction {
        &self.f
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    /// The h with f_input = f + (h^p − h) + constant.
    pub fn reduction_witness(&self) -> &RationalFunction {
        &self.witness_h
    }

    /// The constant removed from the polynomial part.
    pub fn removed_constant(&self) -> &FieldElement {
        &self.removed_constant
    }

    /// γ with γ^p − γ equal to the removed constant (possibly in an
    /// extension), so that y ↦ y + h + γ realizes the reduction.
    pub fn constant_shift(&self) -> (FieldElement, ExtensionMap) {
        self.removed_constant.solve_wp()
    }

    /// Pole orders d_i over the algebraic closure, descending.
    pub fn pole_orders(&self) -> &[usize] {
        &self.orders
    }

    /// Poles with their locations, in the splitting field of the denominator.
    pub fn profile(&self) -> Result<PoleProfile> {
        pole_profile(&self.f)
    }

    /// D = −2 + Σ (d_i + 1).
    pub fn big_d(&self) -> u64 {
        self.orders.iter().map(|&d| d as u64 + 1).sum::<u64>() - 2
    }

    pub fn genus(&self) -> u64 {
        (self.p as u64 - 1) / 2 * self.big_d()
    }

    pub fn p_rank(&self) -> u64 {
        (self.orders.len() as u64 - 1) * (self.p as u64 - 1)
    }

    /// The partition E = {d_i + 1}, descending.
    pub fn partition(&self) -> Vec<u64> {
        self.orders.iter().map(|&d| d as u64 + 1).collect()
    }

    pub fn stratum(&self) -> Result<StratumDescriptor> {
        descriptor_for(self.p, &self.partition())
    }

    /// The same curve over a larger field.
    pub fn embed(&self, e: &ExtensionMap) -> Result<ArtinSchreierCurve> {
        Ok(ArtinSchreierCurve {
            p: self.p,
            f: self.f.embed(e)?,
            witness_h: self.witness_h.embed(e)?,
            removed_constant: e.embed(&self.removed_constant)?,
            orders: self.orders.clone(),
        })
    }

    /// Serialized as "p=<p>; field=<modulus>; f=<text>".
    pub fn serialize(&self) -> String {
        let field = if self.field().is_prime_field() {
            String::new()
        } else {
            self.field().modulus_string()
        };
        format!("p={}; field={}; f={}", self.p, field, self.f)
    }
}

impl PartialEq for ArtinSchreierCurve {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f
    }
}

impl Eq for ArtinSchreierCurve {}

impl fmt::Display for ArtinSchreierCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^{} - y = {}", self.p, self.f)
    }
}

impl fmt::Debug for ArtinSchreierCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Builds the curve y^p − y = f: reduces f, removes the constant term and
/// records the pole orders.
pub fn make_curve(p: u32, f: &RationalFunction) -> Result<ArtinSchreierCurve> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if f.is_zero() {
        return Err(Error::TrivialCover);
    }
    let (reduced, h) = as_reduce(p, f)?;
    let (f, c) = split_constant(&reduced)?;
    let orders = f.pole_orders()?;
    if orders.is_empty() {
        return Err(Error::TrivialCover);
    }
    Ok(ArtinSchreierCurve {
        p,
        f,
        witness_h: h,
        removed_constant: c,
        orders,
    })
}

/// Convenience: the curve for a polynomial right-hand side.
pub fn make_curve_poly(p: u32, f: &Polynomial) -> Result<ArtinSchreierCurve> {
    make_curve(p, &RationalFunction::from_poly(f.clone()))
}

/// Applies (M, λ, h): the new right-hand side is λ^{-1}(f∘M − (h^p − h)),
/// re-reduced. The curve is moved to the record's field when its own field
/// is the prime field or equal to it.
pub fn apply_isomorphism(rec: &IsomorphismRecord, c: &ArtinSchreierCurve) -> Result<ArtinSchreierCurve> {
    let field = rec.field();
    let c = if c.field() == field {
        c.clone()
    } else if c.field().is_prime_field() && c.field().characteristic() == field.characteristic() {
        c.embed(&ExtensionMap::into_field(c.field(), field))?
    } else {
        return Err(Error::FieldMismatch(c.field().descriptor(), field.descriptor()));
    };
    let g = rec.transform(c.f())?;
    make_curve(c.p, &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use crate::polyrat::parse_rational;

    #[test]
    fn genus_and_rank() {
        let f3 = make_field(3, 1, None).unwrap();
        let c = make_curve(3, &parse_rational("x^4+x^2", &f3).unwrap()).unwrap();
        assert_eq!((c.genus(), c.p_rank(), c.partition()), (3, 0, vec![5]));
        let f5 = make_field(5, 1, None).unwrap();
        let c = make_curve(5, &parse_rational("x+1/x", &f5).unwrap()).unwrap();
        assert_eq!((c.genus(), c.p_rank(), c.partition()), (4, 4, vec![2, 2]));
        let f7 = make_field(7, 1, None).unwrap();
        let c = make_curve(7, &parse_rational("x^2", &f7).unwrap()).unwrap();
        assert_eq!((c.genus(), c.p_rank(), c.partition()), (3, 0, vec![3]));
    }

    #[test]
    fn constant_is_removed() {
        let f3 = make_field(3, 1, None).unwrap();
        let c = make_curve(3, &parse_rational("x^4+x^3+1", &f3).unwrap()).unwrap();
        assert_eq!(c.f(), &parse_rational("x^4+x^3", &f3).unwrap());
        assert_eq!(c.removed_constant(), &f3.one());
        let (g, e) = c.constant_shift();
        assert_eq!(&g.pow(3) - &g, e.target().one());
    }

    #[test]
    fn scaling_example() {
        let f9 = make_field(3, 2, None).unwrap();
        let c = make_curve(3, &parse_rational("x^4-x^2", &f9).unwrap()).unwrap();
        let m = MobiusTransform::scaling(&f9.generator()).unwrap();
        let rec = IsomorphismRecord::new(m, f9.one(), RationalFunction::zero(&f9)).unwrap();
        let d = apply_isomorphism(&rec, &c).unwrap();
        assert_eq!(d.f(), &parse_rational("x^4+x^2", &f9).unwrap());
        assert_eq!(d.genus(), c.genus());
    }
}
