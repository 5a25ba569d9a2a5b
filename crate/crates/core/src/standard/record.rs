use crate::curve::{mobius_apply, split_constant, MobiusTransform};
use crate::error::{Error, Result};
use crate::ff::{ExtensionMap, Field, FieldElement};
use crate::polyrat::RationalFunction;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

/// The isomorphism (x, y) ↦ (M(x), λy + h(x)) between Artin-Schreier curves.
///
/// It sends y^p − y = f to y^p − y = λ^{-1}(f∘M − (h^p − h)). The constant
/// term of the polynomial part of h is never stored: constant shifts of y
/// only move f by a constant, which curve construction strips anyway.
#[derive(Clone, PartialEq, Eq)]
pub struct IsomorphismRecord {
    m: MobiusTransform,
    lambda: FieldElement,
    h: RationalFunction,
}

impl IsomorphismRecord {
    pub fn new(m: MobiusTransform, lambda: FieldElement, h: RationalFunction) -> Result<Self> {
        let field = lambda.field().clone();
        field.check_same(m.field())?;
        field.check_same(h.field())?;
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        match lambda.prime_value() {
            Some(v) if v != 0 => {}
            _ => {
                return Err(Error::InvalidRecord(format!(
                    "lambda = {lambda} is not in the nonzero prime subfield"
                )))
            }
        }
        let (h, _) = split_constant(&h)?;
        Ok(IsomorphismRecord { m, lambda, h })
    }

    pub fn identity(field: &Field) -> Self {
        IsomorphismRecord {
            m: MobiusTransform::identity(field),
            lambda: field.one(),
            h: RationalFunction::zero(field),
        }
    }

    /// (M, 1, 0)
    pub fn mobius(m: MobiusTransform) -> Self {
        let field = m.field().clone();
        Self::new(m, field.one(), RationalFunction::zero(&field)).expect("λ = 1 is valid")
    }

    /// (id, 1, h)
    pub fn shift(h: RationalFunction) -> Result<Self> {
        let field = h.field().clone();
        Self::new(MobiusTransform::identity(&field), field.one(), h)
    }

    pub fn field(&self) -> &Field {
        self.lambda.field()
    }

    pub fn m(&self) -> &MobiusTransform {
        &self.m
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    pub fn h(&self) -> &RationalFunction {
        &self.h
    }

    /// λ^{-1}(f∘M − (h^p − h)), without any reduction.
    pub fn transform(&self, f: &RationalFunction) -> Result<RationalFunction> {
        self.field().check_same(f.field())?;
        let g = mobius_apply(&self.m, f)?.checked_sub(&self.h.wp())?;
        Ok(g.scale(&self.lambda.inv()?))
    }

    /// The record applying `self` first and then `next`:
    /// (M1·M2, λ1λ2, h1∘M2 + λ1·h2).
    pub fn then(&self, next: &IsomorphismRecord) -> Result<IsomorphismRecord> {
        self.field().check_same(next.field())?;
        let h = mobius_apply(&next.m, &self.h)?.checked_add(&next.h.scale(&self.lambda))?;
        Self::new(self.m.mul(&next.m), &self.lambda * &next.lambda, h)
    }

    /// (M^{-1}, λ^{-1}, −λ^{-1}·h∘M^{-1})
    pub fn inverse(&self) -> Result<IsomorphismRecord> {
        let mi = self.m.inverse();
        let li = self.lambda.inv()?;
        let h = mobius_apply(&mi, &self.h)?.scale(&li.neg());
        Self::new(mi, li, h)
    }

    pub fn embed(&self, e: &ExtensionMap) -> Result<IsomorphismRecord> {
        Ok(IsomorphismRecord {
            m: self.m.embed(e)?,
            lambda: e.embed(&self.lambda)?,
            h: self.h.embed(e)?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity() && self.lambda.is_one() && self.h.is_zero()
    }
}

impl fmt::Display for IsomorphismRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda={}, M={}, h={}", self.lambda, self.m.canonical(), self.h)
    }
}

impl fmt::Debug for IsomorphismRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for IsomorphismRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.m.canonical();
        let mut st = s.serialize_struct("IsomorphismRecord", 3)?;
        st.serialize_field("lambda", &self.lambda.to_string())?;
        st.serialize_field(
            "M",
            &[
                [m.alpha.to_string(), m.beta.to_string()],
                [m.gamma.to_string(), m.delta.to_string()],
            ],
        )?;
        st.serialize_field("h", &self.h.to_string())?;
        st.end()
    }
}
