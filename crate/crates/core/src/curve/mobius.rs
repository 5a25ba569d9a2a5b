use crate::error::{Error, Result};
use crate::ff::{ExtensionMap, Field, FieldElement};
use crate::polyrat::{ProjectivePoint, RationalFunction};
use std::fmt;

/// x ↦ (αx + β)/(γx + δ), stored as the matrix (α, β; γ, δ).
///
/// Equality is projective: matrices differing by a nonzero scalar are equal.
#[derive(Clone)]
pub struct MobiusTransform {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta: FieldElement,
}

impl MobiusTransform {
    pub fn new(
        alpha: FieldElement,
        beta: FieldElement,
        gamma: FieldElement,
        delta: FieldElement,
    ) -> Result<MobiusTransform> {
        let f = alpha.field().clone();
        for e in [&beta, &gamma, &delta] {
            f.check_same(e.field())?;
        }
        let m = MobiusTransform {
            alpha,
            beta,
            gamma,
            delta,
        };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    /// Builds a matrix from small integers.
    pub fn from_ints(field: &Field, a: i64, b: i64, c: i64, d: i64) -> Result<MobiusTransform> {
        Self::new(field.from_int(a), field.from_int(b), field.from_int(c), field.from_int(d))
    }

    pub fn identity(field: &Field) -> MobiusTransform {
        Self::from_ints(field, 1, 0, 0, 1).expect("identity is invertible")
    }

    /// x ↦ s·x
    pub fn scaling(s: &FieldElement) -> Result<MobiusTransform> {
        let f = s.field();
        Self::new(s.clone(), f.zero(), f.zero(), f.one())
    }

    /// x ↦ x + b
    pub fn translation(b: &FieldElement) -> MobiusTransform {
        let f = b.field();
        Self::new(f.one(), b.clone(), f.zero(), f.one()).expect("translations are invertible")
    }

    pub fn field(&self) -> &Field {
        self.alpha.field()
    }

    pub fn det(&self) -> FieldElement {
        &(&self.alpha * &self.delta) - &(&self.beta * &self.gamma)
    }

    /// Matrix product self · o; as maps, x ↦ self(o(x)).
    pub fn mul(&self, o: &MobiusTransform) -> MobiusTransform {
        MobiusTransform {
            alpha: &(&self.alpha * &o.alpha) + &(&self.beta * &o.gamma),
            beta: &(&self.alpha * &o.beta) + &(&self.beta * &o.delta),
            gamma: &(&self.gamma * &o.alpha) + &(&self.delta * &o.gamma),
            delta: &(&self.gamma * &o.beta) + &(&self.delta * &o.delta),
        }
    }

    /// The adjugate, which is the inverse up to scalar.
    pub fn inverse(&self) -> MobiusTransform {
        MobiusTransform {
            alpha: self.delta.clone(),
            beta: self.beta.neg(),
            gamma: self.gamma.neg(),
            delta: self.alpha.clone(),
        }
    }

    /// Scales so that the first nonzero entry (in order α, β, γ, δ) is 1.
    pub fn canonical(&self) -> MobiusTransform {
        let first = [&self.alpha, &self.beta, &self.gamma, &self.delta]
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("nonsingular matrix has a nonzero entry")
            .inv()
            .expect("nonzero");
        MobiusTransform {
            alpha: &self.alpha * &first,
            beta: &self.beta * &first,
            gamma: &self.gamma * &first,
            delta: &self.delta * &first,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.beta.is_zero() && self.gamma.is_zero() && self.alpha == self.delta
    }

    pub fn embed(&self, e: &ExtensionMap) -> Result<MobiusTransform> {
        Ok(MobiusTransform {
            alpha: e.embed(&self.alpha)?,
            beta: e.embed(&self.beta)?,
            gamma: e.embed(&self.gamma)?,
            delta: e.embed(&self.delta)?,
        })
    }

    /// The image M(P) of a point of the projective line.
    pub fn eval(&self, pt: &ProjectivePoint) -> ProjectivePoint {
        match pt {
            ProjectivePoint::Infinity => {
                if self.gamma.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(&self.alpha / &self.gamma)
                }
            }
            ProjectivePoint::Finite(x) => {
                let den = &(&self.gamma * x) + &self.delta;
                if den.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(&(&(&self.alpha * x) + &self.beta) / &den)
                }
            }
        }
    }
}

impl PartialEq for MobiusTransform {
    fn eq(&self, other: &Self) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma && a.delta == b.delta
    }
}

impl Eq for MobiusTransform {}

impl fmt::Display for MobiusTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.alpha, self.beta, self.gamma, self.delta)
    }
}

impl fmt::Debug for MobiusTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// f ∘ M. Satisfies mobius_apply(M1, mobius_apply(M2, f)) = mobius_apply(M2·M1, f).
pub fn mobius_apply(m: &MobiusTransform, f: &RationalFunction) -> Result<RationalFunction> {
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    f.field().check_same(m.field())?;
    f.compose_linear_fractional(&m.alpha, &m.beta, &m.gamma, &m.delta)
}

/// Where a pole of f lands as a pole of f ∘ M: the point M^{-1}(P),
/// i.e. (δμ − β)/(−γμ + α).
pub fn pole_image(m: &MobiusTransform, pt: &ProjectivePoint) -> Result<ProjectivePoint> {
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(m.inverse().eval(pt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use crate::polyrat::parse_rational;

    #[test]
    fn examples() {
        let f3 = make_field(3, 1, None).unwrap();
        let f = parse_rational("x^2", &f3).unwrap();
        let m = MobiusTransform::from_ints(&f3, 1, 1, 0, 1).unwrap();
        assert_eq!(mobius_apply(&m, &f).unwrap(), parse_rational("x^2+2x+1", &f3).unwrap());
        let swap = MobiusTransform::from_ints(&f3, 0, 1, 1, 0).unwrap();
        let g = parse_rational("1/x", &f3).unwrap();
        assert_eq!(mobius_apply(&swap, &g).unwrap(), RationalFunction::x(&f3));
        assert_eq!(
            pole_image(&swap, &ProjectivePoint::Finite(f3.zero())).unwrap(),
            ProjectivePoint::Infinity
        );
        assert_eq!(
            pole_image(&swap, &ProjectivePoint::Infinity).unwrap(),
            ProjectivePoint::Finite(f3.zero())
        );
        let mu = f3.from_int(2);
        let m = MobiusTransform::new(mu.clone(), f3.from_int(-1), f3.one(), f3.zero()).unwrap();
        assert_eq!(
            pole_image(&m, &ProjectivePoint::Finite(mu)).unwrap(),
            ProjectivePoint::Infinity
        );
        assert!(MobiusTransform::from_ints(&f3, 1, 1, 1, 1).is_err());
    }

    #[test]
    fn projective_equality() {
        let f5 = make_field(5, 1, None).unwrap();
        let a = MobiusTransform::from_ints(&f5, 2, 1, 0, 3).unwrap();
        let b = MobiusTransform::from_ints(&f5, 4, 2, 0, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.mul(&a.inverse()).is_identity());
    }
}
