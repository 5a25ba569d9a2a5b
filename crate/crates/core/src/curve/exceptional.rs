use crate::curve::{mobius_apply, ArtinSchreierCurve};
use crate::error::Result;
use crate::ff::{ExtensionMap, FieldElement};
use crate::polyrat::{Polynomial, ProjectivePoint, RationalFunction};
use crate::standard::{placement_matrix, standardize, IsomorphismRecord};

/// Exceptional curves: y^p − y = a/(x^p − x) (type A) and y^p − y = x^d
/// with d | p + 1 (type B).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExceptionalClass {
    /// The coefficient a, normalized to the smallest of its F_p^× multiples.
    TypeA(FieldElement),
    TypeB(u64),
    NotExceptional,
}

/// Moves a curve with p simple poles onto y^p − y = a/(x^p − x) when
/// possible. Returns the normalized a, a record realizing the move (over
/// the splitting field of the poles) and the embedding into that field.
pub(crate) fn type_a_model(
    c: &ArtinSchreierCurve,
) -> Result<Option<(FieldElement, IsomorphismRecord, ExtensionMap)>> {
    let p = c.p() as usize;
    if c.pole_orders().len() != p || c.pole_orders().iter().any(|&d| d != 1) {
        return Ok(None);
    }
    let profile = c.profile()?;
    let ext = profile.extension.clone();
    let field = ext.target().clone();
    let f = c.f().embed(&ext)?;
    let pts: Vec<ProjectivePoint> = profile.entries.iter().map(|(pt, _)| pt.clone()).collect();
    let fin = |v: i64| ProjectivePoint::Finite(field.from_int(v));
    // K sends ∞, 0, 1 to 0, 1, 2; N sends them to P0, P1, R; M = N∘K^{-1}
    // sends 0, 1, 2 to P0, P1, R
    let k_inv = placement_matrix(&field, &[fin(0), fin(1), fin(2)])?.inverse();
    let x = Polynomial::x(&field);
    let target_den = Polynomial::monomial(&field.one(), p).checked_sub(&x)?;
    for r in &pts[2..] {
        let n = placement_matrix(&field, &[pts[0].clone(), pts[1].clone(), r.clone()])?;
        let m = n.mul(&k_inv);
        let g = mobius_apply(&m, &f)?;
        if g.den() != &target_den {
            continue;
        }
        let (q, rem) = g.num().divrem(g.den())?;
        if !q.is_constant() || !rem.is_constant() || rem.is_zero() {
            continue;
        }
        let a = rem.coeff(0);
        let (mu, best) = (1..p as i64)
            .map(|l| {
                let mu = field.from_int(l);
                let v = &mu * &a;
                (mu, v)
            })
            .min_by(|x, y| x.1.cmp(&y.1))
            .expect("p > 2");
        let rec = IsomorphismRecord::new(m, mu.inv()?, RationalFunction::zero(&field))?;
        return Ok(Some((best, rec, ext)));
    }
    Ok(None)
}

/// Detects the exceptional families. Type A: p simple poles that a Möbius
/// map sends to F_p with right-hand side a/(x^p − x) up to a constant.
/// Type B: one pole of order d | p + 1 whose standard form is x^d.
pub fn classify_exceptional(c: &ArtinSchreierCurve) -> Result<ExceptionalClass> {
    if let Some((a, _, _)) = type_a_model(c)? {
        return Ok(ExceptionalClass::TypeA(a));
    }
    let orders = c.pole_orders();
    if orders.len() == 1 {
        let d = orders[0] as u64;
        if d >= 2 && (c.p() as u64 + 1) % d == 0 {
            let (std, _) = standardize(c)?;
            let xd = Polynomial::monomial(&std.field().one(), d as usize);
            if std.f().as_polynomial() == Some(&xd) {
                return Ok(ExceptionalClass::TypeB(d));
            }
        }
    }
    Ok(ExceptionalClass::NotExceptional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{apply_isomorphism, make_curve};
    use crate::ff::make_field;
    use crate::polyrat::parse_rational;

    fn class(p: u32, k: usize, s: &str) -> ExceptionalClass {
        let f = make_field(p as u64, k, None).unwrap();
        classify_exceptional(&make_curve(p, &parse_rational(s, &f).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(class(3, 1, "1/(x^3-x)"), ExceptionalClass::TypeA(f3.one()));
        assert_eq!(class(3, 1, "x^4"), ExceptionalClass::TypeB(4));
        assert_eq!(class(3, 1, "x^4+x^2"), ExceptionalClass::NotExceptional);
        assert_eq!(class(7, 1, "x^2+3x"), ExceptionalClass::TypeB(2));
        assert_eq!(class(5, 1, "x^3"), ExceptionalClass::TypeB(3));
        assert_eq!(class(5, 1, "x^3+x^2"), ExceptionalClass::NotExceptional);
        assert_eq!(class(3, 1, "x+1/x+1/(x-1)"), ExceptionalClass::NotExceptional);
    }

    #[test]
    fn type_a_is_moebius_invariant() {
        let f5 = make_field(5, 1, None).unwrap();
        let c = make_curve(5, &parse_rational("2/(x^5-x)", &f5).unwrap()).unwrap();
        // x ↦ 1/(x+2) moves one pole to ∞
        let m = crate::curve::MobiusTransform::from_ints(&f5, 0, 1, 1, 2).unwrap();
        let rec = IsomorphismRecord::mobius(m);
        let d = apply_isomorphism(&rec, &c).unwrap();
        assert_eq!(classify_exceptional(&d).unwrap(), ExceptionalClass::TypeA(f5.one()));
        let (a, rec, e) = type_a_model(&d).unwrap().unwrap();
        let model = apply_isomorphism(&rec, &d.embed(&e).unwrap()).unwrap();
        let want = RationalFunction::constant(&a)
            .checked_div(&parse_rational("x^5-x", e.target()).unwrap())
            .unwrap();
        assert_eq!(model.f(), &want);
    }
}
