//! Standard forms: every curve is moved to a normalized model whose free
//! coefficients parametrize its stratum, together with the isomorphism
//! that realizes the move.

mod normalize;
mod record;
mod shape;

pub use normalize::{eliminate_p_powers, normalize_single_pole};
pub use record::IsomorphismRecord;
pub use shape::{Slot, StandardFormCurve, StandardShape};

use crate::curve::{split_constant, ArtinSchreierCurve, MobiusTransform};
use crate::error::{Error, Result};
use crate::ff::{ExtensionMap, FieldElement};
use crate::polyrat::{ProjectivePoint, RationalFunction};
pub(crate) use normalize::single_pole_shift;

/// The matrix sending ∞, 0, 1 (as many as given) to the listed points, so
/// that f∘M has its poles there.
pub(crate) fn placement_matrix(
    field: &crate::ff::Field,
    pts: &[ProjectivePoint],
) -> Result<MobiusTransform> {
    use ProjectivePoint::{Finite, Infinity};
    let one = field.one();
    let zero = field.zero();
    match pts {
        [Infinity] => Ok(MobiusTransform::identity(field)),
        [Finite(m1)] => MobiusTransform::new(m1.clone(), one.neg(), one, zero),
        [Infinity, Finite(m2)] => Ok(MobiusTransform::translation(m2)),
        [Finite(m1), Infinity] => MobiusTransform::new(m1.clone(), one.clone(), one, zero),
        [Finite(m1), Finite(m2)] => MobiusTransform::new(m1.clone(), m2.clone(), one.clone(), one),
        [Infinity, Finite(m2), Finite(m3)] => {
            MobiusTransform::new(m3 - m2, m2.clone(), zero, one)
        }
        [Finite(m1), Infinity, Finite(m3)] => MobiusTransform::new(m1.clone(), m3 - m1, one, zero),
        [Finite(m1), Finite(m2), Infinity] => {
            MobiusTransform::new(m1.neg(), m2.clone(), one.neg(), one)
        }
        [Finite(m1), Finite(m2), Finite(m3)] => MobiusTransform::new(
            m1 * &(m3 - m2),
            m2 * &(m1 - m3),
            m3 - m2,
            m1 - m3,
        ),
        _ => Err(Error::Inconsistency("invalid pole placement".into())),
    }
}

/// All ordered choices of the top (at most three) poles compatible with
/// the descending order sequence.
fn placements(orders: &[usize]) -> Vec<Vec<usize>> {
    let top = orders.len().min(3);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(orders: &[usize], top: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == top {
            out.push(cur.clone());
            return;
        }
        let want = orders[cur.len()];
        for i in 0..orders.len() {
            if orders[i] == want && !cur.contains(&i) {
                cur.push(i);
                rec(orders, top, cur, out);
                cur.pop();
            }
        }
    }
    rec(orders, top, &mut cur, &mut out);
    out
}

struct Candidate {
    f: RationalFunction,
    rec: IsomorphismRecord,
    values: Vec<FieldElement>,
}

impl Candidate {
    fn embed(&self, e: &ExtensionMap) -> Result<Candidate> {
        Ok(Candidate {
            f: self.f.embed(e)?,
            rec: self.rec.embed(e)?,
            values: self.values.iter().map(|v| e.embed(v)).collect::<Result<_>>()?,
        })
    }
}

/// Standardizes f for one placement of its top poles. The result may live
/// in an extension of the field of f.
fn standardize_at(
    f: &RationalFunction,
    pts: &[ProjectivePoint],
    r: usize,
    shape: &StandardShape,
) -> Result<(Candidate, ExtensionMap)> {
    let field = f.field().clone();
    let mut rec = IsomorphismRecord::mobius(placement_matrix(&field, pts)?);
    let mut g = rec.transform(f)?;
    let mut ext = ExtensionMap::identity(&field);
    let grow = |e: ExtensionMap,
                    g: &mut RationalFunction,
                    rec: &mut IsomorphismRecord,
                    ext: &mut ExtensionMap|
     -> Result<()> {
        if !e.is_identity() {
            *g = g.embed(&e)?;
            *rec = rec.embed(&e)?;
            *ext = ext.then(&e)?;
        }
        Ok(())
    };
    if r <= 1 {
        // make the top part monic: x ↦ s·x with s^{d1} = a^{-1}
        let (q, _) = g.num().divrem(g.den())?;
        let d1 = q.degree().unwrap_or(0);
        let a = q.leading().ok_or(Error::ZeroPolynomial)?.clone();
        let (s, e) = a.inv()?.nth_root(d1 as u64);
        grow(e, &mut g, &mut rec, &mut ext)?;
        let step = IsomorphismRecord::mobius(MobiusTransform::scaling(&s)?);
        g = step.transform(&g)?;
        rec = rec.then(&step)?;
        if r == 0 && d1 > 1 {
            let poly = g.as_polynomial().ok_or_else(|| Error::Inconsistency("expected a polynomial".into()))?;
            let (beta, e) = single_pole_shift(poly)?;
            grow(e, &mut g, &mut rec, &mut ext)?;
            let step = IsomorphismRecord::mobius(MobiusTransform::translation(&beta));
            g = step.transform(&g)?;
            rec = rec.then(&step)?;
        }
    }
    let (g2, h) = eliminate_p_powers(&g)?;
    rec = rec.then(&IsomorphismRecord::shift(h)?)?;
    let (g3, _) = split_constant(&g2)?;
    let values = shape.extract(&g3)?;
    Ok((Candidate { f: g3, rec, values }, ext))
}

/// Converts a curve to a standard form.
///
/// The poles of the three highest orders go to ∞, 0 and 1; with at most two
/// poles the top part is made monic; with one pole the shift of the
/// single-pole normalization removes the linear term; finally every
/// p-divisible exponent and the constant term are removed. When several
/// placements are admissible (equal orders), the one with the smallest
/// coefficient tuple wins.
///
/// The returned record maps the input curve, embedded via
/// [`StandardFormCurve::extension`], onto the standard form.
pub fn standardize(c: &ArtinSchreierCurve) -> Result<(StandardFormCurve, IsomorphismRecord)> {
    let stratum = c.stratum()?;
    let shape = StandardShape::of(&stratum);
    let profile = c.profile()?;
    let r = profile.len() - 1;
    let mut ext = profile.extension.clone();
    let mut f = c.f().embed(&ext)?;
    let mut points: Vec<ProjectivePoint> = profile.entries.iter().map(|(pt, _)| pt.clone()).collect();
    let mut best: Option<Candidate> = None;
    for choice in placements(&profile.orders()) {
        let pts: Vec<ProjectivePoint> = choice.iter().map(|&i| points[i].clone()).collect();
        let (cand, e) = standardize_at(&f, &pts, r, &shape)?;
        if !e.is_identity() {
            f = f.embed(&e)?;
            points = points.iter().map(|pt| pt.embed(&e)).collect::<Result<_>>()?;
            best = best.map(|b| b.embed(&e)).transpose()?;
            ext = ext.then(&e)?;
        }
        if best.as_ref().is_none_or(|b| cand.values < b.values) {
            best = Some(cand);
        }
    }
    let best = best.ok_or_else(|| Error::Inconsistency("curve without poles".into()))?;
    let std = StandardFormCurve::assemble(&shape, best.f, best.values, ext);
    Ok((std, best.rec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{apply_isomorphism, make_curve, pole_image};
    use crate::ff::make_field;
    use crate::polyrat::parse_rational;
    use crate::strata::{enumerate_strata, TableStratum};

    fn std_of(p: u32, k: usize, s: &str) -> (ArtinSchreierCurve, StandardFormCurve, IsomorphismRecord) {
        let field = make_field(p as u64, k, None).unwrap();
        let c = make_curve(p, &parse_rational(s, &field).unwrap()).unwrap();
        let (std, rec) = standardize(&c).unwrap();
        let back = apply_isomorphism(&rec, &c.embed(std.extension()).unwrap()).unwrap();
        assert_eq!(back.f(), std.f(), "transcript of {s}");
        (c, std, rec)
    }

    #[test]
    fn examples() {
        let (_, s, _) = std_of(3, 1, "1/(x-1)^4");
        assert_eq!(s.values(), vec![s.field().zero()]);
        assert_eq!(s.f(), &parse_rational("x^4", s.field()).unwrap());
        let (_, s, _) = std_of(3, 1, "x^4+x^3");
        assert_eq!(s.f(), &parse_rational("x^4", s.field()).unwrap());
        let (_, s, _) = std_of(3, 1, "2x^2+x+1/x");
        assert_eq!(s.field().degree(), 2);
        assert_eq!(s.f(), &parse_rational("x^2+t*x+2t/x", s.field()).unwrap());
        assert_eq!(s.stratum().table(), Some(TableStratum::G3P3S2));
    }

    #[test]
    fn three_pole_placements() {
        let f = make_field(5, 1, None).unwrap();
        for pts in [[0i64, 3, 4], [2, 0, 1], [4, 2, 3]] {
            let inf = ProjectivePoint::Infinity;
            let mu: Vec<ProjectivePoint> = pts.iter().map(|&v| ProjectivePoint::Finite(f.from_int(v))).collect();
            let cases = [
                vec![inf.clone(), mu[1].clone(), mu[2].clone()],
                vec![mu[0].clone(), inf.clone(), mu[2].clone()],
                vec![mu[0].clone(), mu[1].clone(), inf.clone()],
                mu.clone(),
            ];
            for case in cases {
                let m = placement_matrix(&f, &case).unwrap();
                let targets = [inf.clone(), ProjectivePoint::Finite(f.zero()), ProjectivePoint::Finite(f.one())];
                for (pt, t) in case.iter().zip(&targets) {
                    assert_eq!(&pole_image(&m, pt).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn free_counts_match_dimensions() {
        for (g, p) in [(3, 3), (3, 7), (4, 3), (4, 5), (5, 3), (6, 3), (6, 5), (9, 7)] {
            for st in enumerate_strata(g, p) {
                assert_eq!(StandardShape::of(&st).len() as u64, st.dim, "{st}");
            }
        }
    }

    #[test]
    fn shapes_of_many_poles() {
        let f = make_field(5, 1, None).unwrap();
        let c = make_curve(5, &parse_rational("x^2 + 1/x + 1/(x-1) + 2/(x-2) + 1/(x-3)", &f).unwrap()).unwrap();
        let (s, _) = standardize(&c).unwrap();
        assert_eq!(s.stratum().partition, vec![3, 2, 2, 2, 2]);
        assert_eq!(s.values().len() as u64, s.stratum().dim);
        let back = StandardFormCurve::from_values(s.stratum(), s.field(), &s.values()).unwrap();
        assert_eq!(back.f(), s.f());
    }
}
