//! Reconstructing invariants of standard forms, their relations, and
//! reconstruction of a standard form from invariant values.

use crate::error::{Error, Result};
use crate::curve::make_curve;
use crate::ff::{ExtensionMap, Field, FieldElement};
use crate::polyrat::{roots_with_multiplicity, Polynomial, RationalFunction};
use crate::standard::{standardize, StandardFormCurve};
use crate::strata::{StratumDescriptor, TableStratum};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use std::fmt;

/// Named invariant values of a standard form.
#[derive(Clone, PartialEq, Eq)]
pub struct InvariantVector {
    stratum: StratumDescriptor,
    field: Field,
    values: Vec<(String, FieldElement)>,
}

/// Invariant names per table stratum, in output order.
pub fn invariant_names(t: TableStratum) -> &'static [&'static str] {
    match t {
        TableStratum::G3P3S0 => &["I1"],
        TableStratum::G3P3S2 => &["I1", "I2", "I3"],
        TableStratum::G3P7S0 => &[],
        TableStratum::G4P3S0 => &["I1", "I2", "I3"],
        TableStratum::G4P3S2 => &["I1", "I2", "I3", "I3sq", "J"],
        TableStratum::G4P3S4 => &["I1", "I2", "I3", "I4"],
        TableStratum::G4P5S0 => &["I1"],
        TableStratum::G4P5S4 => &["I1"],
    }
}

impl InvariantVector {
    /// Builds a vector from named values; every name of the stratum must be
    /// present exactly once.
    pub fn new(
        stratum: &StratumDescriptor,
        field: &Field,
        values: Vec<(String, FieldElement)>,
    ) -> Result<InvariantVector> {
        let t = stratum.require_table()?;
        let names = invariant_names(t);
        let mut ordered = Vec::with_capacity(names.len());
        for &n in names {
            let v = values
                .iter()
                .find(|(k, _)| k == n)
                .ok_or_else(|| Error::InconsistentValues(format!("missing invariant {n}")))?;
            field.check_same(v.1.field())?;
            ordered.push((n.to_string(), v.1.clone()));
        }
        if values.len() != names.len() {
            return Err(Error::InconsistentValues(format!(
                "expected invariants {names:?}"
            )));
        }
        Ok(InvariantVector {
            stratum: stratum.clone(),
            field: field.clone(),
            values: ordered,
        })
    }

    pub fn stratum(&self) -> &StratumDescriptor {
        &self.stratum
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[(String, FieldElement)] {
        &self.values
    }

    pub fn get(&self, name: &str) -> Option<&FieldElement> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    fn at(&self, name: &str) -> Result<&FieldElement> {
        self.get(name)
            .ok_or_else(|| Error::InconsistentValues(format!("missing invariant {name}")))
    }

    pub fn embed(&self, e: &ExtensionMap) -> Result<InvariantVector> {
        Ok(InvariantVector {
            stratum: self.stratum.clone(),
            field: e.target().clone(),
            values: self
                .values
                .iter()
                .map(|(n, v)| Ok((n.clone(), e.embed(v)?)))
                .collect::<Result<_>>()?,
        })
    }

    /// Equality under the comparison semantics: exact, except that I3 of
    /// the (g=4, p=3, E={3,3}) stratum is compared up to sign.
    pub fn equivalent(&self, other: &InvariantVector) -> bool {
        if self.stratum != other.stratum || self.field != other.field {
            return false;
        }
        let loose = self.stratum.table() == Some(TableStratum::G4P3S2);
        self.values.iter().zip(&other.values).all(|((n, a), (_, b))| {
            a == b || (loose && n == "I3" && *a == b.neg())
        })
    }
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(n, v)| format!("{n}={v}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Named<'a>(&'a [(String, FieldElement)]);

impl Serialize for Named<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, &v.to_string())?;
        }
        m.end()
    }
}

impl Serialize for InvariantVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InvariantVector", 2)?;
        st.serialize_field("field", &self.field.descriptor())?;
        st.serialize_field("values", &Named(&self.values))?;
        st.end()
    }
}

/// The reduced coordinates (a, b) = (c^3 + d, −cd − ε^2), ε^3 = c, of the
/// model x^5 + ax^2 + bx of a (g=4, p=3, E={6}) standard form
/// x^5 + cx^4 + dx^2.
pub fn reduced_coordinates(c: &FieldElement, d: &FieldElement) -> (FieldElement, FieldElement) {
    let eps = c.frobenius_inverse();
    let a = &c.pow(3) + d;
    let b = &(c * d).neg() - &eps.pow(2);
    (a, b)
}

fn named(pairs: &[(&str, FieldElement)]) -> Vec<(String, FieldElement)> {
    pairs.iter().map(|(n, v)| (n.to_string(), v.clone())).collect()
}

/// The invariants of a standard form in a table stratum.
pub fn invariants_of(s: &StandardFormCurve) -> Result<InvariantVector> {
    let t = s.stratum().require_table()?;
    Ok(InvariantVector {
        stratum: s.stratum().clone(),
        field: s.field().clone(),
        values: invariant_values(t, &s.values()),
    })
}

/// Invariant values straight from a coefficient tuple.
pub(crate) fn invariant_values(t: TableStratum, v: &[FieldElement]) -> Vec<(String, FieldElement)> {
    match t {
        TableStratum::G3P3S0 => named(&[("I1", v[0].pow(4))]),
        TableStratum::G3P3S2 => {
            let (a, b) = (&v[0], &v[1]);
            named(&[("I1", a.pow(4)), ("I2", a * b), ("I3", b.pow(4))])
        }
        TableStratum::G3P7S0 => Vec::new(),
        TableStratum::G4P3S0 => {
            let (a, b) = reduced_coordinates(&v[0], &v[1]);
            named(&[
                ("I1", a.pow(10)),
                ("I2", b.pow(5)),
                ("I3", &a.pow(2) * &b),
            ])
        }
        TableStratum::G4P3S2 => {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            let ac = &a.pow(4) * &c.pow(2);
            let i3 = &ac - &b.pow(4);
            named(&[
                ("I1", c.clone()),
                ("I2", a * b),
                ("I3", i3.clone()),
                ("I3sq", i3.pow(2)),
                ("J", &ac + &b.pow(4)),
            ])
        }
        TableStratum::G4P3S4 => {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            let abc = &(a * b) * c;
            named(&[
                ("I1", abc.pow(2)),
                ("I2", &abc * &(&(a - b) - c)),
                ("I3", &(&(a * b) + &(a * c)) - &(b * c)),
                ("I4", &(&a.pow(2) + &b.pow(2)) + &c.pow(2)),
            ])
        }
        TableStratum::G4P5S0 => named(&[("I1", v[0].pow(12))]),
        TableStratum::G4P5S4 => named(&[("I1", v[0].pow(2))]),
    }
}

/// A key that is equal for two vectors iff they are equivalent under
/// [`InvariantVector::equivalent`].
pub(crate) fn comparison_key(t: TableStratum, values: &[(String, FieldElement)]) -> Vec<FieldElement> {
    values
        .iter()
        .map(|(n, v)| {
            if t == TableStratum::G4P3S2 && n == "I3" {
                v.clone().min(v.neg())
            } else {
                v.clone()
            }
        })
        .collect()
}

/// Whether the algebraic relations of the stratum hold exactly.
pub fn check_relations(v: &InvariantVector) -> bool {
    let g = |n: &str| v.get(n).cloned();
    let Some(t) = v.stratum.table() else {
        return false;
    };
    let holds = || -> Option<bool> {
        Some(match t {
            TableStratum::G3P3S2 => &g("I1")? * &g("I3")? == g("I2")?.pow(4),
            TableStratum::G4P3S0 => &g("I1")? * &g("I2")? == g("I3")?.pow(5),
            TableStratum::G4P3S4 => {
                &g("I1")? * &(&g("I3")? + &g("I4")?) == g("I2")?.pow(2)
            }
            TableStratum::G4P3S2 => {
                let (i1, i2, i3, sq, j) = (g("I1")?, g("I2")?, g("I3")?, g("I3sq")?, g("J")?);
                sq == i3.pow(2) && j.pow(2) == &sq + &(&i2.pow(4) * &i1.pow(2))
            }
            _ => true,
        })
    };
    holds().unwrap_or(false)
}

/// Root extraction along a growing chain of extensions.
struct Tower {
    ext: ExtensionMap,
}

impl Tower {
    fn new(field: &Field) -> Tower {
        Tower {
            ext: ExtensionMap::identity(field),
        }
    }

    fn field(&self) -> &Field {
        self.ext.target()
    }

    /// Lifts an element of the base field; elements of the current stage
    /// pass through unchanged.
    fn lift(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field() == self.field() {
            return Ok(a.clone());
        }
        self.ext.embed(a)
    }

    fn grow(&mut self, e: &ExtensionMap) -> Result<()> {
        if !e.is_identity() {
            self.ext = self.ext.then(e)?;
        }
        Ok(())
    }

    fn root(&mut self, a: &FieldElement, n: u64) -> Result<FieldElement> {
        let (r, e) = self.lift(a)?.nth_root(n);
        self.grow(&e)?;
        Ok(r)
    }

    /// Roots of a monic polynomial with multiplicity, in its splitting field.
    fn roots(&mut self, coeffs: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let lifted: Vec<FieldElement> = coeffs.iter().map(|c| self.lift(c)).collect::<Result<_>>()?;
        let poly = Polynomial::new(self.field(), lifted);
        let (roots, e) = roots_with_multiplicity(&poly, true)?;
        self.grow(&e)?;
        Ok(roots
            .into_iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r, m))
            .collect())
    }

}

fn nonzero(v: &FieldElement, what: &str) -> Result<()> {
    if v.is_zero() {
        return Err(Error::InconsistentValues(format!("{what} must be nonzero")));
    }
    Ok(())
}

/// A standard form with the given invariants, possibly over an extension of
/// the field of `v` (see [`StandardFormCurve::extension`]).
pub fn reconstruct(st: &StratumDescriptor, v: &InvariantVector) -> Result<StandardFormCurve> {
    let t = st.require_table()?;
    if v.stratum != *st {
        return Err(Error::InconsistentValues(format!(
            "invariants belong to {}, not {st}",
            v.stratum
        )));
    }
    if !check_relations(v) {
        return Err(Error::InconsistentValues(format!("relations fail for {v}")));
    }
    let field = v.field().clone();
    let mut tw = Tower::new(&field);
    let values: Vec<FieldElement> = match t {
        TableStratum::G3P3S0 => vec![tw.root(v.at("I1")?, 4)?],
        TableStratum::G3P3S2 => {
            let (i1, i2, i3) = (v.at("I1")?, v.at("I2")?, v.at("I3")?);
            if i1.is_zero() {
                nonzero(i3, "I3")?;
                let b = tw.root(i3, 4)?;
                vec![tw.field().zero(), b]
            } else {
                let a = tw.root(i1, 4)?;
                let b = &tw.lift(i2)? / &a;
                vec![a, b]
            }
        }
        TableStratum::G3P7S0 => Vec::new(),
        TableStratum::G4P3S0 => {
            let (i1, i2, i3) = (v.at("I1")?, v.at("I2")?, v.at("I3")?);
            let (a, b) = if i1.is_zero() {
                (tw.field().zero(), tw.root(i2, 5)?)
            } else {
                let a = tw.root(i1, 10)?;
                let b = &tw.lift(i3)? / &a.pow(2);
                (a, b)
            };
            let f = tw.field().clone();
            let x = RationalFunction::x(&f);
            let model = x.powi(5)?.checked_add(&x.powi(2)?.scale(&a))?.checked_add(&x.scale(&b))?;
            let (std, _) = standardize(&make_curve(st.p, &model)?)?;
            let ext = tw.ext.then(std.extension())?;
            return Ok(std.with_extension(ext));
        }
        TableStratum::G4P3S2 => {
            let (c, i2, i3, j) = (v.at("I1")?, v.at("I2")?, v.at("I3")?, v.at("J")?);
            nonzero(c, "I1")?;
            let (a, b) = if i2.is_zero() {
                // one of a, b vanishes; both choices are swapped by the pole swap
                let b = tw.root(j, 4)?;
                (tw.field().zero(), b)
            } else {
                // A = a^4 solves c^2 A^2 − J A + I2^4 = 0
                let c2 = c.pow(2);
                let coeffs = [&i2.pow(4) / &c2, &j.neg() / &c2, field.one()];
                let roots = tw.roots(&coeffs)?;
                let a4 = roots[0].clone();
                let a = tw.root(&a4, 4)?;
                let b = &tw.lift(i2)? / &a;
                (a, b)
            };
            let c = tw.lift(c)?;
            let got = &(&a.pow(4) * &c.pow(2)) - &b.pow(4);
            let i3 = tw.lift(i3)?;
            if got != i3 && got != i3.neg() {
                return Err(Error::InconsistentValues("I3 does not match I1, I2 and J".into()));
            }
            let a = tw.lift(&a)?;
            let b = tw.lift(&b)?;
            vec![a, b, c]
        }
        TableStratum::G4P3S4 => {
            // (a, −b, −c) are the roots of z^3 − S1 z^2 + S2 z − S3 with
            // S3 = abc, S1 = I2/S3, S2 = −I3
            let i1 = v.at("I1")?;
            nonzero(i1, "I1")?;
            let s3 = tw.root(i1, 2)?;
            let s1 = &tw.lift(v.at("I2")?)? / &s3;
            let s2 = tw.lift(v.at("I3")?)?.neg();
            let roots = tw.roots(&[s3.neg(), s2, s1.neg(), field.one()])?;
            let r: Vec<FieldElement> = roots.iter().map(|x| tw.lift(x)).collect::<Result<_>>()?;
            vec![r[0].clone(), r[1].neg(), r[2].neg()]
        }
        TableStratum::G4P5S0 => vec![tw.root(v.at("I1")?, 12)?],
        TableStratum::G4P5S4 => {
            let i1 = v.at("I1")?;
            nonzero(i1, "I1")?;
            vec![tw.root(i1, 2)?]
        }
    };
    let values: Vec<FieldElement> = values.iter().map(|x| tw.lift(x)).collect::<Result<_>>()?;
    Ok(StandardFormCurve::from_values(st, tw.field(), &values)?.with_extension(tw.ext.clone()))
}
