//! Finite isomorphism groups between standard forms, orbits, the
//! isomorphism decision procedure and the census of small fields.

mod census;

pub use census::{census, CensusReport, DEFAULT_CENSUS_BUDGET};

use crate::curve::{apply_isomorphism, split_constant, type_a_model, ArtinSchreierCurve, MobiusTransform};
use crate::error::{Error, Result};
use crate::ff::{common_extension, ExtensionMap, Field, FieldElement};
use crate::invariants::{invariants_of, reduced_coordinates};
use crate::polyrat::{roots_in_field, Polynomial, RationalFunction};
use crate::standard::{eliminate_p_powers, standardize, IsomorphismRecord, StandardFormCurve, StandardShape};
use crate::strata::{StratumDescriptor, TableStratum};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug)]
enum Rule {
    /// v_i ↦ m_i·v_i, realized by x ↦ αx
    Scale { alpha: FieldElement, multipliers: Vec<FieldElement> },
    /// (a, b, c) ↦ (b/(sω), a·s/ω³, c) with s² = c, realized by x ↦ 1/(γx),
    /// γ = ω/s
    Swap { omega: FieldElement },
    /// v_i ↦ λ·sign_i·v_{perm_i}
    Signed { perm: [usize; 3], signs: [i64; 3], m: [i64; 4] },
}

/// One element of the finite group acting on the coefficient tuples of a
/// stratum, with the isomorphism (M, λ, h) that realizes it on curves.
#[derive(Clone)]
pub struct CoefficientAction {
    table: TableStratum,
    label: String,
    lambda: FieldElement,
    rule: Rule,
}

/// The curve whose coefficients the group acts on: the standard form, or
/// the reduced model x^5 + ax^2 + bx for (g=4, p=3, E={6}).
pub fn action_model(t: TableStratum, field: &Field, v: &[FieldElement]) -> Result<RationalFunction> {
    if t == TableStratum::G4P3S0 {
        let x = RationalFunction::x(field);
        return x
            .powi(5)?
            .checked_add(&x.powi(2)?.scale(&v[0]))?
            .checked_add(&x.scale(&v[1]));
    }
    StandardShape::of(&t.descriptor()).build(field, v)
}

fn sqrt_of(c: &FieldElement) -> Result<FieldElement> {
    c.nth_roots_in_field(2)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Inconsistency(format!("{c} has no square root in the group field")))
}

impl CoefficientAction {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    /// The image of a coefficient tuple (over the group field).
    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        match &self.rule {
            Rule::Scale { multipliers, .. } => Ok(v.iter().zip(multipliers).map(|(x, m)| x * m).collect()),
            Rule::Swap { omega } => {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let s = sqrt_of(c)?;
                Ok(vec![b / &(&s * omega), &(a * &s) / &omega.pow(3), c.clone()])
            }
            Rule::Signed { perm, signs, .. } => Ok((0..3)
                .map(|i| &(&v[perm[i]] * &self.lambda) * &self.lambda.field().from_int(signs[i]))
                .collect()),
        }
    }

    /// The Möbius part of the realizing isomorphism at v.
    pub fn mobius(&self, v: &[FieldElement]) -> Result<MobiusTransform> {
        let field = self.lambda.field();
        match &self.rule {
            Rule::Scale { alpha, .. } => MobiusTransform::scaling(alpha),
            Rule::Swap { omega } => {
                let gamma = omega / &sqrt_of(&v[2])?;
                MobiusTransform::new(field.zero(), field.one(), gamma, field.zero())
            }
            Rule::Signed { m, .. } => MobiusTransform::from_ints(field, m[0], m[1], m[2], m[3]),
        }
    }

    /// The isomorphism (M, λ, h) from the model curve of v to the model
    /// curve of apply(v); checked exactly.
    pub fn witness(&self, v: &[FieldElement]) -> Result<IsomorphismRecord> {
        let field = self.lambda.field();
        let f = action_model(self.table, field, v)?;
        let m = self.mobius(v)?;
        let lambda_inv = self.lambda.inv()?;
        let moved = crate::curve::mobius_apply(&m, &f)?.scale(&lambda_inv);
        let (_, h) = eliminate_p_powers(&moved)?;
        let rec = IsomorphismRecord::new(m, self.lambda.clone(), h.scale(&self.lambda))?;
        let (got, _) = split_constant(&rec.transform(&f)?)?;
        let want = action_model(self.table, field, &self.apply(v)?)?;
        if got != want {
            return Err(Error::Inconsistency(format!(
                "action {} does not map {f} to {want} (got {got})",
                self.label
            )));
        }
        Ok(rec)
    }
}

impl fmt::Display for CoefficientAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

impl fmt::Debug for CoefficientAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

/// The isomorphism group of a table stratum, with its constants in an
/// extension of the requested field.
#[derive(Clone, Debug)]
pub struct ActionGroup {
    table: TableStratum,
    extension: ExtensionMap,
    actions: Vec<CoefficientAction>,
}

impl ActionGroup {
    pub fn stratum(&self) -> StratumDescriptor {
        self.table.descriptor()
    }

    /// Embedding of the requested field into the group field.
    pub fn extension(&self) -> &ExtensionMap {
        &self.extension
    }

    pub fn field(&self) -> &Field {
        self.extension.target()
    }

    pub fn actions(&self) -> &[CoefficientAction] {
        &self.actions
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    /// Moves a tuple over the requested field into the group field.
    pub fn lift(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        v.iter()
            .map(|x| if x.field() == self.field() { Ok(x.clone()) } else { self.extension.embed(x) })
            .collect()
    }

    /// Every image of v (over the group field), deduplicated.
    pub fn orbit_of(&self, v: &[FieldElement]) -> Result<BTreeSet<Vec<FieldElement>>> {
        let v = self.lift(v)?;
        self.actions.iter().map(|a| a.apply(&v)).collect()
    }
}

/// Leading degree and exponents of the free slots for the strata whose
/// group consists of scalings x ↦ αx.
fn scaling_data(t: TableStratum) -> Option<(u64, Vec<i64>)> {
    Some(match t {
        TableStratum::G3P3S0 => (4, vec![2]),
        TableStratum::G3P3S2 => (2, vec![1, -1]),
        TableStratum::G3P7S0 => (2, vec![]),
        TableStratum::G4P3S0 => (5, vec![2, 1]),
        TableStratum::G4P3S2 => (2, vec![1, -1, -2]),
        TableStratum::G4P5S0 => (3, vec![2]),
        TableStratum::G4P5S4 => (1, vec![-1]),
        TableStratum::G4P3S4 => return None,
    })
}

/// The signed permutations of (a, b, c) for (g=4, p=3, E={2,2,2}) together
/// with the Möbius maps permuting ∞, 0, 1 that realize them (λ = 1).
const SIGNED_PERMUTATIONS: [(&str, [usize; 3], [i64; 3], [i64; 4]); 6] = [
    ("(a, b, c)", [0, 1, 2], [1, 1, 1], [1, 0, 0, 1]),
    ("(b, a, -c)", [1, 0, 2], [1, 1, -1], [0, 1, 1, 0]),
    ("(-b, c, -a)", [1, 2, 0], [-1, 1, -1], [0, -1, 1, -1]),
    ("(-c, -a, b)", [2, 0, 1], [-1, -1, 1], [-1, 1, -1, 0]),
    ("(-a, -c, -b)", [0, 2, 1], [-1, -1, -1], [1, -1, 0, -1]),
    ("(c, -b, a)", [2, 1, 0], [1, -1, 1], [-1, 0, -1, 1]),
];

/// Smallest m such that F_{q^m} contains the N-th roots of unity.
fn unity_degree(field: &Field, n: u64) -> usize {
    let q = (field.characteristic() as u128).pow(field.degree() as u32);
    let n = n as u128;
    let mut m = 1;
    let mut qm = q % n;
    while (qm + n - 1) % n != 0 {
        m += 1;
        qm = qm * q % n;
    }
    m
}

fn extend_by(field: &Field, m: usize) -> ExtensionMap {
    if m == 1 {
        ExtensionMap::identity(field)
    } else {
        ExtensionMap::extend(field, m)
    }
}

/// The group of a table stratum acting on coefficient tuples over `field`.
/// Action constants (roots of unity, square roots) live in the returned
/// group field; every action is checked against its witness on a sample
/// tuple.
pub fn group_of(st: &StratumDescriptor, field: &Field) -> Result<ActionGroup> {
    let t = st.require_table()?;
    if field.characteristic() != t.p() {
        return Err(Error::FieldMismatch(field.descriptor(), format!("characteristic {}", t.p())));
    }
    let p = t.p() as u64;
    let (extension, actions) = match scaling_data(t) {
        Some((d1, exps)) => {
            let n = d1 * (p - 1);
            let mut m = unity_degree(field, n);
            if t == TableStratum::G4P3S2 {
                // square roots of every element of the field for the swaps
                m = crate::ff::lcm(m, 2);
            }
            let ext = extend_by(field, m);
            let k = ext.target().clone();
            let unity = Polynomial::binomial(n as usize, &k.from_int(-1));
            let roots: Vec<FieldElement> = roots_in_field(&unity)?.into_iter().map(|(r, _)| r).collect();
            let mut actions: Vec<CoefficientAction> = Vec::new();
            let mut seen = BTreeSet::new();
            for alpha in &roots {
                let lambda = alpha.pow(d1 as u128);
                let multipliers: Vec<FieldElement> = exps
                    .iter()
                    .map(|&e| Ok(&alpha.powi(e)? / &lambda))
                    .collect::<Result<_>>()?;
                if !seen.insert(multipliers.clone()) {
                    continue;
                }
                actions.push(CoefficientAction {
                    table: t,
                    label: format!("x -> ({alpha})x, lambda = {lambda}"),
                    lambda,
                    rule: Rule::Scale { alpha: alpha.clone(), multipliers },
                });
            }
            if t == TableStratum::G4P3S2 {
                let fourth = Polynomial::binomial(4, &k.from_int(-1));
                for (omega, _) in roots_in_field(&fourth)? {
                    actions.push(CoefficientAction {
                        table: t,
                        label: format!("x -> 1/(gamma x), omega = {omega}"),
                        lambda: omega.pow(2),
                        rule: Rule::Swap { omega },
                    });
                }
            }
            (ext, actions)
        }
        None => {
            let mut actions = Vec::new();
            for lambda in [1i64, -1] {
                for (name, perm, signs, m) in SIGNED_PERMUTATIONS {
                    actions.push(CoefficientAction {
                        table: t,
                        label: format!("{}{name}", if lambda == 1 { "" } else { "-" }),
                        lambda: field.from_int(lambda),
                        rule: Rule::Signed { perm, signs, m },
                    });
                }
            }
            (ExtensionMap::identity(field), actions)
        }
    };
    let group = ActionGroup { table: t, extension, actions };
    let k = group.field();
    let sample: Vec<FieldElement> = (0..StandardShape::of(st).len())
        .map(|i| {
            let v = k.from_int(i as i64 + 1);
            if v.is_zero() { k.one() } else { v }
        })
        .collect();
    for a in &group.actions {
        a.witness(&sample)?;
    }
    Ok(group)
}

/// The coordinates the group acts on: the standard coefficients, or the
/// reduced coordinates for (g=4, p=3, E={6}).
pub fn action_coordinates(s: &StandardFormCurve) -> Result<Vec<FieldElement>> {
    let v = s.values();
    if s.stratum().table() == Some(TableStratum::G4P3S0) {
        let (a, b) = reduced_coordinates(&v[0], &v[1]);
        return Ok(vec![a, b]);
    }
    Ok(v)
}

/// An isomorphism from the standard form to the model curve of its action
/// coordinates: x ↦ x + c, y ↦ y − ε^2 x for (g=4, p=3, E={6}), the
/// identity otherwise.
pub fn transport(s: &StandardFormCurve) -> Result<IsomorphismRecord> {
    let field = s.field();
    if s.stratum().table() == Some(TableStratum::G4P3S0) {
        let c = &s.values()[0];
        let eps = c.frobenius_inverse();
        let h = RationalFunction::x(field).scale(&eps.pow(2).neg());
        return IsomorphismRecord::new(MobiusTransform::translation(c), field.one(), h);
    }
    Ok(IsomorphismRecord::identity(field))
}

/// An orbit of coefficient tuples over the group field.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Embedding of the curve's field into the group field.
    pub extension: ExtensionMap,
    pub points: BTreeSet<Vec<FieldElement>>,
}

/// The orbit of a standard form's action coordinates under its group.
pub fn orbit(s: &StandardFormCurve) -> Result<Orbit> {
    let group = group_of(s.stratum(), s.field())?;
    let points = group.orbit_of(&action_coordinates(s)?)?;
    Ok(Orbit {
        extension: group.extension().clone(),
        points,
    })
}

/// Moves two curves of the same characteristic to one field.
fn common_field(c1: &ArtinSchreierCurve, c2: &ArtinSchreierCurve) -> Result<(ArtinSchreierCurve, ArtinSchreierCurve)> {
    let (e1, e2) = common_extension(c1.field(), c2.field())?;
    Ok((c1.embed(&e1)?, c2.embed(&e2)?))
}

fn chain(a: &ExtensionMap, b: &ExtensionMap) -> Result<ExtensionMap> {
    a.then(b)
}

/// Decides whether two curves are isomorphic over the algebraic closure.
///
/// Returns a record (M, λ, h) over a common extension F of the fields of
/// the curves with `apply_isomorphism(record, c1)` equal to c2 (both
/// embedded into F), or `None`. Exceptional curves of type A are compared
/// through their models a/(x^p − x); all others through standard forms and
/// the orbit of the stratum's group. The invariant vectors are compared as
/// a cross-check and a disagreement is reported as an error.
pub fn are_isomorphic(c1: &ArtinSchreierCurve, c2: &ArtinSchreierCurve) -> Result<Option<IsomorphismRecord>> {
    if c1.p() != c2.p() {
        return Ok(None);
    }
    let (c1, c2) = common_field(c1, c2)?;
    if c1.pole_orders() != c2.pole_orders() {
        return Ok(None);
    }
    match (type_a_model(&c1)?, type_a_model(&c2)?) {
        (Some((a1, r1, x1)), Some((a2, r2, x2))) => {
            let (k1, k2) = ExtensionMap::join(&x1, &x2)?;
            let (a1, a2) = (k1.embed(&a1)?, k2.embed(&a2)?);
            let mu = &a1 / &a2;
            if mu.prime_value().is_none() {
                return Ok(None);
            }
            let field = k1.target().clone();
            let scale = IsomorphismRecord::new(MobiusTransform::identity(&field), mu, RationalFunction::zero(&field))?;
            let rec = r1.embed(&k1)?.then(&scale)?.then(&r2.embed(&k2)?.inverse()?)?;
            verify(&rec, &c1.embed(&chain(&x1, &k1)?)?, &c2.embed(&chain(&x2, &k2)?)?)?;
            return Ok(Some(rec));
        }
        (None, None) => {}
        _ => return Ok(None),
    }
    let stratum = c1.stratum()?;
    stratum.require_table()?;
    let (s1, r1) = standardize(&c1)?;
    let (s2, r2) = standardize(&c2)?;
    let (j1, j2) = ExtensionMap::join(s1.extension(), s2.extension())?;
    let group = group_of(&stratum, j1.target())?;
    let g = group.extension();
    let (t1, t2) = (chain(&j1, g)?, chain(&j2, g)?);
    let d1 = c1.embed(&chain(s1.extension(), &t1)?)?;
    let d2 = c2.embed(&chain(s2.extension(), &t2)?)?;
    let (s1, s2) = (s1.embed(&t1)?, s2.embed(&t2)?);
    let (v1, v2) = (action_coordinates(&s1)?, action_coordinates(&s2)?);
    let mut found = None;
    for action in group.actions() {
        if action.apply(&v1)? == v2 {
            let w = action.witness(&v1)?;
            let rec = r1
                .embed(&t1)?
                .then(&transport(&s1)?)?
                .then(&w)?
                .then(&transport(&s2)?.inverse()?)?
                .then(&r2.embed(&t2)?.inverse()?)?;
            verify(&rec, &d1, &d2)?;
            found = Some(rec);
            break;
        }
    }
    let (i1, i2) = (invariants_of(&s1)?, invariants_of(&s2)?);
    if found.is_some() != i1.equivalent(&i2) {
        return Err(Error::Inconsistency(format!(
            "orbit search ({}) disagrees with invariants {i1} vs {i2}",
            if found.is_some() { "isomorphic" } else { "not isomorphic" }
        )));
    }
    Ok(found)
}

fn verify(rec: &IsomorphismRecord, from: &ArtinSchreierCurve, to: &ArtinSchreierCurve) -> Result<()> {
    let got = apply_isomorphism(rec, from)?;
    if &got != to {
        return Err(Error::Inconsistency(format!(
            "witness {rec} maps {from} to {got}, expected {to}"
        )));
    }
    Ok(())
}
