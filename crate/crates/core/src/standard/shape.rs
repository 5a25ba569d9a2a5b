use crate::curve::{make_curve, ArtinSchreierCurve};
use crate::error::{Error, Result};
use crate::ff::{ExtensionMap, Field, FieldElement};
use crate::polyrat::{principal_parts, Polynomial, RationalFunction};
use crate::strata::{StratumDescriptor, TableStratum};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use std::fmt;

/// Where a free coefficient sits in a standard form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    /// coefficient of x^k
    Infinity(usize),
    /// coefficient of x^{-k}
    Zero(usize),
    /// coefficient of (x − 1)^{-k}
    One(usize),
    /// location λ_i of the i-th pole (i ≥ 4)
    Position(usize),
    /// coefficient of (x − λ_i)^{-k}
    Extra(usize, usize),
}

/// The shape of the standard forms of one stratum: the fixed monic top
/// term (only with at most two poles) and the named free coefficients.
#[derive(Clone, Debug)]
pub struct StandardShape {
    stratum: StratumDescriptor,
    monic: Option<usize>,
    slots: Vec<(String, Slot)>,
    nonzero: Vec<usize>,
}

fn generic_name(slot: Slot) -> String {
    match slot {
        Slot::Infinity(1) => "x".into(),
        Slot::Infinity(k) => format!("x^{k}"),
        Slot::Zero(k) => format!("x^-{k}"),
        Slot::One(k) => format!("(x-1)^-{k}"),
        Slot::Position(i) => format!("l{i}"),
        Slot::Extra(i, k) => format!("(x-l{i})^-{k}"),
    }
}

fn table_slots(t: TableStratum) -> Vec<(&'static str, Slot)> {
    use Slot::*;
    match t {
        TableStratum::G3P3S0 => vec![("a", Infinity(2))],
        TableStratum::G3P3S2 => vec![("a", Infinity(1)), ("b", Zero(1))],
        TableStratum::G3P7S0 => vec![],
        TableStratum::G4P3S0 => vec![("c", Infinity(4)), ("d", Infinity(2))],
        TableStratum::G4P3S2 => vec![("a", Infinity(1)), ("b", Zero(1)), ("c", Zero(2))],
        TableStratum::G4P3S4 => vec![("a", Infinity(1)), ("b", Zero(1)), ("c", One(1))],
        TableStratum::G4P5S0 => vec![("a", Infinity(2))],
        TableStratum::G4P5S4 => vec![("a", Zero(1))],
    }
}

impl StandardShape {
    pub fn of(stratum: &StratumDescriptor) -> StandardShape {
        let p = stratum.p as usize;
        let d: Vec<usize> = stratum.pole_orders().iter().map(|&x| x as usize).collect();
        let r = d.len() - 1;
        let free = |top: usize, low: usize| (low..=top).rev().filter(move |k| k % p != 0);
        let mut slots = Vec::new();
        let mut nonzero = Vec::new();
        let monic = (r <= 1).then_some(d[0]);
        match r {
            0 => slots.extend(free(d[0].saturating_sub(1), 2).map(Slot::Infinity)),
            1 => {
                slots.extend(free(d[0] - 1, 1).map(Slot::Infinity));
                nonzero.push(slots.len());
                slots.extend(free(d[1], 1).map(Slot::Zero));
            }
            _ => {
                nonzero.push(slots.len());
                slots.extend(free(d[0], 1).map(Slot::Infinity));
                nonzero.push(slots.len());
                slots.extend(free(d[1], 1).map(Slot::Zero));
                nonzero.push(slots.len());
                slots.extend(free(d[2], 1).map(Slot::One));
                for (j, &dj) in d.iter().enumerate().skip(3) {
                    let i = j + 1;
                    slots.push(Slot::Position(i));
                    nonzero.push(slots.len());
                    slots.extend(free(dj, 1).map(|k| Slot::Extra(i, k)));
                }
            }
        }
        let mut slots: Vec<(String, Slot)> =
            slots.into_iter().map(|s| (generic_name(s), s)).collect();
        if let Some(t) = stratum.table() {
            let named = table_slots(t);
            let index = |s: Slot| named.iter().position(|(_, n)| *n == s).expect("table slot");
            let required: Vec<Slot> = nonzero.iter().map(|&i| slots[i].1).collect();
            slots.sort_by_key(|(_, s)| index(*s));
            for (name, s) in slots.iter_mut() {
                *name = named[index(*s)].0.to_string();
            }
            nonzero = required
                .into_iter()
                .map(|s| slots.iter().position(|(_, x)| *x == s).expect("slot"))
                .collect();
        }
        StandardShape {
            stratum: stratum.clone(),
            monic,
            slots,
            nonzero,
        }
    }

    pub fn stratum(&self) -> &StratumDescriptor {
        &self.stratum
    }

    pub fn names(&self) -> Vec<&str> {
        self.slots.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn slots(&self) -> impl Iterator<Item = Slot> + '_ {
        self.slots.iter().map(|(_, s)| *s)
    }

    /// Number of free coefficients.
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Whether the coefficient at `index` must be nonzero.
    pub fn requires_nonzero(&self, index: usize) -> bool {
        self.nonzero.contains(&index)
    }

    fn check_values(&self, values: &[FieldElement]) -> Result<()> {
        if values.len() != self.slots.len() {
            return Err(Error::InconsistentValues(format!(
                "expected {} coefficients, got {}",
                self.slots.len(),
                values.len()
            )));
        }
        for &i in &self.nonzero {
            if values[i].is_zero() {
                return Err(Error::InconsistentValues(format!(
                    "coefficient {} must be nonzero",
                    self.slots[i].0
                )));
            }
        }
        let mut seen: Vec<FieldElement> = Vec::new();
        for ((name, slot), v) in self.slots.iter().zip(values) {
            if let Slot::Position(_) = slot {
                if v.is_zero() || v.is_one() || seen.contains(v) {
                    return Err(Error::InconsistentValues(format!(
                        "pole position {name} = {v} collides with another pole"
                    )));
                }
                seen.push(v.clone());
            }
        }
        Ok(())
    }

    /// The right-hand side with the given free coefficients.
    pub fn build(&self, field: &Field, values: &[FieldElement]) -> Result<RationalFunction> {
        self.check_values(values)?;
        for v in values {
            field.check_same(v.field())?;
        }
        let mut poly = vec![field.zero(); self.stratum.pole_orders()[0] as usize + 1];
        if let Some(d) = self.monic {
            poly[d] = field.one();
        }
        let position = |i: usize| -> FieldElement {
            let at = self.slots.iter().position(|(_, s)| *s == Slot::Position(i));
            values[at.expect("position slot")].clone()
        };
        let mut f = RationalFunction::zero(field);
        for ((_, slot), v) in self.slots.iter().zip(values) {
            if v.is_zero() {
                continue;
            }
            match *slot {
                Slot::Infinity(k) => poly[k] = v.clone(),
                Slot::Zero(k) => f = f.checked_add(&RationalFunction::pole_term(v, &field.zero(), k))?,
                Slot::One(k) => f = f.checked_add(&RationalFunction::pole_term(v, &field.one(), k))?,
                Slot::Position(_) => {}
                Slot::Extra(i, k) => {
                    f = f.checked_add(&RationalFunction::pole_term(v, &position(i), k))?
                }
            }
        }
        f.checked_add(&RationalFunction::from_poly(Polynomial::new(field, poly)))
    }

    /// Reads the free coefficients off `f`, checking that `f` has exactly
    /// this shape.
    pub fn extract(&self, f: &RationalFunction) -> Result<Vec<FieldElement>> {
        let bad = |why: String| Error::Inconsistency(format!("{f} is not in standard form: {why}"));
        let field = f.field();
        let pp = principal_parts(f)?;
        if !pp.extension.is_identity() {
            return Err(Error::PolesNotRational);
        }
        let d: Vec<usize> = self.stratum.pole_orders().iter().map(|&x| x as usize).collect();
        let q = &pp.polynomial;
        if q.degree() != Some(d[0]) {
            return Err(bad(format!("degree {} instead of {}", q.deg(), d[0])));
        }
        if pp.parts.len() + 1 != d.len() {
            return Err(bad("unexpected number of poles".into()));
        }
        let find = |mu: &FieldElement| pp.parts.iter().find(|(m, _)| m == mu).map(|(_, c)| c);
        let zero_part = if d.len() > 1 {
            let c = find(&field.zero()).ok_or_else(|| bad("no pole at 0".into()))?;
            if c.degree() != Some(d[1]) {
                return Err(bad("wrong pole order at 0".into()));
            }
            Some(c)
        } else {
            None
        };
        let one_part = if d.len() > 2 {
            let c = find(&field.one()).ok_or_else(|| bad("no pole at 1".into()))?;
            if c.degree() != Some(d[2]) {
                return Err(bad("wrong pole order at 1".into()));
            }
            Some(c)
        } else {
            None
        };
        // remaining poles, by descending order then element order
        let mut extras: Vec<(FieldElement, &Polynomial)> = pp
            .parts
            .iter()
            .filter(|(m, _)| !m.is_zero() && !(d.len() > 2 && m.is_one()))
            .map(|(m, c)| (m.clone(), c))
            .collect();
        if extras.len() != d.len().saturating_sub(3) {
            return Err(bad("unexpected number of poles".into()));
        }
        extras.sort_by(|a, b| b.1.degree().cmp(&a.1.degree()).then_with(|| a.0.cmp(&b.0)));
        for (j, (_, c)) in extras.iter().enumerate() {
            if c.degree() != Some(d[j + 3]) {
                return Err(bad("wrong pole order at an extra pole".into()));
            }
        }
        // every coefficient must be either a slot or fixed
        let mut used_inf = vec![false; d[0] + 1];
        let mut used_zero = vec![false; d.get(1).map_or(0, |x| x + 1)];
        let mut used_one = vec![false; d.get(2).map_or(0, |x| x + 1)];
        let mut used_extra: Vec<Vec<bool>> = extras.iter().map(|(_, c)| vec![false; c.coeffs().len()]).collect();
        let mut out = Vec::with_capacity(self.slots.len());
        for (_, slot) in &self.slots {
            let v = match *slot {
                Slot::Infinity(k) => {
                    used_inf[k] = true;
                    q.coeff(k)
                }
                Slot::Zero(k) => {
                    used_zero[k] = true;
                    zero_part.expect("pole at 0").coeff(k)
                }
                Slot::One(k) => {
                    used_one[k] = true;
                    one_part.expect("pole at 1").coeff(k)
                }
                Slot::Position(i) => extras[i - 4].0.clone(),
                Slot::Extra(i, k) => {
                    used_extra[i - 4][k] = true;
                    extras[i - 4].1.coeff(k)
                }
            };
            out.push(v);
        }
        if let Some(m) = self.monic {
            if !q.coeff(m).is_one() {
                return Err(bad("top part is not monic".into()));
            }
            used_inf[m] = true;
        }
        let stray = |c: &Polynomial, used: &[bool]| {
            c.coeffs().iter().enumerate().any(|(k, v)| !v.is_zero() && !used.get(k).copied().unwrap_or(false))
        };
        if stray(q, &used_inf)
            || zero_part.is_some_and(|c| stray(c, &used_zero))
            || one_part.is_some_and(|c| stray(c, &used_one))
            || extras.iter().zip(&used_extra).any(|((_, c), u)| stray(c, u))
        {
            return Err(bad("a coefficient outside the shape is nonzero".into()));
        }
        self.check_values(&out).map_err(|e| bad(e.to_string()))?;
        Ok(out)
    }
}

/// A curve in standard form together with its named free coefficients.
#[derive(Clone)]
pub struct StandardFormCurve {
    stratum: StratumDescriptor,
    coefficients: Vec<(String, FieldElement)>,
    f: RationalFunction,
    extension: ExtensionMap,
}

impl StandardFormCurve {
    /// The standard curve of `stratum` with the given free coefficients, in
    /// the order of [`StandardShape::names`].
    pub fn from_values(
        stratum: &StratumDescriptor,
        field: &Field,
        values: &[FieldElement],
    ) -> Result<StandardFormCurve> {
        let shape = StandardShape::of(stratum);
        let f = shape.build(field, values)?;
        Ok(Self::assemble(&shape, f, values.to_vec(), ExtensionMap::identity(field)))
    }

    /// Same as [`from_values`](Self::from_values) for a table stratum.
    pub fn table(t: TableStratum, field: &Field, values: &[FieldElement]) -> Result<StandardFormCurve> {
        Self::from_values(&t.descriptor(), field, values)
    }

    pub(crate) fn assemble(
        shape: &StandardShape,
        f: RationalFunction,
        values: Vec<FieldElement>,
        extension: ExtensionMap,
    ) -> StandardFormCurve {
        StandardFormCurve {
            stratum: shape.stratum().clone(),
            coefficients: shape.names().into_iter().map(String::from).zip(values).collect(),
            f,
            extension,
        }
    }

    pub(crate) fn with_extension(mut self, extension: ExtensionMap) -> StandardFormCurve {
        self.extension = extension;
        self
    }

    pub fn stratum(&self) -> &StratumDescriptor {
        &self.stratum
    }

    pub fn coefficients(&self) -> &[(String, FieldElement)] {
        &self.coefficients
    }

    pub fn values(&self) -> Vec<FieldElement> {
        self.coefficients.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn coefficient(&self, name: &str) -> Option<&FieldElement> {
        self.coefficients.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn f(&self) -> &RationalFunction {
        &self.f
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    /// The embedding of the originating curve's field into [`field`](Self::field).
    pub fn extension(&self) -> &ExtensionMap {
        &self.extension
    }

    pub fn curve(&self) -> Result<ArtinSchreierCurve> {
        make_curve(self.stratum.p, &self.f)
    }

    pub fn embed(&self, e: &ExtensionMap) -> Result<StandardFormCurve> {
        Ok(StandardFormCurve {
            stratum: self.stratum.clone(),
            coefficients: self
                .coefficients
                .iter()
                .map(|(n, v)| Ok((n.clone(), e.embed(v)?)))
                .collect::<Result<_>>()?,
            f: self.f.embed(e)?,
            extension: self.extension.then(e)?,
        })
    }
}

impl PartialEq for StandardFormCurve {
    fn eq(&self, other: &Self) -> bool {
        self.stratum == other.stratum && self.f == other.f
    }
}

impl fmt::Display for StandardFormCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^{} - y = {}", self.stratum.p, self.f)
    }
}

impl fmt::Debug for StandardFormCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}]", self.field().descriptor())
    }
}

struct Coefficients<'a>(&'a [(String, FieldElement)]);

impl Serialize for Coefficients<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, &v.to_string())?;
        }
        m.end()
    }
}

impl Serialize for StandardFormCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StandardFormCurve", 4)?;
        st.serialize_field("shape", &self.stratum.table().map(|t| t.name()))?;
        st.serialize_field("field", &self.field().descriptor())?;
        st.serialize_field("coefficients", &Coefficients(&self.coefficients))?;
        st.serialize_field("f", &self.f.to_string())?;
        st.end()
    }
}
