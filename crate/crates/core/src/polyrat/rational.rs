use super::poly::format_poly_in;
use super::roots::{roots_in_field, splitting_degree, squarefree_factorization};
use super::Polynomial;
use crate::error::{Error, Result};
use crate::ff::{ExtensionMap, Field, FieldElement};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A reduced fraction num/den with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
        num.field().check_same(den.field())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.field()));
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let l = den.leading().expect("nonzero").clone();
        if l.is_one() {
            Ok(RationalFunction { num, den })
        } else {
            let li = l.inv()?;
            Ok(RationalFunction {
                num: num.scale(&li),
                den: den.scale(&li),
            })
        }
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        let den = Polynomial::one(p.field());
        RationalFunction { num: p, den }
    }

    pub fn zero(field: &Field) -> RationalFunction {
        Self::from_poly(Polynomial::zero(field))
    }

    pub fn one(field: &Field) -> RationalFunction {
        Self::from_poly(Polynomial::one(field))
    }

    pub fn constant(c: &FieldElement) -> RationalFunction {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn x(field: &Field) -> RationalFunction {
        Self::from_poly(Polynomial::x(field))
    }

    /// c / (x − μ)^j
    pub fn pole_term(c: &FieldElement, mu: &FieldElement, j: usize) -> RationalFunction {
        Self::new(Polynomial::constant(c), Polynomial::linear(mu).pow(j as u64))
            .expect("nonzero denominator")
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.num.is_constant()
    }

    /// The value of a constant function.
    pub fn constant_value(&self) -> Option<FieldElement> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Order of the pole at infinity (0 if there is none).
    pub fn order_at_infinity(&self) -> usize {
        let d = self.num.deg() - self.den.deg();
        if d > 0 && !self.is_zero() {
            d as usize
        } else {
            0
        }
    }

    pub fn embed(&self, e: &ExtensionMap) -> Result<RationalFunction> {
        // embedding preserves coprimality and monicity
        Ok(RationalFunction {
            num: self.num.embed(e)?,
            den: self.den.embed(e)?,
        })
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        if self.den == o.den {
            return Self::new(self.num.checked_add(&o.num)?, self.den.clone());
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(n, &self.den * &o.den)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.field().check_same(o.field())?;
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.field().check_same(o.field())?;
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        if s.is_zero() {
            return Self::zero(self.field());
        }
        RationalFunction {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one(self.field()).checked_div(self)
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(n),
            den: base.den.pow(n),
        })
    }

    /// f^p, computed coefficient-wise.
    pub fn frobenius(&self) -> Self {
        RationalFunction {
            num: self.num.frobenius(),
            den: self.den.frobenius(),
        }
    }

    /// The Artin-Schreier operator h ↦ h^p − h.
    pub fn wp(&self) -> Self {
        &self.frobenius() - self
    }

    /// f(g(x)).
    pub fn compose(&self, g: &RationalFunction) -> Result<RationalFunction> {
        self.field().check_same(g.field())?;
        let l = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        let a = &g.num;
        let b = &g.den;
        // homogenize: P(A/B)·B^l = Σ p_i A^i B^{l-i}
        let mut a_pows = vec![Polynomial::one(self.field())];
        let mut b_pows = vec![Polynomial::one(self.field())];
        for i in 1..=l {
            a_pows.push(&a_pows[i - 1] * a);
            b_pows.push(&b_pows[i - 1] * b);
        }
        let homog = |p: &Polynomial| {
            let mut acc = Polynomial::zero(p.field());
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&a_pows[i] * &b_pows[l - i]).scale(c);
                }
            }
            acc
        };
        let n = homog(&self.num);
        let d = homog(&self.den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(n, d)
    }

    /// f((αx+β)/(γx+δ)).
    pub fn compose_linear_fractional(
        &self,
        alpha: &FieldElement,
        beta: &FieldElement,
        gamma: &FieldElement,
        delta: &FieldElement,
    ) -> Result<RationalFunction> {
        let f = self.field();
        let g = Self::new(
            Polynomial::new(f, vec![beta.clone(), alpha.clone()]),
            Polynomial::new(f, vec![delta.clone(), gamma.clone()]),
        )?;
        self.compose(&g)
    }

    /// Laurent coefficients of f at a point, for exponents in `lo..=hi`
    /// (in the local parameter x − μ, or 1/x at infinity). Returns the
    /// valuation and the coefficient list starting at exponent `lo`.
    pub fn laurent(&self, at: &ProjectivePoint, lo: isize, hi: isize) -> Result<Vec<FieldElement>> {
        let field = self.field().clone();
        let (n, d) = match at {
            ProjectivePoint::Finite(mu) => (self.num.shift(mu), self.den.shift(mu)),
            ProjectivePoint::Infinity => {
                // f(1/X) = X^{deg d - deg n} rev(n)/rev(d)
                let dn = self.num.deg().max(0) as usize;
                let dd = self.den.deg() as usize;
                let l = dn.max(dd);
                let rev = |p: &Polynomial, deg: usize| {
                    let mut c: Vec<FieldElement> = p.coeffs().to_vec();
                    c.resize(deg + 1, field.zero());
                    c.reverse();
                    let mut v = vec![field.zero(); l - deg];
                    v.extend(c);
                    Polynomial::new(&field, v)
                };
                (rev(&self.num, dn), rev(&self.den, dd))
            }
        };
        // d = X^m e with e(0) != 0
        let m = d.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
        let e: Vec<FieldElement> = d.coeffs()[m..].to_vec();
        let e0_inv = e[0].inv()?;
        // series of n/e from exponent 0 up to hi + m
        let count = (hi + m as isize + 1).max(0) as usize;
        let mut s: Vec<FieldElement> = Vec::with_capacity(count);
        for i in 0..count {
            let mut acc = n.coeff(i);
            for j in 1..=i.min(e.len() - 1) {
                acc = &acc - &(&e[j] * &s[i - j]);
            }
            s.push(&acc * &e0_inv);
        }
        let out = (lo..=hi)
            .map(|k| {
                let idx = k + m as isize;
                if idx >= 0 && (idx as usize) < s.len() {
                    s[idx as usize].clone()
                } else {
                    field.zero()
                }
            })
            .collect();
        Ok(out)
    }

    /// Pole orders over an algebraic closure, descending, without
    /// constructing any extension field.
    pub fn pole_orders(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let inf = self.order_at_infinity();
        if inf > 0 {
            out.push(inf);
        }
        if !self.den.is_constant() {
            for (g, m) in squarefree_factorization(&self.den)? {
                for _ in 0..g.degree().unwrap() {
                    out.push(m);
                }
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = format_poly_in(&self.num, "x");
        if self.den.is_one() {
            return f.write_str(&n);
        }
        let d = format_poly_in(&self.den, "x");
        let wrap = |s: String, p: &Polynomial| {
            if p.term_count() > 1 || s.contains('+') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}

rat_binop!(Add, add, checked_add);
rat_binop!(Sub, sub, checked_sub);
rat_binop!(Mul, mul, checked_mul);
rat_binop!(Div, div, checked_div);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}

/// A point of the projective line.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Infinity,
    Finite(FieldElement),
}

impl ProjectivePoint {
    pub fn embed(&self, e: &ExtensionMap) -> Result<ProjectivePoint> {
        Ok(match self {
            ProjectivePoint::Infinity => ProjectivePoint::Infinity,
            ProjectivePoint::Finite(a) => ProjectivePoint::Finite(e.embed(a)?),
        })
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity)
    }

    pub fn finite(&self) -> Option<&FieldElement> {
        match self {
            ProjectivePoint::Finite(a) => Some(a),
            ProjectivePoint::Infinity => None,
        }
    }
}

/// Infinity first, then finite points in element order.
impl Ord for ProjectivePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ProjectivePoint::Infinity, ProjectivePoint::Infinity) => Ordering::Equal,
            (ProjectivePoint::Infinity, _) => Ordering::Less,
            (_, ProjectivePoint::Infinity) => Ordering::Greater,
            (ProjectivePoint::Finite(a), ProjectivePoint::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Infinity => f.write_str("inf"),
            ProjectivePoint::Finite(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P[{self}]")
    }
}

/// The poles of a rational function with their orders, over the field
/// reached by `extension` (the splitting field of the denominator).
#[derive(Clone, Debug)]
pub struct PoleProfile {
    pub entries: Vec<(ProjectivePoint, usize)>,
    pub extension: ExtensionMap,
}

impl PoleProfile {
    pub fn orders(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.1).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub(crate) fn sort_poles(entries: &mut [(ProjectivePoint, usize)]) {
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
}

/// Poles of `f` with orders, sorted by descending order, then infinity
/// first, then element order. Builds the splitting field of the
/// denominator when finite poles are not rational.
pub fn pole_profile(f: &RationalFunction) -> Result<PoleProfile> {
    let field = f.field();
    let extension = if f.den().is_constant() {
        ExtensionMap::identity(field)
    } else {
        ExtensionMap::extend(field, splitting_degree(f.den())?)
    };
    let mut entries = Vec::new();
    let inf = f.order_at_infinity();
    if inf > 0 {
        entries.push((ProjectivePoint::Infinity, inf));
    }
    if !f.den().is_constant() {
        let den = f.den().embed(&extension)?;
        for (r, m) in roots_in_field(&den)? {
            entries.push((ProjectivePoint::Finite(r), m));
        }
    }
    sort_poles(&mut entries);
    Ok(PoleProfile { entries, extension })
}

/// Partial-fraction data: f = poly + Σ_μ Σ_j c_j/(x − μ)^j over the field
/// reached by `extension`.
#[derive(Clone, Debug)]
pub struct PrincipalParts {
    pub polynomial: Polynomial,
    /// (μ, c) with c_j the coefficient of (x − μ)^{-j}; c_0 = 0.
    pub parts: Vec<(FieldElement, Polynomial)>,
    pub extension: ExtensionMap,
}

impl PrincipalParts {
    pub fn recombine(&self) -> Result<RationalFunction> {
        let mut acc = RationalFunction::from_poly(self.polynomial.clone());
        for (mu, c) in &self.parts {
            for (j, cj) in c.coeffs().iter().enumerate().skip(1) {
                if !cj.is_zero() {
                    acc = acc.checked_add(&RationalFunction::pole_term(cj, mu, j))?;
                }
            }
        }
        Ok(acc)
    }
}

/// Exact partial-fraction decomposition over the splitting field of the
/// denominator.
pub fn principal_parts(f: &RationalFunction) -> Result<PrincipalParts> {
    let profile = pole_profile(f)?;
    let g = f.embed(&profile.extension)?;
    let (q, _) = g.num().divrem(g.den())?;
    let mut parts = Vec::new();
    for (pt, m) in &profile.entries {
        if let ProjectivePoint::Finite(mu) = pt {
            let m = *m as isize;
            let coeffs = g.laurent(pt, -m, -1)?;
            let mut c = vec![g.field().zero()];
            // coeffs[i] is the coefficient of (x-μ)^{-m+i}
            c.extend(coeffs.into_iter().rev());
            parts.push((mu.clone(), Polynomial::new(g.field(), c)));
        }
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(PrincipalParts {
        polynomial: q,
        parts,
        extension: profile.extension,
    })
}
